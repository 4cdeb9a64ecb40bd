import json

import pytest

from cubediag import (
    BoundError,
    Graph,
    Model,
    ResourceError,
    build_hypercube,
    distinguishable,
    h_edge_tolerable_diagnosability,
    theorem_witness,
    verify_theorem,
)
from cubediag.diagnosability import _fault_edge_candidates


def test_witness_frozen_small():
    fe, f1, f2 = theorem_witness(3, 1)
    assert fe == frozenset({(0, 1)})
    assert f1 == frozenset({2, 4})
    assert f2 == frozenset({0, 2, 4})

    fe, f1, f2 = theorem_witness(4, 2)
    assert fe == frozenset({(0, 1), (0, 2)})
    assert f1 == frozenset({4, 8})
    assert f2 == frozenset({0, 4, 8})


def test_witness_sizes_sweep():
    for n in range(3, 9):
        for h in range(1, n):
            fe, f1, f2 = theorem_witness(n, h)
            assert len(fe) == h
            assert len(f1) == n - h
            assert f2 == f1 | {0}
            assert max(len(f1), len(f2)) == n - h + 1


def test_witness_bounds():
    with pytest.raises(BoundError):
        theorem_witness(2, 1)
    with pytest.raises(BoundError):
        theorem_witness(3, 0)
    with pytest.raises(BoundError):
        theorem_witness(3, 3)  # degenerate: all links at the vertex severed
    with pytest.raises(BoundError):
        theorem_witness(4, 5)


def test_h_edge_frozen_values(q3):
    rep = h_edge_tolerable_diagnosability(q3, 1, Model.PMC)
    assert rep.value == 2
    assert rep.mode == "exact"
    assert rep.value_certified

    rep = h_edge_tolerable_diagnosability(q3, 0, Model.PMC)
    assert rep.value == 3

    rep = h_edge_tolerable_diagnosability(build_hypercube(4), 3, Model.MM_STAR)
    assert rep.value == 1


def test_h_edge_upper_witness_validates(q3):
    rep = h_edge_tolerable_diagnosability(q3, 1, Model.MM_STAR)
    fe, f1, f2 = rep.upper_witness
    assert len(fe) <= 1
    assert max(len(f1), len(f2)) <= rep.value + 1
    verdict = distinguishable(q3, fe, f1, f2, Model.MM_STAR, certify=False)
    assert not verdict.distinguishable


def test_h_edge_lower_log_levels(q3):
    rep = h_edge_tolerable_diagnosability(q3, 1, Model.PMC)
    passed = [entry["t"] for entry in rep.lower_log if entry["pass"]]
    assert passed == [1, 2]
    failed = [entry["t"] for entry in rep.lower_log if entry["pass"] is False]
    assert failed == [3]


def test_h_edge_generic_graph():
    cycle = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = h_edge_tolerable_diagnosability(cycle, 0, Model.PMC)
    assert rep.value == 1
    assert rep.mode == "exact"


def test_h_edge_bounds(q3):
    with pytest.raises(BoundError):
        h_edge_tolerable_diagnosability(q3, -1, Model.PMC)
    with pytest.raises(BoundError):
        h_edge_tolerable_diagnosability(q3, 13, Model.PMC)


def test_h_edge_sampled_fallback(q4):
    # a starved budget cannot cover level 2 exactly; the report must fall back
    # to sampling, keep the certified upper witness, and still land on 3
    rep = h_edge_tolerable_diagnosability(q4, 1, Model.PMC, budget=3000)
    assert rep.mode == "sampled"
    assert rep.value == 3
    assert not rep.value_certified
    assert rep.upper_witness is not None
    fe, f1, f2 = rep.upper_witness
    assert max(len(f1), len(f2)) <= rep.value + 1
    verdict = distinguishable(q4, fe, f1, f2, Model.PMC, certify=False)
    assert not verdict.distinguishable


def test_h_edge_workers_match_serial(q3):
    serial = h_edge_tolerable_diagnosability(q3, 1, Model.PMC)
    parallel = h_edge_tolerable_diagnosability(q3, 1, Model.PMC, workers=2)
    assert parallel.value == serial.value
    assert parallel.mode == serial.mode
    assert parallel.upper_witness == serial.upper_witness


def test_candidate_order_prefers_concentrated_cuts(q4):
    candidates = _fault_edge_candidates(q4, 2)
    # the double cut at one vertex is scanned before the spread-out pairs
    first = candidates[0]
    assert len(first) == 2
    shared = set(first[0]) & set(first[1])
    assert len(shared) == 1


def test_report_record_is_json_ready(q3):
    rep = h_edge_tolerable_diagnosability(q3, 1, Model.PMC)
    rec = rep.to_record()
    text = json.dumps(rec, sort_keys=True)
    assert '"value": 2' in text
    assert rec["upper_witness"]["fault_edges"] == [[0, 1]]


def test_verify_theorem_frozen_q3():
    for model in Model:
        rep = verify_theorem(3, 1, model)
        assert rep.confirmed
        assert rep.value == 2
        assert rep.expected == 2
        assert rep.mode == "exact"
        assert rep.upper_witness is not None


def test_verify_theorem_q4_mm():
    rep = verify_theorem(4, 2, Model.MM_STAR)
    assert rep.confirmed and rep.value == 2 and rep.mode == "exact"


def test_verify_theorem_sampled_on_small_budget():
    rep = verify_theorem(4, 1, Model.PMC, budget=1000, samples=300, seed=11)
    assert rep.mode == "sampled"
    assert rep.confirmed
    assert rep.value == 3
    assert rep.lower_log[0]["coverage"] == "sampled"


def test_verify_theorem_bounds():
    with pytest.raises(BoundError):
        verify_theorem(2, 1, Model.PMC)
    with pytest.raises(BoundError):
        verify_theorem(4, 0, Model.PMC)
    with pytest.raises(BoundError):
        verify_theorem(4, 4, Model.PMC)
