import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubediag import (
    BoundError,
    Model,
    ResourceError,
    build_hypercube,
    common_syndrome,
    consistent,
    distinguishable,
    distinguishable_mm_star,
    distinguishable_pmc,
    oracle_distinguishable,
    remove_edges,
    t_diagnosable_check,
    theorem_witness,
    verify_certificate,
)

VSETS_Q3 = [frozenset(c) for k in range(3) for c in combinations(range(8), k)]


def test_mm_single_faults_distinguishable_frozen(q3):
    verdict = distinguishable(q3, frozenset(), {0}, {3}, Model.MM_STAR)
    assert verdict.distinguishable
    assert verdict.condition == 1
    assert verify_certificate(q3, frozenset(), {0}, {3}, verdict)


def test_mm_superset_pair_needs_outside_witness(q4):
    # singleton symmetric difference: the two-faulty-members conditions can
    # never fire, so the witness must route through a fault-free pair
    f1, f2 = frozenset({0, 3}), frozenset({0, 3, 5})
    verdict = distinguishable(q4, frozenset(), f1, f2, Model.MM_STAR)
    assert verdict.distinguishable
    assert verdict.condition == 1
    assert verdict.triple == (5, 9, 1)
    assert verify_certificate(q4, frozenset(), f1, f2, verdict)


def test_pmc_edge_certificate(q3):
    verdict = distinguishable(q3, frozenset(), {0}, {3}, Model.PMC)
    assert verdict.distinguishable
    x, y = verdict.edge
    assert y in {0, 3}
    assert x not in {0, 3}
    assert q3.has_edge(x, y)
    assert verify_certificate(q3, frozenset(), {0}, {3}, verdict)


def test_witness_pair_indistinguishable_both_models(q3):
    fe, f1, f2 = theorem_witness(3, 1)
    for model in Model:
        verdict = distinguishable(q3, fe, f1, f2, model)
        assert not verdict.distinguishable
        assert verdict.syndrome is not None
        assert verify_certificate(q3, fe, f1, f2, verdict)


def test_common_syndrome_is_consistent_with_both(q3):
    fe, f1, f2 = theorem_witness(3, 1)
    for model in Model:
        syn = common_syndrome(q3, fe, f1, f2, model)
        assert consistent(q3, fe, f1, syn)
        assert consistent(q3, fe, f2, syn)


def test_identical_sets_rejected(q3):
    from cubediag import DomainError

    with pytest.raises(DomainError):
        distinguishable(q3, frozenset(), {1}, {1}, Model.PMC)


def test_verdict_record_shape(q3):
    rec = distinguishable(q3, frozenset(), {0}, {3}, Model.PMC).to_record()
    assert rec["model"] == "pmc"
    assert rec["distinguishable"] is True
    assert rec["certificate"]["kind"] == "edge"
    fe, f1, f2 = theorem_witness(3, 1)
    rec = distinguishable(q3, fe, f1, f2, Model.MM_STAR).to_record()
    assert rec["certificate"]["kind"] == "common_syndrome"
    assert set(rec["certificate"]["bits"]) <= {"0", "1"}


def test_oracle_equivalence_no_edge_faults(q3):
    # |F_e| = 0 slice of the exhaustive sweep; the full one is an acceptance run
    for f1, f2 in combinations(VSETS_Q3, 2):
        for model in Model:
            got = distinguishable(q3, frozenset(), f1, f2, model, certify=False)
            want = oracle_distinguishable(q3, frozenset(), f1, f2, model)
            assert got.distinguishable == want, (sorted(f1), sorted(f2), model)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_oracle_equivalence_random_edge_faults(q3, data):
    rng = random.Random(data.draw(st.integers(min_value=0, max_value=10**6)))
    fe = frozenset(rng.sample(sorted(q3.edges()), rng.randint(1, 2)))
    f1 = frozenset(rng.sample(range(8), rng.randint(0, 3)))
    f2 = frozenset(rng.sample(range(8), rng.randint(0, 3)))
    if f1 == f2:
        return
    for model in Model:
        got = distinguishable(q3, fe, f1, f2, model, certify=False)
        assert got.distinguishable == oracle_distinguishable(q3, fe, f1, f2, model)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_mm_distinguishable_implies_pmc(data):
    n = data.draw(st.integers(min_value=3, max_value=4))
    g = build_hypercube(n)
    rng = random.Random(data.draw(st.integers(min_value=0, max_value=10**6)))
    fe = frozenset(rng.sample(sorted(g.edges()), rng.randint(0, 2)))
    f1 = frozenset(rng.sample(range(g.vertex_count), rng.randint(0, n)))
    f2 = frozenset(rng.sample(range(g.vertex_count), rng.randint(0, n)))
    if f1 == f2:
        return
    mm = distinguishable_mm_star(g, fe, f1, f2, certify=False)
    pmc = distinguishable_pmc(g, fe, f1, f2, certify=False)
    if mm.distinguishable:
        assert pmc.distinguishable


def test_certificates_revalidate_on_sweep(q3):
    rng = random.Random(5)
    for _ in range(40):
        fe = frozenset(rng.sample(sorted(q3.edges()), rng.randint(0, 2)))
        f1 = frozenset(rng.sample(range(8), rng.randint(0, 2)))
        f2 = frozenset(rng.sample(range(8), rng.randint(0, 2)))
        if f1 == f2:
            continue
        for model in Model:
            verdict = distinguishable(q3, fe, f1, f2, model)
            assert verify_certificate(q3, fe, f1, f2, verdict)


def test_t_diagnosable_frozen(q3):
    ok, pair = t_diagnosable_check(q3, frozenset(), 3, Model.PMC)
    assert ok and pair is None
    ok, pair = t_diagnosable_check(q3, frozenset(), 4, Model.PMC)
    assert not ok
    assert pair == (frozenset({1, 2, 4}), frozenset({0, 1, 2, 4}))
    ok, _ = t_diagnosable_check(q3, {(0, 1)}, 2, Model.MM_STAR)
    assert ok


def test_t_diagnosable_counterexample_validates(q3):
    for model in Model:
        ok, pair = t_diagnosable_check(q3, {(0, 1)}, 3, model)
        assert not ok
        f1, f2 = pair
        assert max(len(f1), len(f2)) <= 3
        verdict = distinguishable(q3, {(0, 1)}, f1, f2, model)
        assert not verdict.distinguishable
        assert verify_certificate(q3, {(0, 1)}, f1, f2, verdict)


def test_t_zero_and_negative(q3):
    ok, pair = t_diagnosable_check(q3, frozenset(), 0, Model.PMC)
    assert ok and pair is None
    with pytest.raises(BoundError):
        t_diagnosable_check(q3, frozenset(), -1, Model.PMC)


def test_t_diagnosable_budget(q4):
    with pytest.raises(ResourceError) as err:
        t_diagnosable_check(q4, frozenset(), 3, Model.MM_STAR, budget=50)
    assert err.value.log["limit"] == 50
    assert err.value.log["spent"] > 50


def test_mm_vs_pmc_threshold_differs(q4):
    # with one link cut, the PMC level at t=3 still holds while MM* gives out
    fe = {(0, 1)}
    ok_pmc, _ = t_diagnosable_check(q4, fe, 3, Model.PMC)
    ok_mm, pair = t_diagnosable_check(q4, fe, 3, Model.MM_STAR)
    assert ok_pmc
    assert ok_mm  # both hold here: t_1^e(Q_4) = 3 under both models
    ok, pair = t_diagnosable_check(q4, fe, 4, Model.PMC)
    assert not ok


def test_q3_comparison_even_class_obstruction(q3):
    # one bipartition class covers every comparator's whole view, so these
    # two triples share a syndrome; the cube is only 2-diagnosable here
    f1, f2 = frozenset({0, 3, 5}), frozenset({0, 3, 6})
    verdict = distinguishable(q3, frozenset(), f1, f2, Model.MM_STAR)
    assert not verdict.distinguishable
    assert not oracle_distinguishable(q3, frozenset(), f1, f2, Model.MM_STAR)
    assert verify_certificate(q3, frozenset(), f1, f2, verdict)
    # the testing model sees the difference just fine
    assert distinguishable(q3, frozenset(), f1, f2, Model.PMC, certify=False).distinguishable
    ok, pair = t_diagnosable_check(q3, frozenset(), 3, Model.MM_STAR)
    assert not ok
    assert max(len(pair[0]), len(pair[1])) == 3


def test_distinguishable_generic_graph():
    from cubediag import Graph

    cycle = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    verdict = distinguishable(cycle, frozenset(), {0}, {2}, Model.PMC)
    assert verdict.distinguishable
    mm = distinguishable(cycle, frozenset(), {0}, {2}, Model.MM_STAR)
    assert mm.distinguishable == oracle_distinguishable(
        cycle, frozenset(), {0}, {2}, Model.MM_STAR
    )
