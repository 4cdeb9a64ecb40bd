import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubediag import (
    AdversaryStrategy,
    BoundError,
    DomainError,
    FaultScenario,
    Model,
    ResourceError,
    Syndrome,
    consistent,
    diagnose,
    enumerate_tests,
    generate_syndrome,
)


def test_all_zero_syndrome_unique_empty(q3):
    for model in Model:
        tests = enumerate_tests(q3, model)
        syn = Syndrome(model, bytes(len(tests)))
        result = diagnose(q3, frozenset(), syn, 3, model)
        assert result.outcome == "unique"
        assert result.candidates == (frozenset(),)


def test_injected_fault_recovered(q3):
    sc = FaultScenario({5}, {(0, 1)})
    syn = generate_syndrome(q3, sc, Model.MM_STAR, AdversaryStrategy.ones())
    result = diagnose(q3, {(0, 1)}, syn, 2, Model.MM_STAR)
    assert result.outcome == "unique"
    assert result.candidates[0] == frozenset({5})


def test_above_diagnosability_goes_ambiguous(q3):
    # at t = 4 the neighbors-of-0 pattern cannot be told apart from itself plus 0
    fv = frozenset({1, 2, 4})
    syn = generate_syndrome(q3, FaultScenario(fv, ()), Model.PMC, AdversaryStrategy.zeros())
    result = diagnose(q3, frozenset(), syn, 4, Model.PMC)
    assert result.outcome == "ambiguous"
    assert fv in result.candidates
    assert fv | {0} in result.candidates
    # candidates come out ordered by size then lexicographically
    sizes = [len(c) for c in result.candidates]
    assert sizes == sorted(sizes)


def test_contradictory_syndrome_infeasible(q3):
    tests = enumerate_tests(q3, Model.PMC)
    syn = Syndrome(Model.PMC, bytes([1]) * len(tests))
    result = diagnose(q3, frozenset(), syn, 0, Model.PMC)
    assert result.outcome == "infeasible"
    assert result.candidates == ()
    assert result.examined == 1


def test_diagnose_validation(q3):
    tests = enumerate_tests(q3, Model.PMC)
    syn = Syndrome(Model.PMC, bytes(len(tests)))
    with pytest.raises(BoundError):
        diagnose(q3, frozenset(), syn, -1, Model.PMC)
    with pytest.raises(DomainError):
        diagnose(q3, frozenset(), syn, 2, Model.MM_STAR)
    short = Syndrome(Model.PMC, bytes(3))
    with pytest.raises(DomainError):
        diagnose(q3, frozenset(), short, 2, Model.PMC)


def test_diagnose_budget(q4):
    tests = enumerate_tests(q4, Model.PMC)
    syn = Syndrome(Model.PMC, bytes(len(tests)))
    with pytest.raises(ResourceError):
        diagnose(q4, frozenset(), syn, 4, Model.PMC, budget=10)


def test_model_defaults_to_syndrome_tag(q3):
    sc = FaultScenario({2}, ())
    syn = generate_syndrome(q3, sc, Model.MM_STAR, AdversaryStrategy.zeros())
    result = diagnose(q3, frozenset(), syn, 1)
    assert result.outcome == "unique"
    assert result.candidates[0] == frozenset({2})


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_candidates_match_oracle_consistency(q3, data):
    rng = random.Random(data.draw(st.integers(min_value=0, max_value=10**6)))
    fe = frozenset(rng.sample(sorted(q3.edges()), rng.randint(0, 2)))
    fv = frozenset(rng.sample(range(8), rng.randint(0, 2)))
    model = data.draw(st.sampled_from(list(Model)))
    strat = AdversaryStrategy.random_bits(rng.randint(0, 99))
    syn = generate_syndrome(q3, FaultScenario(fv, fe), model, strat)
    result = diagnose(q3, fe, syn, 2, model)
    brute = [
        frozenset(c)
        for k in range(3)
        for c in combinations(range(8), k)
        if consistent(q3, fe, frozenset(c), syn)
    ]
    assert list(result.candidates) == brute
    assert fv in result.candidates


def test_round_trip_at_diagnosability_boundary(q4):
    # |F_v| <= t with the graph t-diagnosable after the cut: always unique
    rng = random.Random(40)
    edges = sorted(q4.edges())
    for trial in range(24):
        h = rng.randint(0, 3)
        t = 4 - h
        fe = frozenset(rng.sample(edges, h))
        fv = frozenset(rng.sample(range(16), rng.randint(0, t)))
        model = Model.PMC if trial % 2 else Model.MM_STAR
        strat = AdversaryStrategy.mimic(frozenset(rng.sample(range(16), 2)))
        syn = generate_syndrome(q4, FaultScenario(fv, fe), model, strat)
        result = diagnose(q4, fe, syn, t, model)
        assert result.outcome == "unique"
        assert result.candidates[0] == fv
