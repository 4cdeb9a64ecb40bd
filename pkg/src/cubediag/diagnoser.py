"""Identify the faulty vertex set from an observed syndrome."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BoundError, BudgetTracker, DomainError
from .models import Model, Syndrome, enumerate_tests
from .topology import Graph, remove_edges

DEFAULT_DIAGNOSE_BUDGET = 2_000_000

_BATCH = 0x10000


@dataclass(frozen=True)
class DiagnosisResult:
    outcome: str  # "unique" | "ambiguous" | "infeasible"
    candidates: tuple[frozenset, ...]
    examined: int


def diagnose(
    g: Graph,
    fault_edges,
    syndrome: Syndrome,
    t: int,
    model: Model | str | None = None,
    budget: int | None = DEFAULT_DIAGNOSE_BUDGET,
) -> DiagnosisResult:
    """All fault sets of size <= t consistent with the syndrome, in (size, lex) order.

    Works on the graph with the given edges removed; the syndrome must cover
    exactly the tests of that graph. Consistency of a candidate F is checked
    against per-vertex test-incidence masks: a test forces outcome 1 when a
    testee (or compared vertex) lies in F and is unreliable when its deciding
    unit does, so F is consistent iff
    ((forced(F) ^ observed) & ~unreliable(F)) == 0.

    Outcome is "unique" for exactly one candidate, "ambiguous" for several
    (the observed syndrome itself certifies each pair indistinguishable), and
    "infeasible" for none.
    """
    if t < 0:
        raise BoundError(f"t must be nonnegative, got {t}")
    if model is None:
        model = syndrome.model
    model = Model(model)
    if model is not syndrome.model:
        raise DomainError(f"syndrome was generated under {syndrome.model}, not {model}")
    g_eff = remove_edges(g, fault_edges)
    tests = enumerate_tests(g_eff, model)
    if len(syndrome) != len(tests):
        raise DomainError(f"syndrome has {len(syndrome)} results for {len(tests)} tests")

    observed = 0
    for i, b in enumerate(syndrome.bits):
        if b:
            observed |= 1 << i
    outcome_mask = [0] * g.vertex_count
    unit_mask = [0] * g.vertex_count
    if model is Model.PMC:
        for i, (tester, testee) in enumerate(tests):
            unit_mask[tester] |= 1 << i
            outcome_mask[testee] |= 1 << i
    else:
        for i, (comparator, left, right) in enumerate(tests):
            unit_mask[comparator] |= 1 << i
            outcome_mask[left] |= 1 << i
            outcome_mask[right] |= 1 << i

    tracker = BudgetTracker(budget)
    pending = 0
    examined = 0
    found: list[frozenset] = []
    order = range(g.vertex_count)
    top = min(t, g.vertex_count)
    for k in range(top + 1):
        for combo in combinations(order, k):
            pending += 1
            if pending >= _BATCH:
                tracker.spend(pending, "diagnosis candidate scan")
                pending = 0
            examined += 1
            forced = 0
            unreliable = 0
            for v in combo:
                forced |= outcome_mask[v]
                unreliable |= unit_mask[v]
            if (forced ^ observed) & ~unreliable == 0:
                found.append(frozenset(combo))
    tracker.spend(pending, "diagnosis candidate scan")

    if not found:
        outcome = "infeasible"
    elif len(found) == 1:
        outcome = "unique"
    else:
        outcome = "ambiguous"
    return DiagnosisResult(outcome=outcome, candidates=tuple(found), examined=examined)
