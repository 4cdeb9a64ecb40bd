"""Deciding whether two fault sets can produce a common syndrome.

Two vertex sets F1 != F2 are distinguishable under a model when no syndrome is
consistent with both. Each decider returns a machine-checkable certificate:

* PMC, distinguishable: an edge (x, y) of the effective graph with x outside
  F1 and F2 and y in their symmetric difference. A fault-free x then reports
  a result over (x, y) that the two sets force differently.
* MM*, distinguishable: a triple (u, v, w) with fault-free comparator w
  adjacent to u and v, satisfying one of three conditions: (1) u in the
  symmetric difference and v, w outside both sets; (2) u, v both in F1 - F2
  and w outside both; (3) u, v both in F2 - F1 and w outside both.
* indistinguishable (either model): a constructed syndrome consistent with
  both sets, checkable with :func:`cubediag.models.consistent`.

``oracle_distinguishable`` is the independent route: it scans every test whose
deciding unit lies outside both sets and reports whether any forced result
differs. A common syndrome exists exactly when none differs, because tests
with a faulty deciding unit are unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import BoundError, DomainError, BudgetTracker
from .models import (
    Model,
    Syndrome,
    deciding_unit,
    enumerate_tests,
    forced_result,
)
from .topology import Graph, VertexSet, remove_edges

DEFAULT_SEARCH_BUDGET = 20_000_000


@dataclass(frozen=True)
class Verdict:
    """Outcome of a distinguishability query plus its certificate."""

    model: Model
    distinguishable: bool
    edge: tuple[int, int] | None = None  # PMC witness (fault-free side, differing side)
    condition: int | None = None  # MM* condition index 1..3
    triple: tuple[int, int, int] | None = None  # MM* witness (u, v, w), w the comparator
    syndrome: Syndrome | None = None  # common syndrome when indistinguishable

    def to_record(self) -> dict:
        cert: dict
        if not self.distinguishable:
            cert = {"kind": "common_syndrome"}
            if self.syndrome is not None:
                cert["bits"] = self.syndrome.to_bitstring()
        elif self.model is Model.PMC:
            cert = {"kind": "edge", "edge": list(self.edge)}
        else:
            cert = {"kind": "condition", "condition": self.condition, "u": self.triple[0],
                    "v": self.triple[1], "w": self.triple[2]}
        return {"model": self.model.value, "distinguishable": self.distinguishable,
                "certificate": cert}


def _validated_pair(g: Graph, f1, f2) -> tuple[VertexSet, VertexSet]:
    s1 = frozenset(f1)
    s2 = frozenset(f2)
    for v in s1 | s2:
        g._check_vertex(v)
    if s1 == s2:
        raise DomainError("fault sets must differ")
    return s1, s2


def common_syndrome(g: Graph, fault_edges, f1, f2, model: Model) -> Syndrome:
    """A syndrome consistent with both sets; only exists when indistinguishable.

    Every test whose deciding unit is fault-free under some set gets that
    set's forced value; doubly unreliable tests default to 0.
    """
    model = Model(model)
    g_eff = remove_edges(g, fault_edges)
    s1, s2 = frozenset(f1), frozenset(f2)
    bits = bytearray()
    for test in enumerate_tests(g_eff, model):
        unit = deciding_unit(test)
        if unit not in s1:
            bits.append(forced_result(test, s1, model))
        elif unit not in s2:
            bits.append(forced_result(test, s2, model))
        else:
            bits.append(0)
    return Syndrome(model, bytes(bits))


def distinguishable_pmc(g: Graph, fault_edges, f1, f2, certify: bool = True) -> Verdict:
    """PMC decider: distinguishable iff an edge joins the untouched outside
    to the symmetric difference in the graph without the faulty edges."""
    s1, s2 = _validated_pair(g, f1, f2)
    g_eff = remove_edges(g, fault_edges)
    union = s1 | s2
    for y in sorted(s1 ^ s2):
        for x in sorted(g_eff.neighbors(y)):
            if x not in union:
                return Verdict(Model.PMC, True, edge=(x, y))
    syn = common_syndrome(g, fault_edges, s1, s2, Model.PMC) if certify else None
    return Verdict(Model.PMC, False, syndrome=syn)


def distinguishable_mm_star(g: Graph, fault_edges, f1, f2, certify: bool = True) -> Verdict:
    """MM* decider: checks the three witness conditions in order, smallest
    vertices first, and returns the first satisfied one."""
    s1, s2 = _validated_pair(g, f1, f2)
    g_eff = remove_edges(g, fault_edges)
    union = s1 | s2

    for u in sorted(s1 ^ s2):  # condition 1
        for w in sorted(g_eff.neighbors(u)):
            if w in union:
                continue
            for v in sorted(g_eff.neighbors(w)):
                if v not in union and v != u:
                    return Verdict(Model.MM_STAR, True, condition=1, triple=(u, v, w))
    for idx, side in ((2, s1 - s2), (3, s2 - s1)):  # conditions 2 and 3
        for u, v in combinations(sorted(side), 2):
            for w in sorted(g_eff.neighbors(u) & g_eff.neighbors(v)):
                if w not in union:
                    return Verdict(Model.MM_STAR, True, condition=idx, triple=(u, v, w))
    syn = common_syndrome(g, fault_edges, s1, s2, Model.MM_STAR) if certify else None
    return Verdict(Model.MM_STAR, False, syndrome=syn)


def distinguishable(g: Graph, fault_edges, f1, f2, model: Model, certify: bool = True) -> Verdict:
    if Model(model) is Model.PMC:
        return distinguishable_pmc(g, fault_edges, f1, f2, certify=certify)
    return distinguishable_mm_star(g, fault_edges, f1, f2, certify=certify)


def oracle_distinguishable(g: Graph, fault_edges, f1, f2, model: Model) -> bool:
    """Forced-test oracle, independent of the structural deciders.

    Scans every test whose deciding unit lies outside both sets and reports
    whether the two sets force different results anywhere.
    """
    model = Model(model)
    s1, s2 = _validated_pair(g, f1, f2)
    g_eff = remove_edges(g, fault_edges)
    union = s1 | s2
    for test in enumerate_tests(g_eff, model):
        if deciding_unit(test) in union:
            continue
        if forced_result(test, s1, model) != forced_result(test, s2, model):
            return True
    return False


def verify_certificate(g: Graph, fault_edges, f1, f2, verdict: Verdict) -> bool:
    """Re-validate a verdict's certificate by direct condition evaluation."""
    from .models import consistent  # local import to keep module load light

    s1, s2 = frozenset(f1), frozenset(f2)
    union = s1 | s2
    g_eff = remove_edges(g, fault_edges)
    if not verdict.distinguishable:
        if verdict.syndrome is None:
            return False
        return consistent(g, fault_edges, s1, verdict.syndrome) and consistent(
            g, fault_edges, s2, verdict.syndrome
        )
    if verdict.model is Model.PMC:
        x, y = verdict.edge
        return x not in union and y in (s1 ^ s2) and g_eff.has_edge(x, y)
    u, v, w = verdict.triple
    if w in union or not (g_eff.has_edge(u, w) and g_eff.has_edge(v, w)) or u == v:
        return False
    if verdict.condition == 1:
        return u in (s1 ^ s2) and v not in union
    if verdict.condition == 2:
        return u in s1 - s2 and v in s1 - s2
    if verdict.condition == 3:
        return u in s2 - s1 and v in s2 - s1
    return False


# --- t-diagnosability ------------------------------------------------------


def _pmc_failing_subset(g_eff: Graph, t: int, tracker: BudgetTracker):
    """First nonempty S (size then lex order) with ceil(|S|/2) + |N(S)| <= t.

    Such an S is the symmetric difference of a PMC-indistinguishable pair
    whose members both fit in t, and conversely; the pair splits S in half
    and adds N(S) to both sides.
    """
    size = g_eff.vertex_count
    masks = g_eff.adjacency_masks()
    for k in range(1, min(2 * t, size) + 1):
        visited = 0
        for subset in combinations(range(size), k):
            visited += 1
            if not visited & 0xFFFF:
                tracker.spend(0x10000, "pmc subset scan")
                visited = 0
            nb = 0
            smask = 0
            for v in subset:
                nb |= masks[v]
                smask |= 1 << v
            if (k + 1) // 2 + (nb & ~smask).bit_count() <= t:
                tracker.spend(visited, "pmc subset scan")
                return subset
        tracker.spend(visited, "pmc subset scan")
    return None


def _pair_from_subset(g_eff: Graph, subset) -> tuple[VertexSet, VertexSet]:
    half = (len(subset) + 1) // 2
    base = _open_neighborhood(g_eff, subset)
    f1 = frozenset(base | set(subset[half:]))
    f2 = frozenset(base | set(subset[:half]))
    return f1, f2


def _open_neighborhood(g_eff: Graph, subset) -> set[int]:
    masks = g_eff.adjacency_masks()
    nb = 0
    smask = 0
    for v in subset:
        nb |= masks[v]
        smask |= 1 << v
    out = nb & ~smask
    return {i for i in range(g_eff.vertex_count) if out >> i & 1}


def _mm_failing_pair(g_eff: Graph, t: int, tracker: BudgetTracker):
    """First MM*-indistinguishable pair with both sides of size <= t.

    Pairs are scanned by total size, then by size of the first side, then
    lexicographically; within equal sizes only ordered pairs F1 < F2 are
    visited since the relation is symmetric.
    """
    size = g_eff.vertex_count
    masks = g_eff.adjacency_masks()
    full = (1 << size) - 1
    subsets: list[list[tuple[tuple[int, ...], int]]] = []
    for k in range(min(t, size) + 1):
        level = []
        for tup in combinations(range(size), k):
            m = 0
            for v in tup:
                m |= 1 << v
            level.append((tup, m))
        subsets.append(level)
    top = len(subsets) - 1

    def check(m1: int, m2: int) -> bool:
        """True when the pair is distinguishable (some condition fires)."""
        union = m1 | m2
        diff = m1 ^ m2
        outside = full & ~union
        nd = 0
        dd = diff
        while dd:
            low = dd & -dd
            nd |= masks[low.bit_length() - 1]
            dd ^= low
        cand = nd & outside
        a_side = m1 & ~m2
        b_side = m2 & ~m1
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            nbw = masks[w]
            if nbw & outside:
                return True
            if (nbw & a_side).bit_count() >= 2:
                return True
            if (nbw & b_side).bit_count() >= 2:
                return True
        return False

    for total in range(1, 2 * top + 1):
        for a in range(max(0, total - top), total // 2 + 1):
            b = total - a
            if b > top:
                continue
            visited = 0
            if a == b:
                level = subsets[a]
                for i, (t1, m1) in enumerate(level):
                    for t2, m2 in level[i + 1 :]:
                        visited += 1
                        if not visited & 0xFFFF:
                            tracker.spend(0x10000, "mm pair scan")
                            visited = 0
                        if not check(m1, m2):
                            tracker.spend(visited, "mm pair scan")
                            return frozenset(t1), frozenset(t2)
            else:
                for t1, m1 in subsets[a]:
                    for t2, m2 in subsets[b]:
                        visited += 1
                        if not visited & 0xFFFF:
                            tracker.spend(0x10000, "mm pair scan")
                            visited = 0
                        if not check(m1, m2):
                            tracker.spend(visited, "mm pair scan")
                            return frozenset(t1), frozenset(t2)
            tracker.spend(visited, "mm pair scan")
    return None


def mm_level_estimate(vertex_count: int, t: int) -> int:
    """Upper estimate of pairs visited by a full MM* scan at level t."""
    s = sum(comb(vertex_count, k) for k in range(min(t, vertex_count) + 1))
    return s * (s - 1) // 2


def pmc_level_estimate(vertex_count: int, t: int) -> int:
    return sum(comb(vertex_count, k) for k in range(1, min(2 * t, vertex_count) + 1))


def t_diagnosable_check(
    g: Graph,
    fault_edges,
    t: int,
    model: Model,
    budget: int | None = DEFAULT_SEARCH_BUDGET,
    _tracker: BudgetTracker | None = None,
):
    """Decide whether G minus the faulty edges is t-diagnosable under the model.

    Returns ``(True, None)`` or ``(False, (F1, F2))`` where the pair is an
    indistinguishable counterexample with both sides of size at most t. The
    MM* search first runs the PMC subset scan: a PMC-indistinguishable pair
    can never be separated by comparisons either, and the subset scan is far
    cheaper than pair enumeration.
    """
    model = Model(model)
    if t < 0:
        raise BoundError(f"t must be >= 0, got {t}")
    tracker = _tracker if _tracker is not None else BudgetTracker(budget)
    g_eff = remove_edges(g, fault_edges)
    if t == 0:
        return True, None

    subset = _pmc_failing_subset(g_eff, t, tracker)
    if subset is not None:
        return False, _pair_from_subset(g_eff, subset)
    if model is Model.PMC:
        return True, None
    pair = _mm_failing_pair(g_eff, t, tracker)
    if pair is not None:
        return False, pair
    return True, None
