"""Hypercube symmetries and canonical forms for sets of edges.

Every automorphism of Q_n is a bit permutation composed with a XOR
translation, so the group has order n! * 2^n and each element can be written
as v -> pi(v ^ d) for a bit permutation pi and translation vector d.

The canonical form of an edge set is the lexicographically least image of its
sorted edge tuple over the group. Since every single edge can be mapped onto
(0, 1), the least image always starts with (0, 1), and any group element
achieving the minimum must send some edge of the set onto (0, 1). That prunes
the search to: pick an edge, pick which endpoint goes to 0 (fixing d), and
run the (n-1)! bit permutations that send the edge's dimension to bit 0.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .errors import BoundError
from .topology import Edge, normalize_edge


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """Vertex image table for every bit permutation of {0..n-1}."""
    size = 1 << n
    tables = []
    for perm in permutations(range(n)):
        table = [0] * size
        for v in range(size):
            w = 0
            for i in range(n):
                if v >> i & 1:
                    w |= 1 << perm[i]
            table[v] = w
        tables.append(tuple(table))
    return tuple(tables)


@lru_cache(maxsize=None)
def _tables_fixing_bit_to_zero(n: int) -> dict[int, tuple[tuple[int, ...], ...]]:
    """Per dimension i, the image tables of permutations mapping bit i to bit 0."""
    by_dim: dict[int, list] = {i: [] for i in range(n)}
    for perm, table in zip(permutations(range(n)), _perm_tables(n)):
        by_dim[perm.index(0)].append(table)
    return {i: tuple(tabs) for i, tabs in by_dim.items()}


def hypercube_edges(n: int) -> list[Edge]:
    size = 1 << n
    return sorted((v, v | 1 << b) for b in range(n) for v in range(size) if not v >> b & 1)


def apply_automorphism(table, d: int, edges) -> tuple[Edge, ...]:
    """Image of an edge set under v -> table[v ^ d], as a sorted edge tuple."""
    out = []
    for u, v in edges:
        a = table[u ^ d]
        b = table[v ^ d]
        out.append((a, b) if a < b else (b, a))
    out.sort()
    return tuple(out)


def canonical_edge_set(n: int, edges) -> tuple[Edge, ...]:
    """Lexicographically least image of the edge set over the automorphisms."""
    edge_list = sorted(normalize_edge(u, v) for u, v in edges)
    if not edge_list:
        return ()
    by_dim = _tables_fixing_bit_to_zero(n)
    best = None
    for u, v in edge_list:
        dim = (u ^ v).bit_length() - 1
        for d in (u, v):
            for table in by_dim[dim]:
                image = apply_automorphism(table, d, edge_list)
                if best is None or image < best:
                    best = image
    return best


def orbit_size(n: int, edges) -> int:
    """Number of distinct images of the edge set over the full group."""
    edge_list = sorted(normalize_edge(u, v) for u, v in edges)
    if not edge_list:
        return 1
    seen = set()
    size = 1 << n
    for table in _perm_tables(n):
        for d in range(size):
            seen.add(apply_automorphism(table, d, edge_list))
    return len(seen)


def edge_orbit_reps(n: int, k: int) -> list[tuple[Edge, ...]]:
    """Canonical representatives of all k-edge subsets of Q_n, by orbit growth.

    Every (k)-orbit contains a set of the form R + {e} for some (k-1)-orbit
    representative R, so extending each representative by every absent edge
    and canonicalizing covers all orbits.
    """
    if n < 1:
        raise BoundError(f"n must be >= 1, got {n}")
    if k < 0:
        raise BoundError(f"subset size must be >= 0, got {k}")
    all_edges = hypercube_edges(n)
    if k > len(all_edges):
        return []
    reps: set[tuple[Edge, ...]] = {()}
    for _ in range(k):
        grown: set[tuple[Edge, ...]] = set()
        for rep in reps:
            present = set(rep)
            for e in all_edges:
                if e in present:
                    continue
                grown.add(canonical_edge_set(n, rep + (e,)))
        reps = grown
    return sorted(reps)
