"""Immutable simple graphs, hypercube construction, and vertex-boundary search.

Vertices are integers ``0 .. vertex_count-1``. For the n-dimensional hypercube
Q_n the vertex id is read as an n-bit label and two vertices are adjacent
exactly when their labels differ in one bit.
"""

from __future__ import annotations

import hashlib
from itertools import combinations
from math import comb

from .errors import BoundError, DomainError, ResourceError

MAX_HYPERCUBE_DIM = 20
DEFAULT_SUBSET_BUDGET = 2_000_000

Edge = tuple[int, int]
VertexSet = frozenset[int]
EdgeSet = frozenset[Edge]


def normalize_edge(u: int, v: int) -> Edge:
    """Canonical (smaller, larger) form of an undirected edge."""
    if u == v:
        raise DomainError(f"self-loop ({u},{v}) is not a valid edge")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph, immutable after construction.

    ``dimension`` is set only when the instance is a full hypercube Q_n; any
    edited copy (see :func:`remove_edges`) drops it.
    """

    __slots__ = ("_adj", "_dim", "_masks")

    def __init__(self, adjacency, dimension: int | None = None, _validate: bool = True):
        adj = tuple(frozenset(nbrs) for nbrs in adjacency)
        if _validate:
            n = len(adj)
            for u, nbrs in enumerate(adj):
                for v in nbrs:
                    if not 0 <= v < n:
                        raise DomainError(f"neighbor {v} of vertex {u} is out of range")
                    if v == u:
                        raise DomainError(f"self-loop at vertex {u}")
                    if u not in adj[v]:
                        raise DomainError(f"adjacency is not symmetric at ({u},{v})")
        self._adj = adj
        self._dim = dimension
        self._masks = None

    @classmethod
    def from_edges(cls, vertex_count: int, edges, dimension: int | None = None) -> "Graph":
        if vertex_count < 1:
            raise BoundError(f"vertex_count must be >= 1, got {vertex_count}")
        adj = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise DomainError(f"edge ({u},{v}) is out of range")
            u, v = normalize_edge(u, v)
            adj[u].add(v)
            adj[v].add(u)
        g = cls(adj, dimension=dimension, _validate=False)
        if dimension is not None:
            _check_hypercube(g, dimension)
        return g

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def dimension(self) -> int | None:
        return self._dim

    def vertices(self) -> range:
        return range(len(self._adj))

    def neighbors(self, u: int) -> frozenset[int]:
        self._check_vertex(u)
        return self._adj[u]

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def edges(self):
        """All edges as normalized pairs, in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if v > u:
                    yield (u, v)

    def edge_set(self) -> EdgeSet:
        return frozenset(self.edges())

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj) // 2

    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmask (bit v set iff v adjacent), cached."""
        if self._masks is None:
            masks = []
            for nbrs in self._adj:
                m = 0
                for v in nbrs:
                    m |= 1 << v
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def label(self) -> str:
        if self._dim is not None:
            return f"Q{self._dim}"
        return f"graph-{graph_hash(self)[:8]}"

    def _check_vertex(self, u: int) -> None:
        if not isinstance(u, int) or not 0 <= u < len(self._adj):
            raise DomainError(f"vertex {u} is not in the graph")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._dim == other._dim

    __hash__ = None

    def __repr__(self):
        return f"Graph({self.label()}, {self.vertex_count} vertices, {self.edge_count} edges)"


def _check_hypercube(g: Graph, n: int) -> None:
    if g.vertex_count != 1 << n:
        raise DomainError(f"dimension {n} needs {1 << n} vertices, got {g.vertex_count}")
    if g.edge_count != n * (1 << (n - 1)):
        raise DomainError(f"edge count does not match a {n}-cube")
    for u, v in g.edges():
        if (u ^ v).bit_count() != 1:
            raise DomainError(f"edge ({u},{v}) does not flip exactly one bit")


def build_hypercube(n: int) -> Graph:
    """Q_n on vertex ids 0 .. 2^n - 1; ids adjacent iff they differ in one bit."""
    if not isinstance(n, int) or not 1 <= n <= MAX_HYPERCUBE_DIM:
        raise BoundError(f"hypercube dimension must be in [1, {MAX_HYPERCUBE_DIM}], got {n}")
    size = 1 << n
    adj = [frozenset(v ^ (1 << b) for b in range(n)) for v in range(size)]
    return Graph(adj, dimension=n, _validate=False)


def neighbor(u: int, i: int, n: int) -> int:
    """The vertex reached from u along dimension i of Q_n (1-based, flips bit i-1)."""
    if not 1 <= i <= n:
        raise BoundError(f"dimension index must be in [1, {n}], got {i}")
    if not 0 <= u < (1 << n):
        raise DomainError(f"vertex {u} is not in Q{n}")
    return u ^ (1 << (i - 1))


def _as_vertex_set(g: Graph, s) -> VertexSet:
    out = frozenset(s)
    for v in out:
        g._check_vertex(v)
    return out


def _as_edge_set(g: Graph, edges) -> EdgeSet:
    out = set()
    for u, v in edges:
        e = normalize_edge(u, v)
        if not g.has_edge(*e):
            raise DomainError(f"({u},{v}) is not an edge of the graph")
        out.add(e)
    return frozenset(out)


def neighborhood(g: Graph, s, closed: bool = False) -> VertexSet:
    """Open neighborhood N(S): vertices outside S adjacent to S. ``closed`` adds S."""
    sset = _as_vertex_set(g, s)
    acc = set()
    for v in sset:
        acc |= g.neighbors(v)
    if closed:
        return frozenset(acc | sset)
    return frozenset(acc - sset)


def common_neighbors(g: Graph, u: int, v: int) -> VertexSet:
    """Vertices adjacent to both u and v (u != v)."""
    if u == v:
        raise DomainError("common neighbors need two distinct vertices")
    return frozenset(g.neighbors(u) & g.neighbors(v))


def symmetric_difference(a, b) -> frozenset:
    return frozenset(a) ^ frozenset(b)


def remove_edges(g: Graph, fault_edges) -> Graph:
    """Copy of g with the given edges deleted. Copy-on-write per touched vertex."""
    fe = _as_edge_set(g, fault_edges)
    if not fe:
        return g
    touched: dict[int, set[int]] = {}
    for u, v in fe:
        touched.setdefault(u, set(g.neighbors(u))).discard(v)
        touched.setdefault(v, set(g.neighbors(v))).discard(u)
    adj = list(g._adj)
    for u, nbrs in touched.items():
        adj[u] = frozenset(nbrs)
    return Graph(adj, dimension=None, _validate=False)


def min_boundary_formula(m: int, n: int) -> int:
    """Smallest open-neighborhood size over m-vertex subsets of Q_n, closed form.

    Exact integer arithmetic throughout; both branches are always even before
    the final halving.
    """
    if n < 1:
        raise BoundError(f"n must be >= 1, got {n}")
    if not 1 <= m <= 2 * n:
        raise BoundError(f"m must be in [1, {2 * n}] for Q{n}, got {m}")
    if m <= n + 1:
        num = -m * m + (2 * n - 1) * m + 2
    else:
        num = -m * m + (4 * n - 3) * m - 2 * n * n + 4
    if num % 2:
        raise AssertionError(f"non-integral boundary value for m={m}, n={n}")
    return num // 2


def min_boundary_bruteforce(
    g: Graph, m: int, subset_budget: int = DEFAULT_SUBSET_BUDGET
) -> tuple[int, VertexSet]:
    """Exhaustive minimum of |N(S)| over all m-subsets, with its first achiever.

    Enumerates subsets in lexicographic order, so the returned witness is the
    lexicographically least subset attaining the minimum.
    """
    size = g.vertex_count
    if not 1 <= m <= size:
        raise BoundError(f"m must be in [1, {size}], got {m}")
    total = comb(size, m)
    if total > subset_budget:
        raise ResourceError(
            f"{total} subsets exceed the budget of {subset_budget}",
            log={"subsets": total, "limit": subset_budget},
        )
    masks = g.adjacency_masks()
    best = None
    witness = None
    for subset in combinations(range(size), m):
        nb = 0
        smask = 0
        for v in subset:
            nb |= masks[v]
            smask |= 1 << v
        boundary = (nb & ~smask).bit_count()
        if best is None or boundary < best:
            best = boundary
            witness = subset
    return best, frozenset(witness)


def graph_to_text(g: Graph) -> str:
    """Plain-text edge list: 'p <count>', optional 'dim <n>', then sorted 'e u v' lines."""
    lines = [f"p {g.vertex_count}"]
    if g.dimension is not None:
        lines.append(f"dim {g.dimension}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    count = None
    dim = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if count is not None:
                raise DomainError("duplicate 'p' line")
            count = int(parts[1])
        elif parts[0] == "dim":
            dim = int(parts[1])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise DomainError(f"unrecognized line: {line!r}")
    if count is None:
        raise DomainError("missing 'p' line")
    return Graph.from_edges(count, edges, dimension=dim)


def graph_hash(g: Graph) -> str:
    """Stable content hash of the canonical edge-list text (first 16 hex chars)."""
    payload = [f"p {g.vertex_count}"]
    payload.extend(f"e {u} {v}" for u, v in g.edges())
    digest = hashlib.sha256("\n".join(payload).encode()).hexdigest()
    return digest[:16]
