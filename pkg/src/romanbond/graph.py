"""Immutable simple graphs and the structural primitives used everywhere else.

Vertices are dense 0-based integers. Each graph keeps adjacency sets, a
canonical (sorted, smaller-endpoint-first) edge tuple, and closed-neighbourhood
bitmasks for the solvers.
"""

from __future__ import annotations

import enum
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "GraphError",
    "Graph",
    "INFINITY",
    "DegreeProfile",
    "EmbeddingInfo",
    "build_graph",
    "degree_profile",
    "private_neighbors",
    "girth",
    "edge_cut",
    "remove_edges",
    "add_edges",
    "remove_vertex",
    "length2_paths",
    "is_connected",
    "components",
    "enumerate_small_graphs",
]


class GraphError(ValueError):
    pass


class _Unbounded(enum.Enum):
    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Unbounded.INFINITY


class Graph:
    __slots__ = ("n", "adj", "edges", "closed", "_hash")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...], edges: tuple[tuple[int, int], ...]):
        self.n = n
        self.adj = adj
        self.edges = edges
        self.closed = tuple((1 << v) | _mask(adj[v]) for v in range(n))
        self._hash = hash((n, edges))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def edge_index(self, u: int, v: int) -> int:
        e = (u, v) if u < v else (v, u)
        try:
            return self.edges.index(e)
        except ValueError:
            raise GraphError(f"{e} is not an edge") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _canonical(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edge_pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``range(n)``.

    Loops, out-of-range endpoints and repeated pairs (in either orientation)
    raise :class:`GraphError`; nothing is silently deduplicated.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for pair in edge_pairs:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair} has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        e = _canonical(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj), tuple(sorted(seen)))


class DegreeProfile(NamedTuple):
    min_degree: int
    max_degree: int
    average_degree: Fraction


def degree_profile(g: Graph) -> DegreeProfile:
    if g.n == 0:
        raise GraphError("degree profile of the empty graph is undefined")
    return DegreeProfile(g.min_degree, g.max_degree, Fraction(2 * g.m, g.n))


class EmbeddingInfo(NamedTuple):
    """Declared surface metadata; never inferred from the graph.

    ``surface_kind`` is ``"orientable"``, ``"non_orientable"`` or
    ``"undeclared"``. A bare Euler characteristic (kind undeclared, genus
    ``None``) is allowed because corpora often only state ``chi``.
    """

    surface_kind: str = "undeclared"
    genus: int | None = None
    chi: int | None = None

    @classmethod
    def orientable(cls, genus: int) -> "EmbeddingInfo":
        return cls.make("orientable", genus=genus)

    @classmethod
    def non_orientable(cls, genus: int) -> "EmbeddingInfo":
        return cls.make("non_orientable", genus=genus)

    @classmethod
    def make(cls, surface_kind: str = "undeclared", genus: int | None = None,
             chi: int | None = None) -> "EmbeddingInfo":
        if surface_kind == "orientable":
            if genus is None:
                if chi is None or chi > 2 or chi % 2:
                    raise GraphError(f"orientable surface needs a genus or an even chi <= 2, got chi={chi}")
                genus = (2 - chi) // 2
            if genus < 0:
                raise GraphError("genus must be nonnegative")
            expected = 2 - 2 * genus
        elif surface_kind == "non_orientable":
            if genus is None:
                if chi is None or chi > 1:
                    raise GraphError(f"non-orientable surface needs a genus or chi <= 1, got chi={chi}")
                genus = 2 - chi
            if genus < 1:
                raise GraphError("non-orientable genus must be at least 1")
            expected = 2 - genus
        elif surface_kind == "undeclared":
            if genus is not None:
                raise GraphError("genus given without an orientability")
            return cls("undeclared", None, chi)
        else:
            raise GraphError(f"unknown surface kind {surface_kind!r}")
        if chi is not None and chi != expected:
            raise GraphError(f"chi={chi} inconsistent with {surface_kind} genus {genus}")
        return cls(surface_kind, genus, expected)

    @property
    def declared(self) -> bool:
        return self.chi is not None


def private_neighbors(g: Graph, x: int, X: Iterable[int]) -> frozenset[int]:
    """Vertices y with N[y] ∩ X == {x}; may contain x itself."""
    X = frozenset(X)
    if x not in X:
        raise GraphError(f"{x} is not in the given set")
    target = frozenset((x,))
    return frozenset(y for y in range(g.n) if g.closed_neighbors(y) & X == target)


def girth(g: Graph) -> int | _Unbounded:
    best: int | None = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return INFINITY if best is None else best


def edge_cut(g: Graph, U: Iterable[int]) -> frozenset[tuple[int, int]]:
    U = frozenset(U)
    if not U or len(U) >= g.n or not U <= frozenset(range(g.n)):
        raise GraphError("cut side must be a proper nonempty vertex subset")
    return frozenset(e for e in g.edges if (e[0] in U) != (e[1] in U))


def remove_edges(g: Graph, S: Iterable[tuple[int, int]]) -> Graph:
    drop = set()
    for u, v in S:
        e = _canonical(u, v)
        if not (0 <= e[0] < g.n and g.has_edge(*e)):
            raise GraphError(f"{e} is not an edge")
        drop.add(e)
    return build_graph(g.n, (e for e in g.edges if e not in drop))


def add_edges(g: Graph, S: Iterable[tuple[int, int]]) -> Graph:
    return build_graph(g.n, list(g.edges) + [_canonical(u, v) for u, v in S])


def remove_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if g.n == 1:
        raise GraphError("removing the only vertex leaves the empty graph")

    def shift(w: int) -> int:
        return w - 1 if w > v else w

    return build_graph(g.n - 1, ((shift(a), shift(b)) for a, b in g.edges if v not in (a, b)))


def length2_paths(g: Graph) -> list[tuple[int, int, int]]:
    """Every path x-y-z once, oriented so that x < z, ordered by (x, y, z)."""
    out = []
    for y in range(g.n):
        for x, z in combinations(sorted(g.adj[y]), 2):
            out.append((x, y, z))
    out.sort()
    return out


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    return len(components(g)) == 1


def enumerate_small_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """All labelled graphs on n vertices, by ascending edge bitmask.

    Bit i of the mask selects the i-th pair in lexicographic order.
    """
    if not 1 <= n <= 7:
        raise GraphError(f"n must be in [1, 7], got {n}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if connected_only and not is_connected(g):
            continue
        yield g
