"""Vertex-removal impact classes and the Roman bondage number.

The exact bondage search walks edge subsets by increasing size,
lexicographically over the canonical edge order. Deciding whether a removal
set ``S`` leaves γ_R unchanged only needs one RDF of ``G - S`` with weight
γ_R(G); every such RDF is also a γ_R-function of ``G``, so the search keeps a
pool of them and only calls the solver when no pooled function survives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, remove_edges, remove_vertex
from .rdf import gamma_r, gamma_r_exact, solve_masks

__all__ = [
    "Impact",
    "VertexImpactPartition",
    "BondageStatus",
    "BondageResult",
    "classify_vertex",
    "classify_all",
    "is_roman_vertex_critical",
    "default_cap",
    "roman_bondage",
    "raises_gamma_r",
    "witness_from_critical_vertex",
    "witness_three_low_neighbors",
    "strategy_witnesses",
]


class Impact(enum.Enum):
    MINUS = "MINUS"
    ZERO = "ZERO"
    PLUS = "PLUS"


@dataclass(frozen=True)
class VertexImpactPartition:
    v_minus: frozenset[int]
    v_zero: frozenset[int]
    v_plus: frozenset[int]

    def of(self, v: int) -> Impact:
        if v in self.v_minus:
            return Impact.MINUS
        if v in self.v_zero:
            return Impact.ZERO
        return Impact.PLUS


class BondageStatus(enum.Enum):
    EXACT = "EXACT"
    LOWER_BOUND_ONLY = "LOWER_BOUND_ONLY"
    UNDEFINED = "UNDEFINED"


@dataclass(frozen=True)
class BondageResult:
    """Outcome of the bondage search.

    EXACT: ``value`` is b_R and ``witness`` a lexicographically first
    minimum edge set. LOWER_BOUND_ONLY: every set of size ``<= cap_used`` was
    tried without changing γ_R, so ``value == cap_used + 1`` is a certified
    lower bound. UNDEFINED: γ_R(G) == n and no removal can change it.
    """

    status: BondageStatus
    value: int | None
    witness: tuple[tuple[int, int], ...] | None
    cap_used: int
    subsets_checked: int = 0
    solver_calls: int = 0


def _require_order2(g: Graph) -> None:
    if g.n < 2:
        raise GraphError("vertex classification needs at least 2 vertices")


def removal_deltas(g: Graph) -> list[int]:
    """γ_R(G - v) - γ_R(G) for every vertex v."""
    _require_order2(g)
    base = gamma_r(g)
    return [gamma_r(remove_vertex(g, v)) - base for v in range(g.n)]


def _impact(delta: int) -> Impact:
    return Impact.PLUS if delta > 0 else Impact.MINUS if delta < 0 else Impact.ZERO


def classify_vertex(g: Graph, v: int) -> Impact:
    _require_order2(g)
    return _impact(gamma_r(remove_vertex(g, v)) - gamma_r(g))


def classify_all(g: Graph) -> VertexImpactPartition:
    parts: dict[Impact, set[int]] = {i: set() for i in Impact}
    for v, d in enumerate(removal_deltas(g)):
        parts[_impact(d)].add(v)
    return VertexImpactPartition(*(frozenset(parts[i]) for i in Impact))


def is_roman_vertex_critical(g: Graph) -> bool:
    return all(d < 0 for d in removal_deltas(g))


def default_cap(g: Graph) -> int:
    delta = g.max_degree
    return 3 * delta - 3 if delta >= 2 else g.m


class _RemovalOracle:
    """Decides γ_R(G - S) > γ_R(G) for many S on a fixed G."""

    def __init__(self, g: Graph, pool_size: int = 256):
        self.g = g
        self.target = gamma_r(g)
        f = gamma_r_exact(g).witness
        self.pool: list[tuple[tuple[int, ...], int]] = []
        self._add(tuple(sorted(f.v2)), _mask(f.v0))
        self.pool_size = pool_size
        self.solver_calls = 0

    def _add(self, twos: tuple[int, ...], zeros: int) -> None:
        self.pool.insert(0, (twos, zeros))

    def raises(self, removed: Sequence[tuple[int, int]]) -> bool:
        closed = list(self.g.closed)
        for u, v in removed:
            closed[u] &= ~(1 << v)
            closed[v] &= ~(1 << u)
        for k, (twos, zeros) in enumerate(self.pool):
            covered = 0
            for t in twos:
                covered |= closed[t]
            if not zeros & ~covered:
                if k:
                    self.pool.insert(0, self.pool.pop(k))
                return False
        self.solver_calls += 1
        value, twos_mask, _ = solve_masks(closed, target=self.target)
        if value > self.target:
            return True
        covered = 0
        twos = tuple(i for i in range(self.g.n) if twos_mask >> i & 1)
        for t in twos:
            covered |= closed[t]
        self._add(twos, covered & ~twos_mask)
        if len(self.pool) > self.pool_size:
            self.pool.pop()
        return False


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def raises_gamma_r(g: Graph, removed: Sequence[tuple[int, int]]) -> bool:
    return gamma_r(remove_edges(g, removed)) > gamma_r(g)


def roman_bondage(g: Graph, cap: int | None = None) -> BondageResult:
    if g.m == 0:
        raise GraphError("bondage number needs at least one edge")
    if cap is None:
        cap = default_cap(g)
    if cap < 1:
        raise GraphError(f"cap must be positive, got {cap}")
    if gamma_r(g) == g.n:
        return BondageResult(BondageStatus.UNDEFINED, None, None, 0)
    oracle = _RemovalOracle(g)
    edges = g.edges
    checked = 0
    limit = min(cap, g.m)
    for size in range(1, limit + 1):
        for idx in combinations(range(g.m), size):
            checked += 1
            chosen = tuple(edges[i] for i in idx)
            if oracle.raises(chosen):
                return BondageResult(BondageStatus.EXACT, size, chosen, cap, checked, oracle.solver_calls)
    # with limit == |E| the full removal isolates everything and γ_R(G) < n
    return BondageResult(BondageStatus.LOWER_BOUND_ONLY, limit + 1, None, limit, checked, oracle.solver_calls)


def witness_from_critical_vertex(g: Graph, x: int) -> tuple[tuple[int, int], ...]:
    """Edge set at ``x`` whose removal raises γ_R, for x outside V⁻.

    For x in V⁰ this is every edge at x. For x in V⁺ with
    p = γ_R(G-x) - γ_R(G), the first d(x) - p edges at x (canonical order)
    already suffice.
    """
    _require_order2(g)
    delta = gamma_r(remove_vertex(g, x)) - gamma_r(g)
    if delta < 0:
        raise GraphError(f"vertex {x} is in V-; no witness follows")
    incident = tuple(e for e in g.edges if x in e)
    if delta == 0:
        return incident
    return incident[: g.degree(x) - delta]


def witness_three_low_neighbors(g: Graph, max_degree: int = 5) -> tuple[tuple[int, int], ...] | None:
    """All edges touching three low-degree neighbours of one vertex, or None.

    Takes the first vertex (by index) having at least three neighbours of
    degree ``<= max_degree`` and uses its three lowest-degree such neighbours
    (ties by index).
    """
    for u in range(g.n):
        low = sorted((w for w in g.adj[u] if g.degree(w) <= max_degree), key=lambda w: (g.degree(w), w))
        if len(low) >= 3:
            picked = set(low[:3])
            return tuple(e for e in g.edges if e[0] in picked or e[1] in picked)
    return None


@dataclass(frozen=True)
class StrategyWitness:
    strategy: str
    edges: tuple[tuple[int, int], ...]
    verified: bool


def strategy_witnesses(g: Graph) -> list[StrategyWitness]:
    """Candidate removal sets from the two constructive strategies, each verified."""
    out = []
    e1 = witness_three_low_neighbors(g)
    if e1 is not None:
        out.append(StrategyWitness("three_low_neighbors", e1, raises_gamma_r(g, e1)))
    if g.n >= 2 and g.m:
        best = None
        for x, d in enumerate(removal_deltas(g)):
            if d >= 0 and g.degree(x) > 0:
                s = witness_from_critical_vertex(g, x)
                if best is None or len(s) < len(best):
                    best = s
        if best is not None:
            out.append(StrategyWitness("critical_vertex", best, raises_gamma_r(g, best)))
    return out
