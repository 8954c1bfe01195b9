"""Roman dominating functions and exact solvers.

The exact solver works on closed-neighbourhood bitmasks. An optimal RDF is
determined by its set of 2-labelled vertices ``D``: every other vertex gets 0
when ``D`` covers it and 1 otherwise. The search branches on membership in
``D`` (label 2 first, then "not 2") with vertices taken in descending-degree,
ascending-index order, and settles 0 versus 1 at the leaves (0 preferred).
Connected components are solved independently and summed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .graph import Graph, GraphError

__all__ = [
    "Status",
    "RomanFunction",
    "SolveResult",
    "is_rdf",
    "weight",
    "gamma_r_exact",
    "gamma_r",
    "gamma_r_oracle",
    "minimum_labelings_oracle",
    "gamma_r_constrained",
    "gamma_exact",
    "solve_masks",
]


class Status(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class RomanFunction:
    labels: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (0, 1, 2) for x in self.labels):
            raise ValueError(f"labels must be in {{0, 1, 2}}: {self.labels}")

    @classmethod
    def from_twos(cls, closed: Sequence[int], twos: int, ones: int = 0) -> "RomanFunction":
        covered = 0
        for v in _bits(twos):
            covered |= closed[v]
        labels = []
        for v in range(len(closed)):
            if twos >> v & 1:
                labels.append(2)
            elif ones >> v & 1 or not covered >> v & 1:
                labels.append(1)
            else:
                labels.append(0)
        return cls(tuple(labels))

    def part(self, label: int) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.labels) if x == label)

    @property
    def v0(self) -> frozenset[int]:
        return self.part(0)

    @property
    def v1(self) -> frozenset[int]:
        return self.part(1)

    @property
    def v2(self) -> frozenset[int]:
        return self.part(2)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class SolveResult:
    value: int | None
    witness: RomanFunction | frozenset[int] | None
    nodes_explored: int = 0
    status: Status = Status.OPTIMAL

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL


def _labels(f) -> tuple[int, ...]:
    return f.labels if isinstance(f, RomanFunction) else tuple(f)


def is_rdf(g: Graph, f: RomanFunction | Sequence[int]) -> bool:
    labels = _labels(f)
    if len(labels) != g.n:
        raise GraphError(f"labelling has length {len(labels)}, graph has {g.n} vertices")
    return all(
        x != 0 or any(labels[w] == 2 for w in g.adj[v])
        for v, x in enumerate(labels)
    )


def weight(f: RomanFunction | Sequence[int]) -> int:
    return sum(_labels(f))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(closed: Sequence[int], universe: int) -> list[int]:
    comps = []
    rest = universe
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= closed[v]
            grow &= universe & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


class _Search:
    """Branch-and-bound over the set of 2-labelled vertices of one component."""

    def __init__(self, closed, comp, forced2, no2, need2, ones, limit, target):
        self.closed = closed
        self.nodes = 0
        self.target = target
        deg = {v: (closed[v] & comp).bit_count() for v in _bits(comp)}
        self.order = sorted((v for v in _bits(comp & ~no2 & ~forced2)), key=lambda v: (-deg[v], v))
        k = len(self.order)
        suffix = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] | (closed[self.order[i]] & comp)
        self.suffix = suffix
        self.comp = comp
        self.need2 = need2 & comp
        self.free = comp & ~(ones & comp)
        self.base_ones = (ones & comp).bit_count()
        self.best = limit
        self.best_twos: int | None = None
        twos_cover = 0
        for v in _bits(forced2 & comp):
            twos_cover |= closed[v]
        self.start = (forced2 & comp, twos_cover & comp)

    def run(self) -> None:
        twos, covered = self.start
        self._dfs(0, twos, covered, 2 * twos.bit_count())

    def _dfs(self, i: int, twos: int, covered: int, cost2: int) -> bool:
        self.nodes += 1
        uncovered = self.free & ~covered
        reach = self.suffix[i]
        dead = uncovered & ~reach
        if dead & self.need2:
            return False
        base = cost2 + self.base_ones + dead.bit_count()
        alive = uncovered & reach
        a = alive.bit_count()
        if a:
            mc = 0
            closed = self.closed
            for j in range(i, len(self.order)):
                c = (closed[self.order[j]] & alive).bit_count()
                if c > mc:
                    mc = c
            lb = base + (a if mc < 2 else -(-2 * a // mc))
            if alive & self.need2:
                lb = max(lb, base + 2)
        else:
            lb = base
        if lb >= self.best:
            return False
        if i == len(self.order):
            self.best = base
            self.best_twos = twos
            return self.target is not None and base <= self.target
        v = self.order[i]
        if self._dfs(i + 1, twos | (1 << v), covered | self.closed[v], cost2 + 2):
            return True
        return self._dfs(i + 1, twos, covered, cost2)


def solve_masks(closed: Sequence[int], forced2: int = 0, no2: int = 0, need2: int = 0,
                ones: int = 0, target: int | None = None) -> tuple[int | None, int, int]:
    """Minimum Roman weight on the graph given by closed-neighbourhood masks.

    Constraints: ``forced2`` vertices get label 2, ``ones`` get label 1,
    ``need2`` vertices (label 0) must have a 2-labelled neighbour, and no
    vertex of ``no2`` gets label 2. With ``target`` set, the search may stop
    early at any solution of weight ``<= target`` (the value returned is then
    that solution's weight, not necessarily the minimum).

    Returns ``(value, twos_mask, nodes)``; value is ``None`` when infeasible.
    """
    n = len(closed)
    universe = (1 << n) - 1
    constrained = bool(forced2 | no2 | ones | need2)
    no2 = no2 | ones | need2
    if forced2 & no2:
        return None, 0, 0
    comps = _components(closed, universe)
    total = 0
    twos = 0
    nodes = 0
    single = len(comps) == 1
    for comp in comps:
        if constrained:
            limit = 2 * comp.bit_count() + 1
        else:
            limit = _greedy_limit(closed, comp)
        search = _Search(closed, comp, forced2, no2, need2, ones, limit,
                         target if single else None)
        search.run()
        nodes += search.nodes
        if search.best_twos is None:
            return None, 0, nodes
        total += search.best
        twos |= search.best_twos
    return total, twos, nodes


def _greedy_limit(closed: Sequence[int], comp: int) -> int:
    """Weight of a greedy RDF on one component, plus one."""
    uncovered = comp
    twos = 0
    while True:
        best_v, best_gain = -1, 2
        for v in _bits(comp & ~twos):
            gain = (closed[v] & uncovered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_v < 0:
            break
        twos |= 1 << best_v
        uncovered &= ~closed[best_v]
    return 2 * twos.bit_count() + uncovered.bit_count() + 1


def gamma_r_exact(g: Graph) -> SolveResult:
    """Exact Roman domination number with a deterministic witness."""
    if g.n < 1:
        raise GraphError("graph must have at least one vertex")
    value, twos, nodes = solve_masks(g.closed)
    return SolveResult(value, RomanFunction.from_twos(g.closed, twos), nodes)


@lru_cache(maxsize=1 << 17)
def gamma_r(g: Graph) -> int:
    """Cached γ_R value; the empty graph has value 0."""
    if g.n == 0:
        return 0
    return solve_masks(g.closed)[0]


def gamma_r_constrained(g: Graph, v: int, label: int) -> SolveResult:
    """Minimum weight over RDFs with ``f(v) == label``; may be INFEASIBLE."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    bit = 1 << v
    if label == 2:
        kw = dict(forced2=bit)
    elif label == 1:
        kw = dict(ones=bit)
    elif label == 0:
        kw = dict(need2=bit)
    else:
        raise GraphError(f"label must be 0, 1 or 2, got {label}")
    value, twos, nodes = solve_masks(g.closed, **kw)
    if value is None:
        return SolveResult(None, None, nodes, Status.INFEASIBLE)
    f = RomanFunction.from_twos(g.closed, twos, ones=bit if label == 1 else 0)
    return SolveResult(value, f, nodes)


# -- brute force --------------------------------------------------------------

ORACLE_MAX_N = 12


@lru_cache(maxsize=16)
def _labelings_by_weight(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(product((0, 1, 2), repeat=n), key=sum))


def _valid(adj, labels) -> bool:
    for v, x in enumerate(labels):
        if x == 0:
            for w in adj[v]:
                if labels[w] == 2:
                    break
            else:
                return False
    return True


def gamma_r_oracle(g: Graph) -> int:
    """γ_R by scanning all 3^n labellings; refuses n > 12."""
    if g.n > ORACLE_MAX_N:
        raise GraphError(f"oracle refuses n={g.n} > {ORACLE_MAX_N}")
    if g.n <= 8:
        for labels in _labelings_by_weight(g.n):
            if _valid(g.adj, labels):
                return sum(labels)
    best = 2 * g.n
    for labels in product((0, 1, 2), repeat=g.n):
        w = sum(labels)
        if w < best and _valid(g.adj, labels):
            best = w
    return best


def minimum_labelings_oracle(g: Graph) -> list[RomanFunction]:
    """Every minimum-weight RDF, by exhaustive scan (n <= 8)."""
    if g.n > 8:
        raise GraphError("exhaustive labelling listing is limited to n <= 8")
    found: list[RomanFunction] = []
    best = None
    for labels in _labelings_by_weight(g.n):
        w = sum(labels)
        if best is not None and w > best:
            break
        if _valid(g.adj, labels):
            best = w
            found.append(RomanFunction(labels))
    return found


# -- domination number ---------------------------------------------------------

def gamma_exact(g: Graph) -> SolveResult:
    """Domination number by branching on the first undominated vertex."""
    if g.n < 1:
        raise GraphError("graph must have at least one vertex")
    closed = g.closed
    full = (1 << g.n) - 1
    span = max(c.bit_count() for c in closed)
    best = [g.n + 1, 0]
    nodes = 0

    def dfs(chosen: int, size: int, dominated: int) -> None:
        nonlocal nodes
        nodes += 1
        rest = full & ~dominated
        if not rest:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + -(-rest.bit_count() // span) >= best[0]:
            return
        w = (rest & -rest).bit_length() - 1
        for u in sorted(_bits(closed[w]), key=lambda u: -(closed[u] & rest).bit_count()):
            dfs(chosen | (1 << u), size + 1, dominated | closed[u])

    dfs(0, 0, 0)
    return SolveResult(best[0], frozenset(_bits(best[1])), nodes)
