"""Upper bounds on the Roman bondage number and statement-level theorem checks.

Every evaluator returns a verdict instead of raising when its hypotheses do
not hold, so campaign reports stay total over mixed corpora. All arithmetic
is exact (``int`` / ``Fraction``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any

from .bondage import BondageResult, BondageStatus, removal_deltas
from .graph import (
    INFINITY,
    EmbeddingInfo,
    Graph,
    GraphError,
    degree_profile,
    girth,
    is_connected,
    length2_paths,
    private_neighbors,
    remove_edges,
)
from .rdf import gamma_r, gamma_r_constrained, gamma_r_exact, minimum_labelings_oracle

__all__ = [
    "BoundId",
    "BoundEvaluation",
    "CheckId",
    "CheckStatus",
    "CheckOutcome",
    "bound_path",
    "bound_critical_vertex",
    "bound_avg_degree",
    "bound_girth_euler",
    "bound_surface15",
    "delta_max_bound",
    "theorem_check",
    "all_bounds",
    "bound_holds",
]


class BoundId(enum.Enum):
    PATH = "path"
    CRITICAL_VERTEX = "critical_vertex"
    AVG_DEGREE = "avg_degree"
    GIRTH_EULER = "girth_euler"
    SURFACE15 = "surface15"


@dataclass
class BoundEvaluation:
    theorem_id: BoundId
    applicable: bool
    reason: str = ""
    bound_value: int | Fraction | None = None
    witness: Any = None
    details: dict = field(default_factory=dict)
    exact_b_r: BondageResult | None = None

    def sound(self) -> bool | None:
        """False iff the bound is below a known exact b_R; None when not comparable."""
        r = self.exact_b_r
        if not self.applicable or r is None or r.status is not BondageStatus.EXACT:
            return None
        return bound_holds(self.bound_value, r.value)


def bound_holds(bound: int | Fraction, value: int) -> bool:
    return Fraction(value) <= Fraction(bound)


def _inapplicable(tid: BoundId, reason: str) -> BoundEvaluation:
    return BoundEvaluation(tid, False, reason)


def _common_neighbors(g: Graph, x: int, y: int) -> int:
    return len(g.adj[x] & g.adj[y])


def bound_path(g: Graph) -> BoundEvaluation:
    """min over paths x-y-z of d(x)+d(y)+d(z) - 3 - |N(x) ∩ N(y)|.

    Both orientations of each path are scored since the common-neighbour
    term is not symmetric in the endpoints.
    """
    paths = length2_paths(g)
    if not paths:
        return _inapplicable(BoundId.PATH, "no path of length 2 (max degree < 2)")
    best = None
    for x, y, z in paths:
        for a, c in ((x, z), (z, x)):
            val = g.degree(a) + g.degree(y) + g.degree(c) - 3 - _common_neighbors(g, a, y)
            if best is None or val < best[0]:
                best = (val, (a, y, c))
    return BoundEvaluation(BoundId.PATH, True, bound_value=best[0], witness=best[1])


def bound_critical_vertex(g: Graph) -> BoundEvaluation:
    if g.n < 2:
        return _inapplicable(BoundId.CRITICAL_VERTEX, "order < 2")
    if not is_connected(g):
        return _inapplicable(BoundId.CRITICAL_VERTEX, "disconnected")
    deltas = removal_deltas(g)
    candidates = [(g.degree(u) - d, u) for u, d in enumerate(deltas) if d >= 0]
    if not candidates:
        return _inapplicable(BoundId.CRITICAL_VERTEX, "Roman vertex critical (V- = V)")
    value, u = min(candidates)
    return BoundEvaluation(
        BoundId.CRITICAL_VERTEX, True, bound_value=value, witness=u,
        details={"impact": "PLUS" if deltas[u] > 0 else "ZERO",
                 "max_degree": g.max_degree,
                 "within_max_degree": value <= g.max_degree},
    )


def _connected_with_path(g: Graph, tid: BoundId) -> BoundEvaluation | None:
    if g.n == 0 or not is_connected(g):
        return _inapplicable(tid, "disconnected")
    if g.max_degree < 2:
        return _inapplicable(tid, "max degree < 2")
    return None


def bound_avg_degree(g: Graph) -> BoundEvaluation:
    bad = _connected_with_path(g, BoundId.AVG_DEGREE)
    if bad:
        return bad
    prof = degree_profile(g)
    value = 2 * prof.average_degree + prof.max_degree - 3
    return BoundEvaluation(BoundId.AVG_DEGREE, True, bound_value=value,
                           details={"average_degree": prof.average_degree})


def _sgz_limit(k: int, chi: int, n: int) -> Fraction:
    return Fraction(2 * k, k - 2) * (1 - Fraction(chi, n))


def bound_girth_euler(g: Graph, emb: EmbeddingInfo | None) -> BoundEvaluation:
    """Girth/Euler-characteristic bound; ``bound_value`` is the tighter first form."""
    bad = _connected_with_path(g, BoundId.GIRTH_EULER)
    if bad:
        return bad
    k = girth(g)
    if k is INFINITY:
        return _inapplicable(BoundId.GIRTH_EULER, "forest (infinite girth)")
    if emb is None or not emb.declared:
        return _inapplicable(BoundId.GIRTH_EULER, "Euler characteristic not declared")
    n, chi, Delta = g.n, emb.chi, g.max_degree
    first = Fraction(4 * k, k - 2) * (1 - Fraction(chi, n)) + Delta - 3
    second = Fraction(-12 * chi, n) + Delta + 9
    ad = degree_profile(g).average_degree
    limit = _sgz_limit(k, chi, n)
    return BoundEvaluation(
        BoundId.GIRTH_EULER, True, bound_value=first, witness=k,
        details={"girth": k, "chi": chi, "relaxed": second,
                 "average_degree": ad, "ad_limit": limit, "ad_premise_holds": ad <= limit,
                 "first_le_relaxed": first <= second},
    )


def bound_surface15(g: Graph, emb: EmbeddingInfo | None) -> BoundEvaluation:
    bad = _connected_with_path(g, BoundId.SURFACE15)
    if bad:
        return bad
    if emb is None or not emb.declared:
        return _inapplicable(BoundId.SURFACE15, "Euler characteristic not declared")
    if emb.chi < 0:
        return _inapplicable(BoundId.SURFACE15, f"negative Euler characteristic {emb.chi}")
    return BoundEvaluation(BoundId.SURFACE15, True, bound_value=15, details={"chi": emb.chi})


def delta_max_bound(chi: int) -> int:
    """floor((5 + sqrt(49 - 24 chi)) / 2), exactly, for chi <= 1."""
    if chi > 1:
        raise GraphError(f"formula only covers chi <= 1, got {chi}")
    d = 49 - 24 * chi
    r = isqrt(d)
    # (5 + sqrt(d)) / 2 floors to (5 + r) // 2 whether or not d is a square
    return (5 + r) // 2


def all_bounds(g: Graph, emb: EmbeddingInfo | None = None,
               exact: BondageResult | None = None) -> dict[BoundId, BoundEvaluation]:
    out = {
        BoundId.PATH: bound_path(g),
        BoundId.CRITICAL_VERTEX: bound_critical_vertex(g),
        BoundId.AVG_DEGREE: bound_avg_degree(g),
        BoundId.GIRTH_EULER: bound_girth_euler(g, emb),
        BoundId.SURFACE15: bound_surface15(g, emb),
    }
    for ev in out.values():
        ev.exact_b_r = exact
    return out


# -- theorem checks ------------------------------------------------------------------

class CheckId(enum.Enum):
    RV1_SANDWICH = "RV1_SANDWICH"
    VVV_I = "VVV_I"
    VVV_II = "VVV_II"
    VC = "VC"
    HRA_PAIR = "HRA_PAIR"
    SGZ_AD = "SGZ_AD"
    EDGE_SUM_11 = "EDGE_SUM_11"


class CheckStatus(enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    INAPPLICABLE = "INAPPLICABLE"


@dataclass(frozen=True)
class CheckOutcome:
    check_id: CheckId
    status: CheckStatus
    witness: Any = None
    reason: str = ""


def _holds(cid, witness=None):
    return CheckOutcome(cid, CheckStatus.HOLDS, witness)


def _violated(cid, witness):
    return CheckOutcome(cid, CheckStatus.VIOLATED, witness)


def _skip(cid, reason):
    return CheckOutcome(cid, CheckStatus.INAPPLICABLE, None, reason)


def _check_sandwich(g: Graph) -> CheckOutcome:
    cid = CheckId.RV1_SANDWICH
    if not g.m:
        return _skip(cid, "no edges")
    base = gamma_r(g)
    values = {}
    for e in g.edges:
        v = gamma_r(remove_edges(g, [e]))
        if not base <= v <= base + 1:
            return _violated(cid, {"edge": e, "gamma_r": base, "gamma_r_minus_edge": v})
        values[e] = v
    return _holds(cid, {"gamma_r": base, "raising_edges": sorted(e for e, v in values.items() if v > base)})


ORACLE_LABELLING_LIMIT = 6


def _check_plus_vertices(g: Graph) -> CheckOutcome:
    cid = CheckId.VVV_I
    if g.n < 2:
        return _skip(cid, "order < 2")
    plus = [v for v, d in enumerate(removal_deltas(g)) if d > 0]
    if not plus:
        return _holds(cid, {"v_plus": [], "functions_checked": 0})
    functions = [gamma_r_exact(g).witness]
    if g.n <= ORACLE_LABELLING_LIMIT:
        functions += minimum_labelings_oracle(g)
    for f in functions:
        twos, zeros = f.v2, f.v0
        for v in plus:
            count = len(private_neighbors(g, v, twos) & zeros) if v in twos else 0
            if f.labels[v] != 2 or count < 3:
                return _violated(cid, {"vertex": v, "labels": list(f.labels), "private_zeros": count})
    return _holds(cid, {"v_plus": plus, "functions_checked": len(functions)})


def _check_removal_floor(g: Graph) -> CheckOutcome:
    cid = CheckId.VVV_II
    if g.n < 2:
        return _skip(cid, "order < 2")
    for u, d in enumerate(removal_deltas(g)):
        if d < -1:
            return _violated(cid, {"vertex": u, "delta": d})
    return _holds(cid)


def _check_v1_equivalence(g: Graph) -> CheckOutcome:
    cid = CheckId.VC
    if g.n < 2:
        return _skip(cid, "order < 2")
    base = gamma_r(g)
    minus = []
    for v, d in enumerate(removal_deltas(g)):
        res = gamma_r_constrained(g, v, 1)
        in_some_v1 = res.value == base
        if (d < 0) != in_some_v1:
            return _violated(cid, {"vertex": v, "delta": d, "constrained_value": res.value, "gamma_r": base})
        if d < 0:
            minus.append(v)
    return _holds(cid, {"v_minus": minus})


def _distance_le2_pairs(g: Graph):
    for u in range(g.n):
        near = set(g.adj[u])
        for w in g.adj[u]:
            near |= g.adj[w]
        for v in sorted(near):
            if v > u:
                yield u, v


def _check_pair(g: Graph) -> CheckOutcome:
    cid = CheckId.HRA_PAIR
    if g.n < 2 or not is_connected(g):
        return _skip(cid, "needs a connected graph of order >= 2")
    limit = 2 * degree_profile(g).average_degree
    best = None
    for u, v in _distance_le2_pairs(g):
        s = g.degree(u) + g.degree(v)
        if best is None or s < best[0]:
            best = (s, (u, v))
    if best is not None and best[0] <= limit:
        return _holds(cid, {"pair": best[1], "degree_sum": best[0], "limit": limit})
    return _violated(cid, {"min_degree_sum": best and best[0], "limit": limit})


def _check_sgz(g: Graph, emb: EmbeddingInfo | None) -> CheckOutcome:
    cid = CheckId.SGZ_AD
    if g.n == 0 or not is_connected(g):
        return _skip(cid, "disconnected")
    k = girth(g)
    if k is INFINITY:
        return _skip(cid, "forest (infinite girth)")
    if emb is None or not emb.declared:
        return _skip(cid, "Euler characteristic not declared")
    ad = degree_profile(g).average_degree
    limit = _sgz_limit(k, emb.chi, g.n)
    w = {"average_degree": ad, "limit": limit, "girth": k, "chi": emb.chi}
    return _holds(cid, w) if ad <= limit else _violated(cid, w)


def _check_edge_sum(g: Graph, emb: EmbeddingInfo | None) -> CheckOutcome:
    cid = CheckId.EDGE_SUM_11
    if g.n == 0 or not is_connected(g):
        return _skip(cid, "disconnected")
    if emb is None or not emb.declared:
        return _skip(cid, "Euler characteristic not declared")
    if emb.chi < 0:
        return _skip(cid, "negative Euler characteristic")
    if g.min_degree < 5:
        return _skip(cid, "min degree < 5")
    if emb.chi == 0 and g.max_degree < 7:
        return _skip(cid, "torus/Klein bottle case needs max degree >= 7")
    for x, y in g.edges:
        if g.degree(x) + g.degree(y) <= 11:
            return _holds(cid, {"edge": (x, y), "degree_sum": g.degree(x) + g.degree(y)})
    return _violated(cid, {"min_edge_degree_sum": min(g.degree(x) + g.degree(y) for x, y in g.edges)})


def theorem_check(g: Graph, emb: EmbeddingInfo | None, check_id: CheckId | str) -> CheckOutcome:
    try:
        cid = CheckId(check_id) if not isinstance(check_id, CheckId) else check_id
    except ValueError:
        raise GraphError(f"unknown check {check_id!r}") from None
    if cid is CheckId.RV1_SANDWICH:
        return _check_sandwich(g)
    if cid is CheckId.VVV_I:
        return _check_plus_vertices(g)
    if cid is CheckId.VVV_II:
        return _check_removal_floor(g)
    if cid is CheckId.VC:
        return _check_v1_equivalence(g)
    if cid is CheckId.HRA_PAIR:
        return _check_pair(g)
    if cid is CheckId.SGZ_AD:
        return _check_sgz(g, emb)
    return _check_edge_sum(g, emb)
