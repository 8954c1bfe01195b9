"""Corpus campaigns: per-graph reports, JSON-lines/CSV output and hunting."""

from __future__ import annotations

import csv
import json
import logging
import os
import re
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction
from itertools import combinations
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator

from .bondage import BondageStatus, roman_bondage, removal_deltas, strategy_witnesses
from .bounds import BoundId, CheckId, CheckStatus, all_bounds, bound_holds, theorem_check
from .graph import INFINITY, EmbeddingInfo, Graph, GraphError, degree_profile, enumerate_small_graphs, girth
from .graphio import CorpusRecord, GraphIOError, generate, load_corpus, parse_family, write_graph6
from .rdf import gamma_exact, gamma_r_exact

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3

STAGES = ("solve", "bondage", "impact", "bounds", "checks")
PIPELINES = {
    "solve": ("solve",),
    "bondage": ("solve", "bondage", "impact"),
    "bounds": ("solve", "bondage", "impact", "bounds"),
    "verify": STAGES,
    "hunt": STAGES,
}


class UsageError(ValueError):
    pass


@dataclass
class CampaignConfig:
    input: str | None = None
    format: str = "graph6"
    gen: list[str] = field(default_factory=list)
    exhaustive: str | None = None
    connected: bool = False
    pipeline: str = "verify"
    cap: int | None = None
    checks: str | list[str] | None = None
    out: str | None = None
    csv: str | None = None
    figures: str | None = None
    strict: bool = False
    workers: int | None = None
    timings: bool = True
    predicate: str | None = None

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "CampaignConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.pipeline not in PIPELINES:
            raise UsageError(f"unknown pipeline {self.pipeline!r}")
        if self.format not in ("graph6", "edgelist", "edge_list"):
            raise UsageError(f"unknown format {self.format!r}")
        if not (self.input or self.gen or self.exhaustive):
            raise UsageError("no corpus source: give --input, --gen or --exhaustive")
        if self.cap is not None and self.cap < 1:
            raise UsageError("--cap must be positive")
        self.check_ids()
        if self.exhaustive:
            exhaustive_range(self.exhaustive)

    def check_ids(self) -> list[CheckId]:
        spec = self.checks
        if spec is None:
            return list(CheckId) if "checks" in PIPELINES[self.pipeline] else []
        names = spec if isinstance(spec, list) else [s for s in spec.split(",") if s.strip()]
        if [n.strip().lower() for n in names] == ["all"]:
            return list(CheckId)
        if [n.strip().lower() for n in names] == ["none"]:
            return []
        out = []
        for name in names:
            try:
                out.append(CheckId(name.strip().upper()))
            except ValueError:
                raise UsageError(f"unknown check {name!r}; choose from {[c.value for c in CheckId]}") from None
        return out

    def resolved_workers(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get("RB_WORKERS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise UsageError(f"RB_WORKERS must be an integer, got {env!r}") from None
        return 1


# -- corpus -------------------------------------------------------------------------

def exhaustive_range(spec: str | int) -> range:
    text = str(spec)
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:-|\.\.)\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"bad --exhaustive value {text!r} (use N or A-B)")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if not 1 <= lo <= hi <= 7:
        raise UsageError("--exhaustive sizes must lie in 1..7")
    return range(lo, hi + 1)


def _edge_mask(g: Graph) -> int:
    index = {p: i for i, p in enumerate(combinations(range(g.n), 2))}
    return sum(1 << index[e] for e in g.edges)


def iter_corpus(cfg: CampaignConfig) -> Iterator[CorpusRecord]:
    if cfg.input:
        try:
            yield from load_corpus(cfg.input, cfg.format, strict=cfg.strict)
        except OSError as exc:
            raise UsageError(f"cannot read corpus: {exc}") from None
    for spec in cfg.gen:
        name, params = parse_family(spec)
        try:
            g, emb = generate(name, *params)
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        yield CorpusRecord(g, spec, emb, 0)
    if cfg.exhaustive:
        for n in exhaustive_range(cfg.exhaustive):
            for g in enumerate_small_graphs(n, cfg.connected):
                yield CorpusRecord(g, f"n{n}:{_edge_mask(g)}", None, 0)


# -- reports ------------------------------------------------------------------------

def _rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return _rational(x)
    if x is INFINITY:
        return "inf"
    if hasattr(x, "value") and hasattr(type(x), "__members__"):
        return x.value
    if isinstance(x, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def build_report(rec: CorpusRecord, stages: Iterable[str], cap: int | None,
                 checks: list[CheckId], timings: bool = True) -> dict[str, Any]:
    g, emb = rec.graph, rec.embedding
    stages = set(stages)
    clock: dict[str, float] = {}

    def timed(name: str, fn: Callable[[], Any]) -> Any:
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            clock[name] = round((time.perf_counter() - t0) * 1000, 3)

    prof = degree_profile(g) if g.n else None
    k = girth(g)
    report: dict[str, Any] = {
        "id": rec.id,
        "n": g.n,
        "m": g.m,
        "min_degree": prof.min_degree if prof else None,
        "max_degree": prof.max_degree if prof else None,
        "ad": _rational(prof.average_degree) if prof else None,
        "girth": "inf" if k is INFINITY else k,
        "chi": emb.chi if emb is not None else None,
        "graph6": write_graph6(g).decode("ascii"),
        "gamma": None,
        "gamma_r": None,
        "gamma_r_witness": None,
        "bondage": None,
        "v_minus_size": None,
        "v_zero_size": None,
        "v_plus_size": None,
        "vertex_critical": None,
        "bounds": None,
        "checks": None,
        "violations": [],
    }
    if g.n == 0:
        return report
    if "solve" in stages:
        report["gamma"] = timed("gamma", lambda: gamma_exact(g).value)
        sol = timed("gamma_r", lambda: gamma_r_exact(g))
        report["gamma_r"] = sol.value
        report["gamma_r_witness"] = list(sol.witness.labels)
    bres = None
    if "bondage" in stages and g.m:
        bres = timed("bondage", lambda: roman_bondage(g, cap))
        entry = {
            "status": bres.status.value,
            "value": bres.value,
            "witness": [list(e) for e in bres.witness] if bres.witness else None,
            "witness_indices": [g.edges.index(e) for e in bres.witness] if bres.witness else None,
            "cap_used": bres.cap_used,
            "strategy_witness": None,
        }
        if bres.status is BondageStatus.LOWER_BOUND_ONLY:
            found = [s for s in timed("strategies", lambda: strategy_witnesses(g)) if s.verified]
            if found:
                best = min(found, key=lambda s: (len(s.edges), s.strategy))
                entry["strategy_witness"] = {"strategy": best.strategy, "size": len(best.edges),
                                             "edges": [list(e) for e in best.edges]}
        report["bondage"] = entry
    if "impact" in stages and g.n >= 2:
        deltas = timed("impact", lambda: removal_deltas(g))
        report["v_minus_size"] = sum(d < 0 for d in deltas)
        report["v_zero_size"] = sum(d == 0 for d in deltas)
        report["v_plus_size"] = sum(d > 0 for d in deltas)
        report["vertex_critical"] = report["v_minus_size"] == g.n
    if "bounds" in stages:
        evals = timed("bounds", lambda: all_bounds(g, emb, bres))
        out = {}
        for bid, ev in evals.items():
            sound = ev.sound()
            out[bid.value] = {
                "applicable": ev.applicable,
                "reason": ev.reason or None,
                "value": jsonable(ev.bound_value),
                "witness": jsonable(ev.witness),
                "sound": sound,
                "details": jsonable(ev.details) if ev.details else None,
            }
            if sound is False:
                report["violations"].append(f"bound {bid.value}: b_R={bres.value} > {jsonable(ev.bound_value)}")
            if (ev.applicable and bres is not None and bres.status is BondageStatus.LOWER_BOUND_ONLY
                    and not bound_holds(ev.bound_value, bres.value)):
                report["violations"].append(
                    f"bound {bid.value}: certified b_R >= {bres.value} > {jsonable(ev.bound_value)}")
            if bid is BoundId.CRITICAL_VERTEX and ev.applicable and not ev.details["within_max_degree"]:
                report["violations"].append("bound critical_vertex exceeds max degree")
            if bid is BoundId.GIRTH_EULER and ev.applicable and not ev.details["first_le_relaxed"]:
                report["violations"].append("girth_euler: first form exceeds relaxed form")
        report["bounds"] = out
    if checks:
        out = {}
        for cid in checks:
            res = timed(f"check_{cid.value}", lambda: theorem_check(g, emb, cid))
            out[cid.value] = {"status": res.status.value, "reason": res.reason or None,
                              "witness": jsonable(res.witness)}
            if res.status is CheckStatus.VIOLATED:
                report["violations"].append(f"check {cid.value} violated")
        report["checks"] = out
    if timings:
        report["timings_ms"] = clock
    return report


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(report, separators=(",", ":"))


CSV_COLUMNS = [
    "id", "n", "m", "min_degree", "max_degree", "ad", "girth", "chi", "gamma", "gamma_r",
    "bondage_status", "bondage_value", "v_minus_size", "v_zero_size", "v_plus_size",
    "bound_path", "bound_critical_vertex", "bound_avg_degree", "bound_girth_euler",
    "bound_surface15", "checks_violated", "violations",
]


def csv_row(report: dict[str, Any]) -> dict[str, Any]:
    row = {k: report.get(k) for k in CSV_COLUMNS if k in report}
    b = report.get("bondage") or {}
    row["bondage_status"] = b.get("status")
    row["bondage_value"] = b.get("value")
    for bid in BoundId:
        ev = (report.get("bounds") or {}).get(bid.value)
        row[f"bound_{bid.value}"] = ev["value"] if ev and ev["applicable"] else None
    checks = report.get("checks") or {}
    row["checks_violated"] = ";".join(k for k, v in checks.items() if v["status"] == "VIOLATED")
    row["violations"] = len(report["violations"])
    return {k: ("" if row.get(k) is None else row.get(k)) for k in CSV_COLUMNS}


# -- execution -------------------------------------------------------------------------

_WORKER_ARGS: tuple = ()


def _init_worker(args: tuple) -> None:
    global _WORKER_ARGS
    _WORKER_ARGS = args


def _work(rec: CorpusRecord) -> dict[str, Any]:
    return build_report(rec, *_WORKER_ARGS)


def iter_reports(cfg: CampaignConfig) -> Iterator[dict[str, Any]]:
    """Reports in corpus order; a process pool keeps ordering via ``imap``."""
    args = (PIPELINES[cfg.pipeline], cfg.cap, cfg.check_ids(), cfg.timings)
    records = iter_corpus(cfg)
    workers = cfg.resolved_workers()
    if workers == 1:
        for rec in records:
            yield build_report(rec, *args)
        return
    with Pool(workers, initializer=_init_worker, initargs=(args,)) as pool:
        yield from pool.imap(_work, records, chunksize=8)


@dataclass
class CampaignSummary:
    records: int = 0
    violations: int = 0
    exit_code: int = EXIT_OK


def run_campaign(cfg: CampaignConfig, stream=None) -> CampaignSummary:
    """Write one JSON line per graph (to ``cfg.out`` or ``stream``) plus optional CSV/figures."""
    cfg.validate()
    summary = CampaignSummary()
    out_fh = open(cfg.out, "w", encoding="utf-8") if cfg.out else stream
    csv_fh = open(cfg.csv, "w", newline="", encoding="utf-8") if cfg.csv else None
    writer = csv.DictWriter(csv_fh, CSV_COLUMNS) if csv_fh else None
    if writer:
        writer.writeheader()
    kept: list[dict[str, Any]] = []
    try:
        for report in iter_reports(cfg):
            summary.records += 1
            if report["violations"]:
                summary.violations += 1
                log.warning("%s: %s", report["id"], "; ".join(report["violations"]))
            if out_fh is not None:
                out_fh.write(dumps(report) + "\n")
            if writer:
                writer.writerow(csv_row(report))
            if cfg.figures:
                kept.append(_figure_fields(report))
    except (GraphIOError, OSError) as exc:
        raise UsageError(str(exc)) from None
    finally:
        if cfg.out and out_fh is not None:
            out_fh.close()
        if csv_fh:
            csv_fh.close()
    if cfg.figures:
        from .plotting import render_campaign_figures
        render_campaign_figures(kept, cfg.figures)
    summary.exit_code = EXIT_VIOLATION if summary.violations else EXIT_OK
    return summary


def _figure_fields(report: dict[str, Any]) -> dict[str, Any]:
    b = report.get("bondage") or {}
    bounds = report.get("bounds") or {}
    path = bounds.get("path") or {}
    return {
        "n": report["n"],
        "gamma": report["gamma"],
        "gamma_r": report["gamma_r"],
        "max_degree": report["max_degree"],
        "b_r": b.get("value") if b.get("status") == "EXACT" else None,
        "bound_path": path.get("value") if path.get("applicable") else None,
    }


# -- predicates -----------------------------------------------------------------------

ALIASES = {
    "Delta": "max_degree",
    "delta": "min_degree",
    "gamma_R": "gamma_r",
    "b_R": "bondage.value",
}
TOP_LEVEL = {
    "id", "n", "m", "min_degree", "max_degree", "ad", "girth", "chi", "gamma", "gamma_r",
    "bondage", "v_minus_size", "v_zero_size", "v_plus_size", "vertex_critical", "bounds",
    "checks", "violations",
}
_CLAUSE = re.compile(r"^\s*([A-Za-z_][\w.]*)\s*(<=|>=|==|!=|=|<|>)\s*([\w./+-]+)\s*$")
_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")
_MISSING = object()


def _is_field(token: str) -> bool:
    head = ALIASES.get(token, token).split(".")[0]
    return head in TOP_LEVEL


def _lookup(report: dict[str, Any], path: str) -> Any:
    cur: Any = report
    for part in ALIASES.get(path, path).split("."):
        if not isinstance(cur, dict) or part not in cur:
            return _MISSING
        cur = cur[part]
    return cur


def _coerce(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if x == "inf":
            return float("inf")
        if _NUMBER.match(x):
            return Fraction(x)
        return x
    return x


class Predicate:
    """Conjunction/disjunction of comparisons over report fields.

    ``"bondage.value > Delta AND girth = inf"``; ``AND`` binds tighter than
    ``OR``. A clause touching a null or missing field is false.
    """

    def __init__(self, text: str):
        self.text = text
        if not text or not text.strip():
            raise UsageError("empty predicate")
        self.groups = []
        for alt in re.split(r"\s+OR\s+", text.strip(), flags=re.IGNORECASE):
            group = []
            for clause in re.split(r"\s+AND\s+", alt, flags=re.IGNORECASE):
                m = _CLAUSE.match(clause)
                if not m:
                    raise UsageError(f"malformed predicate clause {clause!r}")
                lhs, op, rhs = m.groups()
                if not _is_field(lhs):
                    raise UsageError(f"unknown report field {lhs!r}")
                group.append((lhs, "==" if op == "=" else op, rhs))
            self.groups.append(group)

    def _operand(self, report, token):
        if _is_field(token):
            return _lookup(report, token)
        if token.lower() in ("true", "false"):
            return token.lower() == "true"
        if token.lower() in ("null", "none"):
            return None
        return token

    def _clause(self, report, lhs, op, rhs) -> bool:
        a = self._operand(report, lhs)
        b = self._operand(report, rhs)
        if a is _MISSING or b is _MISSING:
            return False
        if op in ("==", "!="):
            equal = _coerce(a) == _coerce(b)
            return equal if op == "==" else not equal
        if a is None or b is None:
            return False
        a, b = _coerce(a), _coerce(b)
        try:
            return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
        except TypeError:
            return False

    def __call__(self, report: dict[str, Any]) -> bool:
        return any(all(self._clause(report, *c) for c in group) for group in self.groups)


def hunt(cfg: CampaignConfig, predicate: str | Predicate) -> dict[str, Any] | None:
    """First report (in corpus order) satisfying the predicate, or None."""
    pred = predicate if isinstance(predicate, Predicate) else Predicate(predicate)
    cfg.validate()
    for report in iter_reports(cfg):
        if pred(report):
            return report
    return None
