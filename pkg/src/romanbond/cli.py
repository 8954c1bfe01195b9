"""Command-line entry point: ``romanbond <verb> [flags]``.

Exit codes: 0 all checks hold, 1 violation found, 2 usage or I/O error,
3 ``hunt`` exhausted the corpus without a match.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .campaign import (
    EXIT_NOT_FOUND,
    EXIT_OK,
    EXIT_USAGE,
    CampaignConfig,
    UsageError,
    dumps,
    hunt,
    iter_corpus,
    run_campaign,
)
from .graph import GraphError
from .graphio import GraphIOError, hat_construction, write_edge_list, write_graph6

log = logging.getLogger("romanbond")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with campaign settings; flags override it")
    p.add_argument("--input", help="corpus file")
    p.add_argument("--format", choices=("graph6", "edgelist"), default=None)
    p.add_argument("--gen", action="append", default=None, metavar="FAMILY:PARAMS",
                   help="named family, e.g. path:5, grid:3,4, icosahedron (repeatable)")
    p.add_argument("--exhaustive", metavar="N", help="all labelled graphs on N (or A-B) vertices, N <= 7")
    p.add_argument("--connected", action="store_true", default=None, help="restrict --exhaustive to connected graphs")
    p.add_argument("--cap", type=int, help="largest removal-set size tried by the bondage search")
    p.add_argument("--checks", help="comma-separated check ids, 'all' or 'none'")
    p.add_argument("--out", help="JSON-lines output path (default stdout)")
    p.add_argument("--csv", help="CSV summary path")
    p.add_argument("--figures", help="directory for PNG figures")
    p.add_argument("--strict", action="store_true", default=None, help="abort on the first malformed corpus line")
    p.add_argument("--workers", type=int, help="worker processes (overrides RB_WORKERS)")
    p.add_argument("--no-timings", dest="timings", action="store_false", default=None,
                   help="omit timings for byte-identical reports")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="romanbond", description="Roman domination and Roman bondage campaigns")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, text in [
        ("solve", "domination and Roman domination numbers"),
        ("bondage", "solve plus exact Roman bondage and vertex-impact classes"),
        ("bounds", "bondage plus every upper bound"),
        ("verify", "everything, including theorem checks"),
    ]:
        _shared(sub.add_parser(verb, help=text))
    h = sub.add_parser("hunt", help="stop at the first graph whose report matches a predicate")
    h.add_argument("predicate", help="e.g. 'bondage.value > Delta' or 'v_plus_size > 0 AND n = 5'")
    _shared(h)
    for verb, text in [("hat", "write the hat construction of each input graph"),
                       ("gen", "write the input corpus as graph6 or edge lists")]:
        p = sub.add_parser(verb, help=text)
        _shared(p)
        p.add_argument("--emit", choices=("graph6", "edgelist"), default="graph6")
    return parser


def _config(args) -> CampaignConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
    for key in ("input", "format", "gen", "exhaustive", "connected", "cap", "checks", "out",
                "csv", "figures", "strict", "workers", "timings"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    data.setdefault("pipeline", args.verb if args.verb in ("solve", "bondage", "bounds", "verify", "hunt") else "solve")
    return CampaignConfig.from_mapping(data)


def _write_graphs(cfg: CampaignConfig, args) -> int:
    out = open(cfg.out, "w", encoding="utf-8") if cfg.out else sys.stdout
    try:
        for rec in iter_corpus(cfg):
            g, emb = rec.graph, rec.embedding
            if args.verb == "hat":
                g, emb = hat_construction(g), None
            if args.emit == "graph6":
                out.write(write_graph6(g).decode("ascii") + "\n")
            else:
                out.write(write_edge_list(g, emb))
    finally:
        if cfg.out:
            out.close()
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s:%(name)s:%(message)s")
    try:
        cfg = _config(args)
        if args.verb in ("hat", "gen"):
            return _write_graphs(cfg, args)
        if args.verb == "hunt":
            match = hunt(cfg, args.predicate)
            if match is None:
                print("NONE")
                return EXIT_NOT_FOUND
            print(match["graph6"])
            print(dumps(match))
            if cfg.out:
                with open(cfg.out, "w", encoding="utf-8") as fh:
                    fh.write(dumps(match) + "\n")
            return EXIT_OK
        summary = run_campaign(cfg, stream=sys.stdout)
        log.info("%d records, %d with violations", summary.records, summary.violations)
        return summary.exit_code
    except (UsageError, GraphIOError, GraphError) as exc:
        print(f"romanbond: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
