"""graph6 / edge-list corpora, named graph families and the hat construction."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterator

from .graph import EmbeddingInfo, Graph, GraphError, build_graph

log = logging.getLogger(__name__)

__all__ = [
    "GraphIOError",
    "CorpusRecord",
    "parse_graph6",
    "write_graph6",
    "generate",
    "parse_family",
    "FAMILIES",
    "hat_construction",
    "arm_vertices",
    "load_corpus",
    "write_edge_list",
]


class GraphIOError(ValueError):
    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


@dataclass(frozen=True)
class CorpusRecord:
    graph: Graph
    id: str
    embedding: EmbeddingInfo | None = None
    source_line: int = 0


# -- graph6 -------------------------------------------------------------------

_HEADER = b">>graph6<<"


def _as_bytes(line: bytes | str) -> bytes:
    if isinstance(line, str):
        try:
            return line.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphIOError("non-ASCII character", offset=exc.start) from None
    return bytes(line)


def parse_graph6(line: bytes | str) -> Graph:
    data = _as_bytes(line).rstrip(b"\r\n")
    start = len(_HEADER) if data.startswith(_HEADER) else 0
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise GraphIOError(f"byte 0x{data[i]:02x} outside 63..126", offset=i)
    pos = start
    if pos >= len(data):
        raise GraphIOError("missing vertex count", offset=pos)
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        width = 6 if pos + 1 < len(data) and data[pos + 1] == 126 else 3
        pos += 1 if width == 3 else 2
        if pos + width > len(data):
            raise GraphIOError("truncated vertex count", offset=pos)
        n = 0
        for b in data[pos:pos + width]:
            n = (n << 6) | (b - 63)
        pos += width
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphIOError(f"expected {nbytes} adjacency bytes, found {len(body)}", offset=len(data))
    if len(body) > nbytes:
        raise GraphIOError("trailing bytes after adjacency data", offset=pos + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbytes and (body[-1] - 63) & ((1 << (nbytes * 6 - nbits)) - 1):
        raise GraphIOError("nonzero padding bits", offset=pos + nbytes - 1)
    return build_graph(n, edges)


def write_graph6(g: Graph) -> bytes:
    n = g.n
    if n < 63:
        out = bytearray([n + 63])
    elif n < 258048:
        out = bytearray([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    elif n < 1 << 36:
        out = bytearray([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    else:
        raise GraphIOError(f"graph6 cannot encode n={n}")
    acc = 0
    nb = 0
    for j in range(1, n):
        adj = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (i in adj)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return bytes(out)


# -- named families -------------------------------------------------------------

PLANE = EmbeddingInfo.orientable(0)
TORUS = EmbeddingInfo.orientable(1)
UNDECLARED = EmbeddingInfo()


def _path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def _star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _grid(a: int, b: int) -> Graph:
    edges = []
    for r in range(a):
        for c in range(b):
            v = r * b + c
            if c + 1 < b:
                edges.append((v, v + 1))
            if r + 1 < a:
                edges.append((v, v + b))
    return build_graph(a * b, edges)


def _toroidal_grid(a: int, b: int) -> Graph:
    if a < 3 or b < 3:
        raise GraphError("toroidal grid needs both sides >= 3")
    edges = []
    for r in range(a):
        for c in range(b):
            v = r * b + c
            edges.append((v, r * b + (c + 1) % b))
            edges.append((v, ((r + 1) % a) * b + c))
    return build_graph(a * b, edges)


def _icosahedron() -> Graph:
    edges = []
    upper = [1 + i for i in range(5)]
    lower = [6 + i for i in range(5)]
    for i in range(5):
        edges += [
            (0, upper[i]),
            (upper[i], upper[(i + 1) % 5]),
            (upper[i], lower[i]),
            (upper[i], lower[(i + 1) % 5]),
            (lower[i], lower[(i + 1) % 5]),
            (lower[i], 11),
        ]
    return build_graph(12, edges)


FAMILIES = {
    # name: (builder, parameter count)
    "path": (_path, 1),
    "cycle": (_cycle, 1),
    "complete": (_complete, 1),
    "star": (_star, 1),
    "grid": (_grid, 2),
    "toroidal_grid": (_toroidal_grid, 2),
    "icosahedron": (_icosahedron, 0),
}


def generate(family: str, *params: int) -> tuple[Graph, EmbeddingInfo]:
    """Build a named graph with its standard embedding metadata.

    ``star(k)`` is K_{1,k} with the centre at index 0; grids index cells
    row-major.
    """
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    builder, arity = FAMILIES[family]
    if len(params) != arity:
        raise GraphError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if any(not isinstance(p, int) or p < 1 for p in params):
        raise GraphError(f"{family} parameters must be positive integers: {params}")
    g = builder(*params)
    if family == "toroidal_grid":
        emb = TORUS
    elif family == "complete" and params[0] > 4:
        emb = UNDECLARED
    else:
        emb = PLANE
    return g, emb


def parse_family(spec: str) -> tuple[str, tuple[int, ...]]:
    """``"grid:3,4"`` -> ``("grid", (3, 4))``; ``"icosahedron"`` -> no params."""
    name, _, rest = spec.partition(":")
    try:
        params = tuple(int(p) for p in rest.replace("x", ",").split(",") if p.strip())
    except ValueError:
        raise GraphError(f"bad family parameters in {spec!r}") from None
    return name.strip(), params


# -- hat construction -------------------------------------------------------------

def arm_vertices(n: int, v: int) -> tuple[int, int, int, int, int]:
    """The P5 through original vertex v, in path order; v is its centre."""
    base = n + 4 * v
    return (base, base + 1, v, base + 2, base + 3)


def hat_construction(g: Graph) -> Graph:
    """Make every vertex the centre of its own P5.

    Each vertex v gains a pendant path on either side: ``a-b-v-c-d`` with
    ``a, b, c, d = n+4v .. n+4v+3``. The result has 5n vertices and
    ``m + 4n`` edges; original vertices keep their indices.
    """
    n = g.n
    if n < 2:
        raise GraphError("hat construction needs at least 2 vertices")
    edges = list(g.edges)
    for v in range(n):
        arm = arm_vertices(n, v)
        edges += [(arm[k], arm[k + 1]) for k in range(4)]
    return build_graph(5 * n, edges)


# -- corpora ----------------------------------------------------------------------

def _parse_meta(text: str, line: int) -> EmbeddingInfo | None:
    fields = {}
    for token in text.lstrip("#").split():
        key, sep, value = token.partition("=")
        if sep:
            fields[key.strip().lower()] = value.strip()
    if not fields.keys() & {"chi", "orientable", "genus"}:
        return None
    try:
        chi = int(fields["chi"]) if "chi" in fields else None
        genus = int(fields["genus"]) if "genus" in fields else None
        orient = fields.get("orientable")
        if orient is None:
            kind = "undeclared"
        elif orient.lower() in ("true", "yes", "1"):
            kind = "orientable"
        elif orient.lower() in ("false", "no", "0"):
            kind = "non_orientable"
        else:
            raise GraphIOError(f"bad orientable value {orient!r}", line=line)
        return EmbeddingInfo.make(kind, genus, chi)
    except (GraphError, ValueError) as exc:
        if isinstance(exc, GraphIOError):
            raise
        raise GraphIOError(f"bad embedding metadata: {exc}", line=line) from None


def _load_graph6(lines, strict: bool) -> Iterator[CorpusRecord]:
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            g = parse_graph6(raw.rstrip(b"\r\n"))
        except (GraphIOError, GraphError) as exc:
            if strict:
                raise GraphIOError(str(exc), line=lineno) from None
            log.warning("skipping line %d: %s", lineno, exc)
            continue
        yield CorpusRecord(g, f"L{lineno}", None, lineno)


def _load_edge_list(lines, strict: bool) -> Iterator[CorpusRecord]:
    pending_meta = None
    header = None  # (n, m, line, meta)
    edges: list[tuple[int, int]] = []
    skipping = False

    def fail(msg: str, lineno: int):
        if strict:
            raise GraphIOError(msg, line=lineno)
        log.warning("skipping graph at line %d: %s", lineno, msg)

    def finish():
        n, m, lineno, meta = header
        try:
            g = build_graph(n, edges)
        except GraphError as exc:
            fail(str(exc), lineno)
            return None
        return CorpusRecord(g, f"L{lineno}", meta, lineno)

    for lineno, raw in enumerate(lines, start=1):
        text = raw.decode("utf-8", errors="replace").strip()
        if not text:
            continue
        if text.startswith("#"):
            meta = _parse_meta(text, lineno)
            if meta is not None:
                if header is not None:
                    header = header[:3] + (meta,)
                else:
                    pending_meta = meta
            continue
        parts = text.split()
        try:
            a, b = (int(p) for p in parts)
        except ValueError:
            fail(f"expected two integers, got {text!r}", lineno)
            if header is None:
                continue
            # keep the slot so the next header is still found
            skipping = True
            a = b = -1
        if header is None:
            if a < 0 or b < 0:
                fail("negative header values", lineno)
                continue
            header = (a, b, lineno, pending_meta)
            pending_meta = None
            edges = []
            skipping = False
        else:
            edges.append((a, b))
        if header is not None and len(edges) == header[1]:
            rec = None if skipping else finish()
            header = None
            if rec is not None:
                yield rec
    if header is not None:
        fail(f"graph truncated: expected {header[1]} edges, found {len(edges)}", header[2])


def load_corpus(path: str | Path, fmt: str = "graph6", strict: bool = True) -> Iterator[CorpusRecord]:
    """Stream records from a graph6 or edge-list file in file order.

    In strict mode a malformed line raises :class:`GraphIOError`; otherwise
    the offending line (graph6) or graph (edge list) is skipped with a
    warning.
    """
    if fmt not in ("graph6", "edgelist", "edge_list"):
        raise GraphIOError(f"unknown corpus format {fmt!r}")
    with open(path, "rb") as fh:
        if fmt == "graph6":
            yield from _load_graph6(fh, strict)
        else:
            yield from _load_edge_list(fh, strict)


def write_edge_list(g: Graph, embedding: EmbeddingInfo | None = None) -> str:
    lines = []
    if embedding is not None and embedding.declared:
        meta = f"# chi={embedding.chi}"
        if embedding.surface_kind != "undeclared":
            meta += f" orientable={str(embedding.surface_kind == 'orientable').lower()} genus={embedding.genus}"
        lines.append(meta)
    lines.append(f"{g.n} {g.m}")
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
