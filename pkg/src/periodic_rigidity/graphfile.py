"""Plain-text graph files.

One record per line, ``#`` starts a comment::

    dimension 2
    vertices 2
    weights 2 2                      (optional)
    lattice 1 0                      (optional, d rows)
    lattice 0 1
    edge 1 2 gain 1 0 q_tail 0 0 q_head 1/2 0 id a

Rationals are written ``p/q`` (or ``p`` when integral) so that writing a
parsed file reproduces it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .gain_graph import EdgeOrbit, GraphError, QuotientGraph


class GraphFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line, self.field = line, field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass
class GraphFile:
    graph: QuotientGraph
    lattice: Optional[tuple[tuple[Fraction, ...], ...]] = None
    meta: dict = field(default_factory=dict)  # "key value" lines kept verbatim


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(tok: str, line: int, name: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFileError(f"expected an integer, got {tok!r}", line, name) from None


def _rational(tok: str, line: int, name: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise GraphFileError(f"expected a rational p/q, got {tok!r}", line, name) from None


_EDGE_FIELDS = ("gain", "q_tail", "q_head", "id")


def _parse_edge(toks: list[str], d: int, ln: int, k: int) -> EdgeOrbit:
    where = f"edge[{k}]"
    if len(toks) < 2:
        raise GraphFileError("edge needs tail and head", ln, where)
    tail = _int(toks[0], ln, f"{where}.tail")
    head = _int(toks[1], ln, f"{where}.head")
    vals: dict[str, list[str]] = {}
    cur = None
    for tok in toks[2:]:
        if tok in _EDGE_FIELDS:
            if tok in vals:
                raise GraphFileError("repeated field", ln, f"{where}.{tok}")
            cur = tok
            vals[cur] = []
        elif cur is None:
            raise GraphFileError(f"unexpected token {tok!r}", ln, where)
        else:
            vals[cur].append(tok)
    if "gain" not in vals:
        raise GraphFileError("missing gain", ln, f"{where}.gain")
    for name in ("gain", "q_tail", "q_head"):
        if name in vals and len(vals[name]) != d:
            raise GraphFileError(f"expected {d} entries, got {len(vals[name])}", ln, f"{where}.{name}")
    if ("q_tail" in vals) != ("q_head" in vals):
        raise GraphFileError("q_tail and q_head must be given together", ln, where)
    gain = tuple(_int(t, ln, f"{where}.gain") for t in vals["gain"])
    qt = qh = None
    if "q_tail" in vals:
        qt = tuple(_rational(t, ln, f"{where}.q_tail") for t in vals["q_tail"])
        qh = tuple(_rational(t, ln, f"{where}.q_head") for t in vals["q_head"])
    ident = None
    if "id" in vals:
        if len(vals["id"]) != 1:
            raise GraphFileError("id takes one token", ln, f"{where}.id")
        ident = vals["id"][0]
    return EdgeOrbit(tail, head, gain, qt, qh, ident)


def parse_graph_file(text: str) -> GraphFile:
    d = n = None
    weights = None
    lattice: list[tuple[Fraction, ...]] = []
    edges: list[tuple[int, list[str]]] = []
    meta: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        key, toks = body[0], body[1:]
        if key in ("dimension", "vertices"):
            if len(toks) != 1:
                raise GraphFileError("expected one integer", ln, key)
            val = _int(toks[0], ln, key)
            if key == "dimension":
                d = val
            else:
                n = val
        elif key == "weights":
            weights = tuple(_int(t, ln, "weights") for t in toks)
        elif key == "lattice":
            lattice.append(tuple(_rational(t, ln, f"lattice[{len(lattice)}]") for t in toks))
        elif key == "edge":
            edges.append((ln, toks))
        elif key == "meta":
            if not toks:
                raise GraphFileError("meta needs a key", ln, "meta")
            meta[toks[0]] = " ".join(toks[1:])
        else:
            raise GraphFileError(f"unknown record {key!r}", ln)
    if d is None:
        raise GraphFileError("missing 'dimension' record", field="dimension")
    if n is None:
        raise GraphFileError("missing 'vertices' record", field="vertices")
    if lattice and (len(lattice) != d or any(len(r) != d for r in lattice)):
        raise GraphFileError(f"lattice must be {d} rows of {d} entries", field="lattice")
    built = [_parse_edge(toks, d, ln, k) for k, (ln, toks) in enumerate(edges)]
    try:
        g = QuotientGraph(d, n, tuple(built), weights)
    except GraphError as exc:
        raise GraphFileError(str(exc)) from exc
    return GraphFile(g, tuple(lattice) or None, meta)


def format_graph_file(gf, lattice=None, meta=None) -> str:
    """Serialize a GraphFile (or a bare QuotientGraph plus extras)."""
    if isinstance(gf, GraphFile):
        g, lattice, meta = gf.graph, gf.lattice, gf.meta
    else:
        g = gf
    lines = [f"dimension {g.dimension}", f"vertices {g.n_vertices}"]
    if g.weights is not None:
        lines.append("weights " + " ".join(map(str, g.weights)))
    for row in lattice or ():
        lines.append("lattice " + " ".join(fmt_rational(x) for x in row))
    for key, val in (meta or {}).items():
        lines.append(f"meta {key} {val}".rstrip())
    for e in g.edges:
        parts = [f"edge {e.tail} {e.head} gain", *map(str, e.gain)]
        if e.q_tail is not None:
            parts += ["q_tail", *map(fmt_rational, e.q_tail), "q_head", *map(fmt_rational, e.q_head)]
        if e.id is not None:
            parts += ["id", e.id]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load_graph_file(path) -> GraphFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFileError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph_file(text)


def load_graph(path) -> QuotientGraph:
    return load_graph_file(path).graph


def save_graph(path, gf, lattice=None, meta=None) -> None:
    Path(path).write_text(format_graph_file(gf, lattice, meta))
