"""Exact rigidity matrices of periodic body-and-bar frameworks.

Coordinates are normalised: every body frame sits at the origin with the
identity orientation, so a bar is fully described by its gain ``c``, its two
endpoints and the lattice matrix ``L``.  With ``h = L c + q_head - q_tail``
the row of the bar is

    <dp_head - dp_tail, h> + <w_head, q_head ^ h> - <w_tail, q_tail ^ h> + <dL c, h>

in the unknowns ``dp_v`` (translations), ``w_v`` (rotations, the upper
triangle of a skew matrix, row-major) and ``dL`` (lattice, row-major).
Body 1 is pinned by dropping its columns; this never changes the rank.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .gain_graph import EdgeOrbit, QuotientGraph
from .linalg import rank
from .matroid import Decomposition, validate_decomposition

Vec = tuple[Fraction, ...]


def rotation_pairs(d: int) -> list[tuple[int, int]]:
    return list(combinations(range(d), 2))


def plate_pairs(d: int, k: int) -> list[tuple[int, int]]:
    """Rotation coordinates kept for a k-plate spanning the first k axes."""
    return [(a, b) for a, b in rotation_pairs(d) if a < k]


def wedge(q: Sequence, h: Sequence) -> list:
    """Coordinates of q ^ h matching ``<A q, h>`` for a skew A stored by upper triangle."""
    return [h[a] * q[b] - h[b] * q[a] for a, b in rotation_pairs(len(q))]


@dataclass(frozen=True)
class Realization:
    lattice: tuple[Vec, ...]  # rows of the d x d matrix whose columns are the periods
    endpoints: tuple[tuple[Vec, Vec], ...]  # (q_tail, q_head) per edge

    @property
    def d(self) -> int:
        return len(self.lattice)

    def period(self, c: Sequence[int]) -> list[Fraction]:
        return [sum((row[j] * c[j] for j in range(len(c))), Fraction(0)) for row in self.lattice]


@dataclass(frozen=True)
class RigidityMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    columns: tuple[tuple, ...]  # ("p", v, a) | ("w", v, a, b) | ("L", a, b)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)


class RealizationError(ValueError):
    pass


def _columns(g: QuotientGraph, fix_first: bool):
    d = g.dimension
    verts = range(2 if fix_first else 1, g.n_vertices + 1)
    cols = [("p", v, a) for v in verts for a in range(d)]
    cols += [("w", v, a, b) for v in verts for a, b in plate_pairs(d, g.weight(v))]
    cols += [("L", a, b) for a in range(d) for b in range(d)]
    return cols


def bar_vector(r: Realization, e: EdgeOrbit, k: int) -> list[Fraction]:
    qt, qh = r.endpoints[k]
    return [x + y - z for x, y, z in zip(r.period(e.gain), qh, qt)]


def build_matrix(g: QuotientGraph, r: Realization, fix_first: bool = True) -> RigidityMatrix:
    d = g.dimension
    if r.d != d or len(r.endpoints) != g.m:
        raise RealizationError("realization does not match the graph")
    if rank(r.lattice) < d:
        raise RealizationError("lattice matrix is singular")
    cols = _columns(g, fix_first)
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for k, e in enumerate(g.edges):
        qt, qh = r.endpoints[k]
        for v, q in ((e.tail, qt), (e.head, qh)):
            if any(q[a] for a in range(g.weight(v), d)):
                raise RealizationError(f"edge {k}: endpoint leaves the plate of vertex {v}")
        h = bar_vector(r, e, k)
        if not any(h):
            raise RealizationError(f"edge {k}: zero-length bar")
        row = [Fraction(0)] * len(cols)
        for sign, v, q in ((1, e.head, qh), (-1, e.tail, qt)):
            for a in range(d):
                i = index.get(("p", v, a))
                if i is not None:
                    row[i] += sign * h[a]
            wq = wedge(q, h)
            for t, (a, b) in enumerate(rotation_pairs(d)):
                i = index.get(("w", v, a, b))
                if i is not None:
                    row[i] += sign * wq[t]
        for a in range(d):
            for b in range(d):
                row[index[("L", a, b)]] = h[a] * e.gain[b]
        rows.append(tuple(row))
    return RigidityMatrix(tuple(rows), tuple(cols))


def exact_rank(M) -> int:
    rows = M.rows if isinstance(M, RigidityMatrix) else M
    return rank(rows)


def _rand_vec(rng, d, k):
    return tuple(Fraction(rng.randint(-9, 9), 4) if a < k else Fraction(0) for a in range(d))


def random_realization(g: QuotientGraph, rng: random.Random) -> Realization:
    """Lattice I + U{-3..3}/7, missing endpoints U{-9..9}/4 restricted to each plate."""
    d = g.dimension
    while True:
        lattice = tuple(tuple(Fraction(int(a == b)) + Fraction(rng.randint(-3, 3), 7)
                              for b in range(d)) for a in range(d))
        if rank(lattice) == d:
            break
    r0 = Realization(lattice, ())
    ends = []
    for k, e in enumerate(g.edges):
        kt, kh = g.weight(e.tail), g.weight(e.head)
        given = e.q_tail is not None and e.q_head is not None
        for _ in range(100):
            qt = e.q_tail if e.q_tail is not None else _rand_vec(rng, d, kt)
            qh = e.q_head if e.q_head is not None else _rand_vec(rng, d, kh)
            h = [x + y - z for x, y, z in zip(r0.period(e.gain), qh, qt)]
            if any(h) or given:
                break
        ends.append((qt, qh))
    return Realization(lattice, tuple(ends))


def generic_rank(g: QuotientGraph, trials: int = 3, seed: int = 0) -> int:
    """Best exact rank over ``trials`` random realizations (gains as given)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if g.m == 0:
        return 0
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        M = build_matrix(g, random_realization(g, rng))
        best = max(best, exact_rank(M))
        if best == min(M.shape):
            break
    return best


def attach_endpoints(g: QuotientGraph, r: Realization) -> QuotientGraph:
    """Copy of g whose edges carry the realization's endpoints."""
    return g.with_edges(replace(e, q_tail=qt, q_head=qh) for e, (qt, qh) in zip(g.edges, r.endpoints))


def realization_from_graph(g: QuotientGraph, lattice=None) -> Realization:
    d = g.dimension
    if lattice is None:
        lattice = [[int(a == b) for b in range(d)] for a in range(d)]
    lat = tuple(tuple(Fraction(x) for x in row) for row in lattice)
    ends = []
    for k, e in enumerate(g.edges):
        if e.q_tail is None or e.q_head is None:
            raise RealizationError(f"edge {k} has no endpoints")
        ends.append((e.q_tail, e.q_head))
    return Realization(lat, tuple(ends))


def _unit(d, i, scale=1):
    return tuple(scale if a == i else 0 for a in range(d))


def archetype_realization(g: QuotientGraph, dec: Decomposition, N: Optional[int] = None):
    """Explicit full-rank placement built from a decomposition certificate.

    Lattice = identity.  Edges of tree i get gain e_i and endpoints at the
    origins.  Edges of pseudo-forest (i, j), oriented into their unique
    head, get gain e_j and head endpoint e_i.  The spare edges get gains
    N(e_i + e_j) for i <= j.  Returns the regained graph and its realization.
    """
    d, n = g.dimension, g.n_vertices
    if N is None:
        N = n + 1
    if N <= n:
        raise ValueError(f"the scale N must exceed n = {n}, got {N}")
    try:
        validate_decomposition(g, dec)
    except ValueError as exc:
        raise ValueError(f"invalid decomposition: {exc}") from exc
    zero = (Fraction(0),) * d
    edges = list(g.edges)
    for i, T in enumerate(dec.trees):
        for k in T:
            edges[k] = replace(edges[k], gain=_unit(d, i), q_tail=zero, q_head=zero)
    for (i, j), P in zip(rotation_pairs(d), dec.pseudoforests):
        for k in P:
            e = edges[k]
            if e.head != dec.heads[k]:
                e = e.reversed()
            edges[k] = replace(e, gain=_unit(d, j), q_tail=zero,
                               q_head=tuple(Fraction(x) for x in _unit(d, i)))
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    for (i, j), k in zip(pairs, dec.residual):
        gain = tuple(N * (int(a == i) + int(a == j)) for a in range(d))
        edges[k] = replace(edges[k], gain=gain, q_tail=zero, q_head=zero)
    out = g.with_edges(edges)
    return out, realization_from_graph(out)


def break_loop(g: QuotientGraph, loop_edge: int, target_vertex: int, k: int) -> QuotientGraph:
    """Replace a loop at j by the bar ``target -> j`` with gain k c and head endpoint k q.

    The loop row only sees ``q = q_head - q_tail``; the new bar starts at
    the origin of the target body.
    """
    e = g.edges[loop_edge]
    if not e.is_loop:
        raise ValueError(f"edge {loop_edge} is not a loop")
    if target_vertex == e.head:
        raise ValueError("target vertex must differ from the loop vertex")
    if not 1 <= target_vertex <= g.n_vertices:
        raise ValueError(f"target vertex {target_vertex} out of range")
    if k < 1:
        raise ValueError("k must be positive")
    if e.q_head is None or e.q_tail is None:
        raise ValueError("loop has no endpoints; attach a realization first")
    d = g.dimension
    q = [a - b for a, b in zip(e.q_head, e.q_tail)]
    new = replace(e, tail=target_vertex, gain=tuple(k * c for c in e.gain),
                  q_tail=(Fraction(0),) * d, q_head=tuple(k * x for x in q))
    edges = list(g.edges)
    edges[loop_edge] = new
    return g.with_edges(edges)


def loop_breaking_scale(g: QuotientGraph, r: Realization, loop_edge: int, target_vertex: int,
                        cap: int = 1 << 20) -> Optional[int]:
    """Smallest power of two k <= cap whose loop breaking keeps the exact rank."""
    before = exact_rank(build_matrix(g, r))
    base = attach_endpoints(g, r)
    k = 1
    while k <= cap:
        broken = break_loop(base, loop_edge, target_vertex, k)
        if exact_rank(build_matrix(broken, realization_from_graph(broken, r.lattice))) == before:
            return k
        k *= 2
    return None


# -- loop contraction (converse of loop breaking) ------------------------------


def plus_sparse(n: int, ends, a: int, b: int) -> bool:
    """Every edge subset F has ``|F| <= a n_F + b`` (b >= 0)."""
    from .pebble import SparsityParams, max_sparse_subgraph
    s = len(max_sparse_subgraph((n, ends), SparsityParams(a, 0)).kept)
    return len(ends) - s <= b


def contract_to_loops(g: QuotientGraph, a: int, b: int):
    """Turn every non-loop edge into a loop while keeping ``a n + b`` sparsity.

    Returns the all-loop graph and the record of breakings that rebuild g:
    ``(edge index, loop vertex, other endpoint)`` in the order performed.
    """
    if b < 0:
        raise ValueError("b must be non-negative")
    ends = list(g.ends())
    if not plus_sparse(g.n_vertices, ends, a, b):
        raise ValueError("input is not sparse for the requested count")
    record = []
    edges = list(g.edges)
    for k, (u, v) in enumerate(list(ends)):
        if u == v:
            continue
        for x, y in ((u, v), (v, u)):
            ends[k] = (x, x)
            if plus_sparse(g.n_vertices, ends, a, b):
                record.append((k, x, y))
                edges[k] = replace(edges[k], tail=x, head=x, q_tail=None, q_head=None)
                break
        else:
            raise AssertionError("no sparsity-preserving loop exists")  # excluded by the exchange argument
    return g.with_edges(edges), record


def kernel_dimension(M: RigidityMatrix) -> int:
    return len(M.columns) - exact_rank(M)


def trivial_motions(d: int) -> int:
    return comb(d + 1, 2)
