"""Quotient multigraphs with integer gains (the finite view of a periodic graph).

A periodic body-and-bar graph is handled entirely through its quotient: a
finite multigraph on bodies ``1..n`` where every oriented edge carries an
integer gain vector ``c``.  The edge ``tail -> head`` with gain ``c`` joins
the representative of ``tail`` to the copy of ``head`` translated by the
period ``Lambda @ c``.  Loops and parallel edges are allowed.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .linalg import rank


class GraphError(ValueError):
    """Raised for structurally invalid quotient graphs."""


def _as_fractions(vec) -> Optional[tuple[Fraction, ...]]:
    if vec is None:
        return None
    return tuple(Fraction(x) for x in vec)


@dataclass(frozen=True)
class EdgeOrbit:
    """One edge orbit, oriented ``tail -> head``.

    ``q_tail`` and ``q_head`` are the bar endpoints in the frames of the two
    bodies; both are optional and rational.
    """

    tail: int
    head: int
    gain: tuple[int, ...]
    q_tail: Optional[tuple[Fraction, ...]] = None
    q_head: Optional[tuple[Fraction, ...]] = None
    id: Optional[str] = None

    def __post_init__(self):
        gain = tuple(self.gain)
        for x in gain:
            if isinstance(x, bool) or not isinstance(x, int):
                raise GraphError(f"gain entries must be integers, got {x!r}")
        object.__setattr__(self, "gain", gain)
        object.__setattr__(self, "q_tail", _as_fractions(self.q_tail))
        object.__setattr__(self, "q_head", _as_fractions(self.q_head))

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def reversed(self) -> "EdgeOrbit":
        """Same bar seen from the other end: swap endpoints, negate the gain."""
        return replace(self, tail=self.head, head=self.tail,
                       gain=tuple(-x for x in self.gain),
                       q_tail=self.q_head, q_head=self.q_tail)


@dataclass(frozen=True)
class QuotientGraph:
    dimension: int
    n_vertices: int
    edges: tuple[EdgeOrbit, ...]
    weights: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        d, n = self.dimension, self.n_vertices
        if d < 1:
            raise GraphError(f"dimension must be >= 1, got {d}")
        if n < 1:
            raise GraphError(f"need at least one vertex, got {n}")
        object.__setattr__(self, "edges", tuple(self.edges))
        for k, e in enumerate(self.edges):
            if not (1 <= e.tail <= n and 1 <= e.head <= n):
                raise GraphError(f"edge {k}: vertex index out of range 1..{n}")
            if len(e.gain) != d:
                raise GraphError(f"edge {k}: gain length {len(e.gain)} != d={d}")
            for name in ("q_tail", "q_head"):
                q = getattr(e, name)
                if q is not None and len(q) != d:
                    raise GraphError(f"edge {k}: {name} length {len(q)} != d={d}")
            if (e.is_loop and not any(e.gain) and e.q_tail is not None
                    and e.q_tail == e.q_head):
                raise GraphError(f"edge {k}: zero-length bar (loop with zero gain)")
        if self.weights is not None:
            w = tuple(int(x) for x in self.weights)
            if len(w) != n:
                raise GraphError(f"expected {n} weights, got {len(w)}")
            for v, k in enumerate(w, start=1):
                if not 0 <= k <= d:
                    raise GraphError(f"weight of vertex {v} is {k}, outside 0..{d}")
            object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_mixed(self) -> bool:
        """True when some vertex is a plate of dimension below d."""
        return self.weights is not None and any(k != self.dimension for k in self.weights)

    def weight(self, v: int) -> int:
        return self.dimension if self.weights is None else self.weights[v - 1]

    def ends(self) -> list[tuple[int, int]]:
        return [(e.tail, e.head) for e in self.edges]

    def with_edges(self, edges: Iterable[EdgeOrbit]) -> "QuotientGraph":
        return replace(self, edges=tuple(edges))

    def subgraph(self, F: Iterable[int]) -> "QuotientGraph":
        """Edge-induced view on the same vertex set (isolated vertices kept)."""
        return self.with_edges(self.edges[k] for k in sorted(set(F)))


def new_quotient_graph(d: int, n: int, edges: Sequence, weights=None) -> QuotientGraph:
    """Validating constructor.

    ``edges`` may hold :class:`EdgeOrbit` objects or plain tuples
    ``(tail, head, gain[, q_tail, q_head])``.
    """
    built = []
    for e in edges:
        if not isinstance(e, EdgeOrbit):
            e = EdgeOrbit(*e)
        built.append(e)
    return QuotientGraph(d, n, tuple(built), None if weights is None else tuple(weights))


def plate_rotations(d: int, k: int) -> int:
    """Rotational freedom of a k-plate relative to the lattice: d*k - C(k+1, 2)."""
    return d * k - comb(k + 1, 2)


def counting_target(g: QuotientGraph) -> int:
    """Edge count of a minimally rigid quotient graph."""
    d, n = g.dimension, g.n_vertices
    if g.weights is None:
        return (n - 1) * comb(d + 1, 2) + d * d
    return d * (n - 1) + sum(plate_rotations(d, k) for k in g.weights) + comb(d + 1, 2)


def multiplicity_profile(g: QuotientGraph) -> dict[tuple[int, ...], int]:
    """Parallel-edge counts keyed by ``(u, v)`` with ``u < v``, or ``(v,)`` for loops."""
    prof: Counter = Counter()
    for e in g.edges:
        key = (e.tail,) if e.is_loop else tuple(sorted((e.tail, e.head)))
        prof[key] += 1
    return dict(prof)


def _components(g: QuotientGraph, F: Sequence[int]) -> list[list[int]]:
    """Group edge indices of F into connected components (first-seen order)."""
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for k in F:
        e = g.edges[k]
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for k in F:
        groups.setdefault(find(g.edges[k].tail), []).append(k)
    return list(groups.values())


def component_count(g: QuotientGraph, F: Sequence[int]) -> int:
    return len(_components(g, F))


def incident_vertices(g: QuotientGraph, F: Iterable[int]) -> set[int]:
    out = set()
    for k in F:
        out.add(g.edges[k].tail)
        out.add(g.edges[k].head)
    return out


def cycle_gains(g: QuotientGraph, component: Sequence[int]) -> list[tuple[int, ...]]:
    """Net gains around the fundamental cycles of one connected edge set."""
    d = g.dimension
    adj: dict[int, list[tuple[int, int]]] = {}
    for k in component:
        e = g.edges[k]
        adj.setdefault(e.tail, []).append(k)
        if not e.is_loop:
            adj.setdefault(e.head, []).append(k)
    start = g.edges[component[0]].tail
    pot = {start: (0,) * d}
    tree: set[int] = set()
    stack = [start]
    while stack:
        v = stack.pop()
        for k in adj[v]:
            e = g.edges[k]
            if e.is_loop:
                continue
            if e.tail == v and e.head not in pot:
                pot[e.head] = tuple(p + c for p, c in zip(pot[v], e.gain))
            elif e.head == v and e.tail not in pot:
                pot[e.tail] = tuple(p - c for p, c in zip(pot[v], e.gain))
            else:
                continue
            tree.add(k)
            stack.append(e.head if e.tail == v else e.tail)
    out = []
    for k in component:
        if k in tree:
            continue
        e = g.edges[k]
        out.append(tuple(pt + c - ph for pt, c, ph in zip(pot[e.tail], e.gain, pot[e.head])))
    return out


def cycle_gain_ranks(g: QuotientGraph, F: Iterable[int]) -> tuple[int, list[int]]:
    """Rank of the cycle-gain lattice of F overall and per connected component."""
    F = sorted(set(F))
    if not F:
        return 0, []
    per, everything = [], []
    for comp in _components(g, F):
        gains = cycle_gains(g, comp)
        per.append(rank(gains))
        everything.extend(gains)
    return rank(everything), per


def random_gains(g: QuotientGraph, box: int, seed: int) -> QuotientGraph:
    """Copy of g with every gain redrawn uniformly from ``{-box..box}^d``.

    Loops never receive the zero gain, which would make them zero rows.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    rng = random.Random(seed)
    d = g.dimension
    new = []
    for e in g.edges:
        while True:
            c = tuple(rng.randint(-box, box) for _ in range(d))
            if not (e.is_loop and not any(c)):
                break
        new.append(replace(e, gain=c))
    return g.with_edges(new)


@dataclass(frozen=True)
class Subgraph:
    """Counting data of an edge subset: |F|, n_F and omega_F."""

    size: int
    n_F: int
    omega_F: int
    vertices: frozenset = field(default_factory=frozenset)


def subgraph_counts(g: QuotientGraph, F: Iterable[int]) -> Subgraph:
    F = sorted(set(F))
    verts = incident_vertices(g, F)
    return Subgraph(len(F), len(verts), component_count(g, F), frozenset(verts))
