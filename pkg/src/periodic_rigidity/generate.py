"""Seeded instance generators: random, guaranteed-rigid and guaranteed-flexible."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Optional

from .gain_graph import EdgeOrbit, QuotientGraph, counting_target

KINDS = ("random", "decomposable", "violating")


class InfeasibleParameters(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    d: int
    n: int
    m: Optional[int] = None  # defaults to the counting target
    kind: str = "random"
    seed: int = 0
    box: int = 3  # gains drawn from [-box, box]
    loops: bool = True


@dataclass(frozen=True)
class Instance:
    graph: QuotientGraph
    planted: tuple[int, ...] = ()  # edges of the planted over-count, for "violating"


def _gain(rng, d, box, loop):
    while True:
        c = tuple(rng.randint(-box, box) for _ in range(d))
        if not loop or any(c):
            return c


def _edge(rng, d, box, u, v):
    return EdgeOrbit(u, v, _gain(rng, d, box, u == v))


def _pair(rng, verts, loops):
    if len(verts) == 1 or (loops and rng.random() < 1 / (len(verts) + 1)):
        v = rng.choice(verts)
        return v, v
    u, v = rng.sample(verts, 2)
    return u, v


def _finish(rng, d, n, ends, box, planted_ends=()):
    """Shuffle edge order, draw gains, and track planted edges through the shuffle."""
    tagged = [(u, v, False) for u, v in ends] + [(u, v, True) for u, v in planted_ends]
    rng.shuffle(tagged)
    edges = [_edge(rng, d, box, u, v) for u, v, _ in tagged]
    planted = tuple(k for k, t in enumerate(tagged) if t[2])
    return Instance(QuotientGraph(d, n, tuple(edges)), planted)


def random_instance(d, n, m, seed, box=3, loops=True) -> Instance:
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    return _finish(rng, d, n, [_pair(rng, verts, loops) for _ in range(m)], box)


def _random_tree(rng, verts):
    order = list(verts)
    rng.shuffle(order)
    out = []
    for i in range(1, len(order)):
        u, v = order[i], rng.choice(order[:i])
        out.append((u, v) if rng.random() < 0.5 else (v, u))
    return out


def _random_pseudoforest(rng, verts):
    """In-degree exactly one at every vertex; tails arbitrary (loops allowed)."""
    return [(rng.choice(verts), v) for v in verts]


def decomposable_instance(d, n, seed, box=3) -> Instance:
    """d spanning trees, C(d, 2) spanning pseudo-forests and C(d+1, 2) extra edges."""
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    ends = []
    for _ in range(d):
        ends += _random_tree(rng, verts)
    for _ in range(comb(d, 2)):
        ends += _random_pseudoforest(rng, verts)
    ends += [_pair(rng, verts, True) for _ in range(comb(d + 1, 2))]
    return _finish(rng, d, n, ends, box)


def violating_instance(d, n, seed, box=3) -> Instance:
    """Counting-target instance with a planted vertex set K carrying too many edges.

    K spans ``C(d+1,2)(|K|-1) + d^2 + 1`` edges, one more than any body-and-bar
    framework on |K| bodies can use independently.  The remaining edges are
    placed anywhere.
    """
    if n < 2:
        raise InfeasibleParameters("a planted over-count needs n >= 2")
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    k = rng.randint(1, n - 1)
    K = sorted(rng.sample(verts, k))
    size = comb(d + 1, 2) * (k - 1) + d * d + 1
    planted = _random_tree(rng, K)
    while len(planted) < size:
        planted.append(_pair(rng, K, True))
    rest = [_pair(rng, verts, True) for _ in range(counting_target(QuotientGraph(d, n, ())) - size)]
    return _finish(rng, d, n, rest, box, planted)


def generate(cfg: GenConfig) -> Instance:
    if cfg.kind not in KINDS:
        raise InfeasibleParameters(f"kind must be one of {KINDS}, got {cfg.kind!r}")
    if cfg.d < 1 or cfg.n < 1:
        raise InfeasibleParameters("need d >= 1 and n >= 1")
    target = counting_target(QuotientGraph(cfg.d, cfg.n, ()))
    if cfg.kind == "random":
        m = target if cfg.m is None else cfg.m
        if m < 0:
            raise InfeasibleParameters("m must be non-negative")
        return random_instance(cfg.d, cfg.n, m, cfg.seed, cfg.box, cfg.loops)
    if cfg.m is not None and cfg.m != target:
        raise InfeasibleParameters(f"kind {cfg.kind} produces m = {target} edges, not {cfg.m}")
    if cfg.kind == "decomposable":
        return decomposable_instance(cfg.d, cfg.n, cfg.seed, cfg.box)
    return violating_instance(cfg.d, cfg.n, cfg.seed, cfg.box)
