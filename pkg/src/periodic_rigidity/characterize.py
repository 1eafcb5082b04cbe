"""Verdicts for quotient graphs: minimal rigidity, rank/DOF and count checks.

Every verdict is computed combinatorially.  Where two independent routes
exist (pebble game and matroid partition) both are run and must agree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .gain_graph import (QuotientGraph, counting_target, cycle_gain_ranks, incident_vertices,
                         component_count)
from .linalg import rank
from .matroid import (Decomposition, Violation, decompose_theorem2, edge_sparsity_bound,
                      mixed_bound, mixed_check, n1_union_check)
from .pebble import SparsityParams, final_blocks, max_sparse_subgraph
from .rigmat import generic_rank

SCHEMA_VERSION = 1

MINIMALLY_RIGID = "minimally_rigid"
FLEXIBLE = "flexible"
OVERBRACED = "overbraced"
NOT_LIFTABLE = "not_liftable"


class RouteDisagreement(AssertionError):
    """Two independent decision procedures returned different answers."""


@dataclass
class AnalysisReport:
    verdict: str
    combinatorial_rank: int
    dof: int
    redundancy: int
    m: int
    target: int
    numeric_rank: Optional[int] = None
    certificate: Optional[Decomposition] = None
    violation: Optional[Violation] = None
    extra: dict = field(default_factory=dict)

    @property
    def is_minimally_rigid(self) -> bool:
        return self.verdict == MINIMALLY_RIGID

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "verdict": self.verdict,
            "combinatorial_rank": self.combinatorial_rank,
            "numeric_rank": self.numeric_rank,
            "dof": self.dof,
            "redundancy": self.redundancy,
            "m": self.m,
            "target": self.target,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "violation": None if self.violation is None else self.violation.to_json(),
            "extra": self.extra,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AnalysisReport":
        if obj.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
        cert, viol = obj.get("certificate"), obj.get("violation")
        return cls(obj["verdict"], obj["combinatorial_rank"], obj["dof"], obj["redundancy"],
                   obj["m"], obj["target"], obj.get("numeric_rank"),
                   None if cert is None else Decomposition.from_json(cert),
                   None if viol is None else Violation.from_json(viol),
                   dict(obj.get("extra", {})))

    def summary(self) -> str:
        text = self.verdict
        if self.dof:
            text += f", dof={self.dof}"
        if self.redundancy:
            text += f", redundancy={self.redundancy}"
        return text


def _verdict(dof: int, redundancy: int) -> str:
    if dof > 0:
        return FLEXIBLE
    if redundancy > 0:
        return OVERBRACED
    return MINIMALLY_RIGID


def body_params(d: int) -> SparsityParams:
    return SparsityParams(comb(d + 1, 2), d)


def _require_bodies(g: QuotientGraph):
    if g.is_mixed:
        raise ValueError("this check needs every vertex to be a body (k_v = d)")


def _pebble_violation(g: QuotientGraph, res) -> Violation:
    blocks = final_blocks(g, body_params(g.dimension), res)
    F = sorted(k for k, (u, v) in enumerate(g.ends()) if any(u in B and v in B for B in blocks))
    return Violation(tuple(F), edge_sparsity_bound(g, F))


def rank_and_dof(g: QuotientGraph, numeric: bool = False, trials: int = 3,
                 seed: int = 0) -> AnalysisReport:
    """Generic rank as a maximum sparse core plus up to C(d+1, 2) further edges."""
    _require_bodies(g)
    d = g.dimension
    res = max_sparse_subgraph(g, body_params(d))
    s = len(res.kept)
    r = s + min(comb(d + 1, 2), g.m - s)
    target = counting_target(g)
    rep = AnalysisReport(_verdict(target - r, g.m - r), r, target - r, g.m - r, g.m, target,
                         extra={"sparse_core": s})
    if numeric:
        rep.numeric_rank = generic_rank(g, trials, seed)
    return rep


def theorem2_check(g: QuotientGraph, numeric: bool = False, trials: int = 3,
                   seed: int = 0) -> AnalysisReport:
    """Minimal rigidity of a body-and-bar quotient graph with the exact edge count.

    Route (ii): the (C(d+1, 2), d)-sparse core must be tight.  Route (i):
    the edges must split into d spanning trees, C(d, 2) spanning
    pseudo-forests and C(d+1, 2) spares.  Both are run and compared.
    """
    _require_bodies(g)
    target = counting_target(g)
    if g.m != target:
        raise ValueError(f"need m = {target} edges, got {g.m}; use rank_and_dof")
    d = g.dimension
    res = max_sparse_subgraph(g, body_params(d))
    route_ii = res.is_tight
    dec = decompose_theorem2(g)
    route_i = isinstance(dec, Decomposition)
    if route_i != route_ii:
        raise RouteDisagreement(f"pebble route says {route_ii}, partition route says {route_i}")
    s = len(res.kept)
    r = s + min(comb(d + 1, 2), g.m - s)
    rep = AnalysisReport(_verdict(target - r, g.m - r), r, target - r, g.m - r, g.m, target)
    if route_i:
        rep.certificate = dec
    else:
        rep.violation = _pebble_violation(g, res)
        rep.extra["partition_violation"] = dec.to_json()
    if numeric:
        rep.numeric_rank = generic_rank(g, trials, seed)
    return rep


def gain_class(c) -> tuple[int, ...]:
    """Canonical representative of ``{c, -c}``: a loop read in either direction."""
    for x in c:
        if x:
            return tuple(c) if x > 0 else tuple(-y for y in c)
    return tuple(c)


def loop_multiplicities(g: QuotientGraph) -> dict[tuple[int, ...], int]:
    counts: dict = {}
    for e in g.edges:
        key = gain_class(e.gain)
        counts[key] = counts.get(key, 0) + 1
    return counts


def theorem1_check(g: QuotientGraph, numeric: bool = False, trials: int = 3,
                   seed: int = 0) -> AnalysisReport:
    """One-vertex case: d^2 loops, each gain class used at most d times,
    and ``|F| <= d * dim span C(F)`` for every loop subset F."""
    if g.n_vertices != 1:
        raise ValueError("theorem1_check needs n = 1")
    d = g.dimension
    target = d * d
    if g.m != target:
        raise ValueError(f"need m = {target} loops, got {g.m}")
    ok, out = n1_union_check(g)
    if ok:
        r = g.m
    else:
        from .matroid import _LinearState, partition
        vectors = tuple(e.gain for e in g.edges)
        r = partition([_LinearState(vectors) for _ in range(d)], range(g.m)).rank
    mult = loop_multiplicities(g)
    liftable = all(k <= d for k in mult.values())
    verdict = _verdict(target - r, g.m - r) if liftable else NOT_LIFTABLE
    rep = AnalysisReport(verdict, r, target - r, g.m - r, g.m, target,
                         extra={"liftable": liftable,
                                "multiplicities": sorted(mult.values(), reverse=True)})
    if not ok:
        rep.violation = out
    if numeric:
        rep.numeric_rank = generic_rank(g, trials, seed)
    return rep


EXHAUSTIVE_MIXED_LIMIT = 14


def theorem3_check(g: QuotientGraph, numeric: bool = False, trials: int = 3,
                   seed: int = 0) -> AnalysisReport:
    """Plate-and-bar case via the union of d graphic matroids, a uniform matroid
    and the in-degree matroid with limits ``d k_v - C(k_v + 1, 2)``."""
    if g.weights is None:
        raise ValueError("theorem3_check needs vertex weights")
    target = counting_target(g)
    if g.m != target:
        raise ValueError(f"need m = {target} edges, got {g.m}")
    res, viol = mixed_check(g)
    r = res.rank
    rep = AnalysisReport(_verdict(target - r, g.m - r), r, target - r, g.m - r, g.m, target,
                         violation=viol)
    if g.m <= EXHAUSTIVE_MIXED_LIMIT:
        brute = all(len(F) <= mixed_bound(g, F) for F in _all_subsets(g.m))
        if brute != (r == g.m):
            raise RouteDisagreement("subset enumeration disagrees with the matroid union")
        rep.extra["exhaustive"] = True
    if numeric:
        rep.numeric_rank = generic_rank(g, trials, seed)
    return rep


def check(g: QuotientGraph, numeric: bool = False, trials: int = 3, seed: int = 0) -> AnalysisReport:
    """Dispatch on the shape of g: plates, a single body, or several bodies."""
    if g.is_mixed:
        return theorem3_check(g, numeric, trials, seed)
    if g.m != counting_target(g):
        return rank_and_dof(g, numeric, trials, seed)
    if g.n_vertices == 1:
        return theorem1_check(g, numeric, trials, seed)
    return theorem2_check(g, numeric, trials, seed)


# -- the cycle-gain refinement (necessary only) ------------------------------


def _all_subsets(m: int):
    for size in range(1, m + 1):
        yield from combinations(range(m), size)


def refined_bound(g: QuotientGraph, F) -> int:
    """d(n_F - w_F) + C(d,2) n_F - sum_{components F'} C(d - d_F', 2) + C(d_F + 1, 2).

    ``d_F`` is the rank of all cycle gains of F, ``d_F'`` that of one component.
    """
    F = list(F)
    d = g.dimension
    n_F = len(incident_vertices(g, F))
    d_all, per = cycle_gain_ranks(g, F)
    return (d * (n_F - component_count(g, F)) + comb(d, 2) * n_F
            - sum(comb(d - k, 2) for k in per) + comb(d_all + 1, 2))


@dataclass(frozen=True)
class RefinedResult:
    """Outcome of the refined count.  Passing is necessary, not sufficient."""

    passed: bool
    worst_edges: tuple[int, ...]
    worst_margin: int  # bound - |F| at the tightest subset seen
    checked: int
    mode: str
    necessary_only: bool = True


REFINED_EXHAUSTIVE_LIMIT = 20


def _connected_sample(g: QuotientGraph, rng: random.Random) -> tuple[int, ...]:
    m = g.m
    start = rng.randrange(m)
    chosen = {start}
    verts = {g.edges[start].tail, g.edges[start].head}
    size = rng.randint(1, m)
    while len(chosen) < size:
        cand = [k for k, e in enumerate(g.edges) if k not in chosen and (e.tail in verts or e.head in verts)]
        if not cand:
            break
        k = rng.choice(cand)
        chosen.add(k)
        verts |= {g.edges[k].tail, g.edges[k].head}
    return tuple(sorted(chosen))


def refined_check(g: QuotientGraph, exhaustive: Optional[bool] = None, samples: int = 2000,
                  seed: int = 0) -> RefinedResult:
    """Test ``|F| <= refined_bound(F)`` on all subsets, or on a random sample.

    The sample favours connected subsets; half of it is uniform.
    """
    if exhaustive is None:
        exhaustive = g.m <= REFINED_EXHAUSTIVE_LIMIT
    if exhaustive and g.m > REFINED_EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive mode is limited to {REFINED_EXHAUSTIVE_LIMIT} edges")
    if g.m == 0:
        return RefinedResult(True, (), 0, 0, "exhaustive" if exhaustive else "sampled")
    if exhaustive:
        subsets = _all_subsets(g.m)
    else:
        rng = random.Random(seed)

        def draw():
            for i in range(samples):
                if i % 2:
                    F = tuple(k for k in range(g.m) if rng.random() < 0.5)
                    yield F or (rng.randrange(g.m),)
                else:
                    yield _connected_sample(g, rng)
        subsets = draw()
    worst, worst_F, count = None, (), 0
    for F in subsets:
        count += 1
        margin = refined_bound(g, F) - len(F)
        if worst is None or margin < worst:
            worst, worst_F = margin, tuple(F)
    return RefinedResult(worst >= 0, worst_F, worst, count,
                         "exhaustive" if exhaustive else "sampled")


def restricted_rank(matrix_rows, F) -> int:
    return rank([matrix_rows[k] for k in F])
