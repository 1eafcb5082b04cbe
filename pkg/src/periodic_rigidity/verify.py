"""Cross-oracle harness: every verdict is recomputed by an independent route.

For each generated instance the harness compares

* combinatorial rank (pebble core + spares) against exact generic rank,
* the pebble route against the matroid-partition route (counting-target instances),
* the pebble game against brute-force enumeration (small instances),
* exact row-subset ranks against both subset count bounds (small instances).

A combinatorial rank below the numeric one, or any route, brute-force or
bound mismatch, is a hard failure and dumps a reproducer file.  Numeric rank
falling short of the combinatorial rank is retried with more random
realizations before it counts as a miss.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional

from .characterize import RouteDisagreement, body_params, rank_and_dof, refined_bound, theorem2_check
from .gain_graph import QuotientGraph, counting_target, random_gains
from .generate import decomposable_instance, random_instance, violating_instance
from .graphfile import save_graph
from .linalg import rank
from .matroid import edge_sparsity_bound
from .pebble import brute_force_sparse, max_sparse_subgraph
from .rigmat import build_matrix, generic_rank, random_realization

MAX_D, MAX_N, MAX_COUNT = 3, 6, 1000
BRUTE_LIMIT = 12
SUBSET_LIMIT = 10


@dataclass
class VerifyConfig:
    dims: tuple[int, ...] = (2, 3)
    n_max: int = 4
    count: int = 200
    seed: int = 0
    trials: int = 3
    retry_trials: int = 10
    out_dir: str = "."
    inject_failure: Optional[int] = None  # instance index whose verdict is flipped (harness self-test)


@dataclass
class VerifySummary:
    total: int = 0
    agree: int = 0
    numeric_misses: list = field(default_factory=list)  # (index, explained by the lifting)
    failures: list = field(default_factory=list)  # (index, reason, reproducer path)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        text = f"{self.agree}/{self.total} agree"
        if self.failures:
            text += f", {len(self.failures)} failed"
        return text


def check_bounds(g: QuotientGraph, seed: int) -> Optional[str]:
    """Exact rank of every row subset against both subset count bounds."""
    rows = build_matrix(g, random_realization(g, random.Random(seed))).rows
    for size in range(1, g.m + 1):
        for F in combinations(range(g.m), size):
            r = rank([rows[k] for k in F])
            if r > edge_sparsity_bound(g, F):
                return f"rank {r} of rows {F} exceeds the body-and-bar count"
            if r > refined_bound(g, F):
                return f"rank {r} of rows {F} exceeds the cycle-gain count"
    return None


def _instance(i: int, cfg: VerifyConfig):
    rng = random.Random(f"{cfg.seed}:{i}")
    d = cfg.dims[i % len(cfg.dims)]
    n = rng.randint(1, cfg.n_max)
    target = counting_target(QuotientGraph(d, n, ()))
    kind = ("random", "decomposable", "violating")[(i // len(cfg.dims)) % 3]
    s = rng.randrange(1 << 30)
    if kind == "decomposable":
        return decomposable_instance(d, n, s).graph
    if kind == "violating" and n > 1:
        return violating_instance(d, n, s).graph
    return random_instance(d, n, rng.randint(max(0, target - 3), target + 3), s).graph


def check_instance(g: QuotientGraph, i: int, cfg: VerifyConfig) -> tuple[bool, Optional[str]]:
    """Returns (ranks agree, hard failure reason or None)."""
    rep = rank_and_dof(g)
    comb_rank = rep.combinatorial_rank
    if cfg.inject_failure == i:
        comb_rank -= 1
    num = generic_rank(g, cfg.trials, cfg.seed + i)
    if num < comb_rank:
        num = max(num, generic_rank(g, cfg.retry_trials, cfg.seed + i + 7919))
    if comb_rank < num:
        return False, f"combinatorial rank {comb_rank} < numeric rank {num}"
    if g.m == counting_target(g) and g.n_vertices > 1:
        try:
            theorem2_check(g)
        except RouteDisagreement as exc:
            return False, str(exc)
    if g.m <= BRUTE_LIMIT:
        p = body_params(g.dimension)
        ok, best = brute_force_sparse(g, p)
        if best != len(max_sparse_subgraph(g, p).kept):
            return False, "pebble game disagrees with brute force"
    if g.m <= SUBSET_LIMIT:
        reason = check_bounds(g, cfg.seed + i)
        if reason:
            return False, reason
    return comb_rank == num, None


def lifting_explains(g: QuotientGraph, target_rank: int, seed: int, tries: int = 5) -> bool:
    """Does redrawing the gains reach the combinatorial rank?

    When it does, the shortfall belongs to the given lifting, not to the graph.
    """
    for t in range(tries):
        if generic_rank(random_gains(g, 3, seed + t), 3, seed + t) >= target_rank:
            return True
    return False


def run_verify(cfg: VerifyConfig, log=None) -> VerifySummary:
    if not (set(cfg.dims) <= set(range(1, MAX_D + 1)) and 1 <= cfg.n_max <= MAX_N
            and 0 <= cfg.count <= MAX_COUNT):
        raise ValueError(f"bounds: d <= {MAX_D}, n <= {MAX_N}, count <= {MAX_COUNT}")
    out = VerifySummary()
    for i in range(cfg.count):
        g = _instance(i, cfg)
        agree, reason = check_instance(g, i, cfg)
        out.total += 1
        if reason is not None:
            path = Path(cfg.out_dir) / f"verify-failure-{cfg.seed}-{i}.txt"
            save_graph(path, g, meta={"reason": reason.replace("\n", " ")})
            out.failures.append((i, reason, str(path)))
            if log:
                log(f"instance {i}: {reason} (reproducer: {path})")
        elif agree:
            out.agree += 1
        else:
            explained = lifting_explains(g, rank_and_dof(g).combinatorial_rank, cfg.seed + i)
            out.numeric_misses.append((i, explained))
    return out
