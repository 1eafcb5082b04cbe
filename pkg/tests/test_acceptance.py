"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import random
import time
from itertools import combinations_with_replacement, permutations
from math import comb

from conftest import graph, record_acceptance
from oracles import fraction_rank, subsets
from periodic_rigidity.characterize import (MINIMALLY_RIGID, RouteDisagreement, body_params, rank_and_dof,
                                            refined_bound, theorem2_check, theorem3_check)
from periodic_rigidity.gain_graph import QuotientGraph, counting_target
from periodic_rigidity.generate import decomposable_instance, random_instance, violating_instance
from periodic_rigidity.linalg import EchelonBasis, integer_row
from periodic_rigidity.matroid import Decomposition, decompose_theorem2, edge_sparsity_bound, n1_union_check
from periodic_rigidity.pebble import SparsityParams, brute_force_sparse, is_sparse, max_sparse_subgraph
from periodic_rigidity.rigmat import (archetype_realization, build_matrix, exact_rank, generic_rank,
                                      loop_breaking_scale, random_realization)


def target(d, n):
    return counting_target(QuotientGraph(d, n, ()))


def test_criterion_1_counting_identities():
    ok = target(2, 2) == 7
    mismatches = [(d, n) for d in range(1, 5) for n in range(1, 11)
                  if counting_target(QuotientGraph(d, n, (), (d,) * n)) != target(d, n)]
    passed = ok and not mismatches
    record_acceptance(1, passed, f"target(d=2,n=2)={target(2, 2)}; mixed==body on 40 (d,n) pairs, "
                                 f"{len(mismatches)} mismatches")
    assert passed


def test_criterion_2_oracle_agreement():
    start = time.time()
    total, equal, lower_bound_ok = 500, 0, 0
    for i in range(total):
        rng = random.Random(i)
        d, n = (2, 3)[i % 2], rng.randint(1, 5)
        T = target(d, n)
        g = random_instance(d, n, rng.randint(max(0, T - 3), T + 3), seed=i, box=3).graph
        comb_rank = rank_and_dof(g).combinatorial_rank
        num = generic_rank(g, trials=3, seed=i)
        equal += comb_rank == num
        lower_bound_ok += comb_rank >= num
    elapsed = time.time() - start
    passed = equal >= 0.99 * total and lower_bound_ok == total and elapsed <= 300
    record_acceptance(2, passed, f"equal {equal}/{total}, combinatorial >= numeric {lower_bound_ok}/{total}, "
                                 f"{elapsed:.1f}s")
    assert passed


def test_criterion_3_route_equivalence_and_archetype_rank():
    total = agree = yes = full = 0
    for i in range(240):
        d, n = (2, 3)[i % 2], 1 + (i // 2) % 5
        kind = (i // 10) % 3
        if kind == 0:
            g = decomposable_instance(d, n, i).graph
        elif kind == 1 and n > 1:
            g = violating_instance(d, n, i).graph
        else:
            g = random_instance(d, n, target(d, n), i).graph
        total += 1
        route_ii = max_sparse_subgraph(g, body_params(d)).is_tight
        dec = decompose_theorem2(g)
        route_i = isinstance(dec, Decomposition)
        agree += route_i == route_ii
        try:
            theorem2_check(g)
        except RouteDisagreement:
            agree -= 1
        if route_i:
            yes += 1
            g2, r = archetype_realization(g, dec)
            full += exact_rank(build_matrix(g2, r)) == g.m
    passed = agree == total and full == yes and total >= 200
    record_acceptance(3, passed, f"routes agree {agree}/{total}; archetype full rank {full}/{yes} YES instances")
    assert passed


def _gain_classes(box):
    out = []
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if (x, y) == (0, 0) or x > 0 or (x == 0 and y > 0):
                out.append((x, y))
    return out


def test_criterion_4_single_vertex_exhaustive():
    classes = _gain_classes(2)  # a loop read backwards negates its gain, so classes are +-c
    total = agree = 0
    for gains in combinations_with_replacement(classes, 4):
        total += 1
        eq3 = all(len(F) <= 2 * fraction_rank([gains[k] for k in F]) for F in subsets(range(4)))
        g = graph(2, 1, [(1, 1, c) for c in gains])
        union_ok, _ = n1_union_check(g)
        numeric_ok = generic_rank(g, trials=3, seed=total) == 4
        agree += eq3 == union_ok == numeric_ok
    passed = agree == total
    record_acceptance(4, passed, f"{agree}/{total} gain multisets (entries in [-2,2], up to sign) agree")
    assert passed


def test_criterion_5_loop_breaking():
    rng = random.Random(5)
    tried = success = 0
    scales = []
    seed = 0
    while tried < 60:
        seed += 1
        d, n = rng.choice((2, 3)), rng.randint(2, 4)
        g = decomposable_instance(d, n, seed).graph
        loops = [k for k, e in enumerate(g.edges) if e.is_loop]
        if not loops:
            continue
        r = random_realization(g, random.Random(seed))
        if exact_rank(build_matrix(g, r)) != g.m:
            continue
        loop = rng.choice(loops)
        other = rng.choice([v for v in range(1, n + 1) if v != g.edges[loop].head])
        tried += 1
        k = loop_breaking_scale(g, r, loop, other, cap=1 << 20)
        if k is not None:
            success += 1
            scales.append(k)
    passed = success == tried
    record_acceptance(5, passed, f"{success}/{tried} minimally rigid instances keep full rank; "
                                 f"largest k needed {max(scales) if scales else None}")
    assert passed


def _canonical(n, ends):
    best = None
    for perm in permutations(range(1, n + 1)):
        img = tuple(sorted(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in ends))
        if best is None or img < best:
            best = img
    return best


def test_criterion_6_pebble_vs_brute_force():
    params = [SparsityParams(1, 0), SparsityParams(2, 2), SparsityParams(3, 2), SparsityParams(2, 0)]
    graphs = agree = checks = 0
    for n in range(1, 5):
        slots = [(u, v) for u in range(1, n + 1) for v in range(u, n + 1)]
        seen = set()
        for m in range(0, 9):
            for ends in combinations_with_replacement(slots, m):
                key = _canonical(n, ends)
                if key in seen:
                    continue
                seen.add(key)
                graphs += 1
                inst = (n, list(ends))
                for p in params:
                    checks += 1
                    ok, best = brute_force_sparse(inst, p)
                    agree += ok == is_sparse(inst, p) and best == len(max_sparse_subgraph(inst, p).kept)
    passed = agree == checks
    record_acceptance(6, passed, f"{agree}/{checks} checks on {graphs} multigraphs (n<=4, m<=8, "
                                 f"up to relabelling) x 4 sparsity types")
    assert passed


def _all_subset_ranks(rows, visit):
    """Depth-first over row subsets, growing an echelon basis incrementally."""
    m = len(rows)
    ints = [integer_row(r) for r in rows]

    def go(i, chosen, basis):
        if i == m:
            if chosen:
                visit(tuple(chosen), len(basis))
            return
        go(i + 1, chosen, basis)
        b = basis.copy()
        b.add(ints[i])
        go(i + 1, chosen + [i], b)

    go(0, [], EchelonBasis())


def test_criterion_7_subset_rank_bounds():
    rng = random.Random(7)
    instances = subsets_checked = 0
    breaches = []
    while instances < 40:
        d = rng.choice((1, 2, 3))
        n = rng.randint(1, 4)
        m = rng.randint(1, 12)
        box = rng.choice((1, 3))  # small boxes create degenerate cycle gains
        g = random_instance(d, n, m, seed=rng.randrange(10 ** 6), box=box).graph
        instances += 1
        rows = build_matrix(g, random_realization(g, random.Random(instances))).rows

        def visit(F, r):
            nonlocal subsets_checked
            subsets_checked += 1
            if r > edge_sparsity_bound(g, F) or r > refined_bound(g, F):
                breaches.append((instances, F, r))

        _all_subset_ranks(rows, visit)
    passed = not breaches
    record_acceptance(7, passed, f"{subsets_checked} row subsets over {instances} instances (m<=12), "
                                 f"{len(breaches)} bound breaches")
    assert passed


def test_criterion_8_performance():
    g = decomposable_instance(3, 1000, seed=1).graph
    assert g.m == counting_target(g)
    start = time.time()
    rep = theorem2_check(g)
    elapsed = time.time() - start
    passed = rep.verdict == MINIMALLY_RIGID and elapsed <= 10
    record_acceptance(8, passed, f"d=3, n=1000, m={g.m}: {rep.verdict} in {elapsed:.2f}s")
    assert passed


def test_criterion_9_mixed_specialisation():
    total = agree = 0
    for i in range(150):
        rng = random.Random(900 + i)
        d, n = rng.choice((2, 3)), rng.randint(1, 4)
        g = random_instance(d, n, target(d, n), seed=i).graph
        if i % 3 == 0:
            g = decomposable_instance(d, n, i).graph
        bodies = QuotientGraph(d, n, g.edges, (d,) * n)
        total += 1
        agree += theorem3_check(bodies).verdict == theorem2_check(g).verdict
    passed = agree == total
    record_acceptance(9, passed, f"{agree}/{total} all-body instances give identical verdicts")
    assert passed
