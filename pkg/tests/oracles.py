"""Deliberately naive reference implementations used only by the tests.

Nothing here imports the package's algorithms; each function recomputes a
quantity from its definition.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb


def fraction_rank(rows) -> int:
    """Plain Gauss-Jordan over Fractions."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def subsets(items, min_size=1):
    items = list(items)
    for k in range(min_size, len(items) + 1):
        yield from combinations(items, k)


def touched(ends, F):
    return {v for k in F for v in ends[k]}


def components(ends, F):
    """Number of connected components of the edge set F (isolated vertices ignored)."""
    verts = touched(ends, F)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for k in F:
        u, v = ends[k]
        parent[find(u)] = find(v)
    return len({find(v) for v in verts})


def is_sparse_by_count(ends, a, b) -> bool:
    """Every non-empty vertex subset spans at most a n' - b edges."""
    verts = touched(ends, range(len(ends)))
    for V in subsets(sorted(verts)):
        V = set(V)
        spanned = sum(1 for u, v in ends if u in V and v in V)
        if spanned and spanned > a * len(V) - b:
            return False
    return True


def max_sparse_by_count(ends, a, b) -> int:
    best = 0
    for k in range(len(ends), 0, -1):
        for F in combinations(range(len(ends)), k):
            if is_sparse_by_count([ends[i] for i in F], a, b):
                return k
    return best


def orientable(ends, F, limits) -> bool:
    """Try every orientation of F."""
    F = list(F)
    for choice in product((0, 1), repeat=len(F)):
        indeg = {}
        for k, c in zip(F, choice):
            h = ends[k][c]
            indeg[h] = indeg.get(h, 0) + 1
        if all(indeg[v] <= limits[v] for v in indeg):
            return True
    return False


def is_forest(ends, F) -> bool:
    F = list(F)
    return len(F) == len(touched(ends, F)) - components(ends, F) and all(ends[k][0] != ends[k][1] for k in F)


def body_count(d, ends, F) -> int:
    n_F = len(touched(ends, F))
    return d * (n_F - components(ends, F)) + comb(d, 2) * n_F + comb(d + 1, 2)


def union_rank_by_formula(rank_fns, ground) -> int:
    """min over A of |E \\ A| + sum_k r_k(A)."""
    ground = list(ground)
    best = len(ground)
    for A in subsets(ground):
        val = len(ground) - len(A) + sum(r(A) for r in rank_fns)
        best = min(best, val)
    return best


def independent_rank(indep, F) -> int:
    """Largest independent subset of F by enumeration."""
    F = list(F)
    for k in range(len(F), 0, -1):
        if any(indep(S) for S in combinations(F, k)):
            return k
    return 0


def partition_exists(indeps, E) -> bool:
    """Can E be split into len(indeps) parts, part k independent in matroid k?"""
    E = list(E)
    for assign in product(range(len(indeps)), repeat=len(E)):
        parts = [[] for _ in indeps]
        for x, k in zip(E, assign):
            parts[k].append(x)
        if all(ind(p) for ind, p in zip(indeps, parts)):
            return True
    return False


def vector_span_dim(vectors) -> int:
    return fraction_rank(vectors)
