"""Exact rational linear algebra: fraction-free rank and small helpers."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = [int(x * den) for x in row]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals by Bareiss fraction-free elimination."""
    M = [integer_row(r) for r in rows]
    M = [r for r in M if any(r)]
    if not M:
        return 0
    n_cols = len(M[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        pr = M[r]
        for i in range(r + 1, len(M)):
            row = M[i]
            a = row[c]
            if a:
                M[i] = [(p * x - a * y) // prev for x, y in zip(row, pr)]
            elif p != prev:
                M[i] = [(p * x) // prev for x in row]
        prev = p
        r += 1
        if r == len(M):
            break
    return r


class EchelonBasis:
    """Incrementally grown row basis over the rationals (integer arithmetic).

    ``add`` reduces a row against the current basis and keeps it when it is
    independent.  ``copy`` is cheap enough for depth-first subset sweeps.
    """

    __slots__ = ("rows",)

    def __init__(self, rows=None):
        self.rows: list[tuple[int, list[int]]] = rows or []

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "EchelonBasis":
        return EchelonBasis(list(self.rows))

    def reduce(self, row: Sequence[int]) -> list[int]:
        v = list(row)
        for pc, b in self.rows:
            a = v[pc]
            if a:
                bp = b[pc]
                v = [bp * x - a * y for x, y in zip(v, b)]
                g = 0
                for x in v:
                    g = gcd(g, x)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def add(self, row: Sequence[int]) -> bool:
        v = self.reduce(row)
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            return False
        self.rows.append((pc, v))
        return True


def express(vectors: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Coefficients writing ``target`` in terms of ``vectors``, or None.

    Assumes ``vectors`` are linearly independent.
    """
    k = len(vectors)
    if k == 0:
        return [] if not any(target) else None
    dim = len(target)
    # augmented system A x = t with A's columns the vectors
    A = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, dim) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(dim):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][k] != 0 for i in range(r, dim)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = A[i][k]
    return x
