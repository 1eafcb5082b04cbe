from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import given

from oracles import fraction_rank
from periodic_rigidity.linalg import EchelonBasis, express, integer_row, rank

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(max_rows=6, max_cols=6, elements=rationals):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), max_size=max_rows))


def test_identity_and_repeats():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[1, 2, 3], [1, 2, 3], [0, 1, 0]]) == 2
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0


def test_integer_row_keeps_direction():
    assert integer_row([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]
    assert integer_row([4, 6, 0]) == [2, 3, 0]


@given(matrices())
def test_rank_matches_gauss_jordan(M):
    assert rank(M) == fraction_rank(M)


@given(matrices(elements=st.integers(-2, 2)))
def test_rank_sparse_integers(M):
    assert rank(M) == fraction_rank(M)


@given(matrices())
def test_rank_invariant_under_row_permutation(M):
    assert rank(M) == rank(list(reversed(M)))


@given(matrices())
def test_echelon_basis_grows_to_rank(M):
    basis = EchelonBasis()
    for row in M:
        basis.add(integer_row(row))
    assert len(basis) == fraction_rank(M)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_express(vectors, target):
    if fraction_rank(vectors) < len(vectors):
        return
    coeff = express(vectors, target)
    in_span = fraction_rank(vectors + [target]) == len(vectors)
    assert (coeff is not None) == in_span
    if coeff is not None:
        combo = [sum(c * v[i] for c, v in zip(coeff, vectors)) for i in range(3)]
        assert combo == target
