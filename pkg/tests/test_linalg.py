from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src import linalg
from src.scalar import QuadScalar, sqrt_p

F = Fraction


def frac_matrix(order: int):
    cell = st.fractions(min_value=-9, max_value=9, max_denominator=5)
    return st.lists(st.lists(cell, min_size=order, max_size=order), min_size=order, max_size=order)


class TestDeterminant:
    def test_known_values(self):
        assert linalg.det([[F(2), F(1)], [F(1), F(3)]]) == 5
        assert linalg.det([[F(0), F(1)], [F(1), F(0)]]) == -1
        assert linalg.det([[F(1), F(2)], [F(2), F(4)]]) == 0

    def test_over_quadratic_field(self):
        r = sqrt_p(3)
        m = [[r, QuadScalar.rational(3, 3)], [QuadScalar.one(3), r]]
        assert linalg.det(m) == 0
        assert linalg.det([[r, QuadScalar.one(3)], [QuadScalar.one(3), r]]) == 2

    @given(st.integers(min_value=1, max_value=4).flatmap(lambda k: st.tuples(frac_matrix(k), frac_matrix(k))))
    def test_multiplicative(self, pair):
        a, b = pair
        assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)

    @given(st.integers(min_value=1, max_value=4).flatmap(frac_matrix))
    def test_transpose_invariant(self, m):
        assert linalg.det(linalg.transpose(m)) == linalg.det(m)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            linalg.det([[F(1), F(2)]])


class TestRankAndNullspace:
    def test_rank(self):
        assert linalg.rank([[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]) == 2
        assert linalg.rank([]) == 0

    @given(st.integers(min_value=1, max_value=4).flatmap(frac_matrix))
    def test_rank_nullity(self, m):
        null = linalg.nullspace(m)
        assert linalg.rank(m) + len(null) == len(m[0])
        for vec in null:
            assert all(sum(F(x) * F(y) for x, y in zip(row, vec)) == 0 for row in m)

    def test_independent_rows_greedy(self):
        rows = [[F(1), F(0)], [F(2), F(0)], [F(0), F(1)], [F(1), F(1)]]
        assert linalg.independent_rows(rows) == [0, 2]

    def test_row_echelon_leaves_input(self):
        m = [[F(2), F(4)], [F(1), F(3)]]
        reduced, pivots = linalg.row_echelon(m)
        assert reduced == [[1, 0], [0, 1]]
        assert pivots == [0, 1]
        assert m == [[F(2), F(4)], [F(1), F(3)]]


def test_leading_minors():
    m = [[F(2), F(-1), F(0)], [F(-1), F(2), F(-1)], [F(0), F(-1), F(2)]]
    assert linalg.leading_minors(m) == [2, 3, 4]
    assert linalg.is_symmetric(m)
