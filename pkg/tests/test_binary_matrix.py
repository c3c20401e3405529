from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from src.binary_matrix import (
    binary_labels,
    build_A,
    check_inverse_identity,
    det_A,
    det_identity_symbolic,
    expected_det,
    inverse_A,
    matrix_A_entries,
    rank_A,
    render_expr,
    sample_det_identity,
    sample_det_point,
    sample_points,
    symbols_for,
    transposition_invariant,
)
from tests.conftest import small_fractions

F = Fraction


class TestConstruction:
    def test_labels_first_bit_fastest(self):
        assert binary_labels(2) == [(0, 0), (1, 0), (0, 1), (1, 1)]

    def test_r1(self):
        s, (t1,) = symbols_for(1)
        assert build_A(r=1).entries == sympy.Matrix([[s, -t1], [-1, s]])

    def test_r2_display(self):
        s, (t1, t2) = symbols_for(2)
        assert build_A(r=2).entries == sympy.Matrix([
            [s, -t1, -t2, 0],
            [-1, s, 0, -t2],
            [-1, 0, s, t1],
            [0, -1, 1, s],
        ])

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_at_most_r_plus_one_nonzero_per_row(self, r):
        rows = matrix_A_entries(F(5), [F(2)] * r, F(0))
        assert all(sum(1 for x in row if x) == r + 1 for row in rows)

    def test_needs_a_t(self):
        with pytest.raises(ValueError):
            matrix_A_entries(1, [])
        with pytest.raises(ValueError):
            build_A()


class TestDeterminant:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_symbolic_identity(self, r):
        assert det_identity_symbolic(r).matches

    def test_r2_closed_form(self):
        s, (t1, t2) = symbols_for(2)
        assert sympy.expand(det_A(build_A(r=2)) - (s**2 - t1 - t2) ** 2) == 0
        assert render_expr(expected_det(build_A(r=2))) == str(sympy.factor((s**2 - t1 - t2) ** 2))

    @pytest.mark.parametrize("r", [2, 3])
    def test_transposition_invariant(self, r):
        assert transposition_invariant(r)

    def test_numeric_instance(self):
        m = build_A(F(3), [F(1), F(1)])
        assert m.is_numeric
        assert det_A(m) == 49

    @given(s=small_fractions, t=st.lists(small_fractions, min_size=1, max_size=3))
    def test_sampled_points(self, s, t):
        assert sample_det_point(len(t), s, t).matches

    def test_seeded_samples_r4(self):
        samples = sample_det_identity(4, 10, seed=7)
        assert len(samples) == 10
        assert all(x.matches for x in samples)

    def test_samples_reproducible(self):
        assert sample_points(3, 5, seed=11) == sample_points(3, 5, seed=11)
        assert sample_points(3, 5, seed=11) != sample_points(3, 5, seed=12)


class TestRank:
    @pytest.mark.parametrize(
        "s, t, expected",
        [
            (F(2), [F(1), F(3)], 2),
            (F(2), [F(1), F(1), F(2)], 4),
            (F(3), [F(1), F(1)], 4),
            (F(2), [F(4)], 1),
        ],
    )
    def test_examples(self, s, t, expected):
        assert rank_A(build_A(s, t)) == expected

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_half_rank_on_the_quadric(self, r):
        t = [F(1)] * (r - 1) + [F(4 - (r - 1))]
        assert rank_A(build_A(F(2), t)) == 2 ** (r - 1)

    def test_symbolic_rejected(self):
        with pytest.raises(ValueError):
            rank_A(build_A(r=2))


class TestInverse:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_symbolic(self, r):
        assert check_inverse_identity(r=r)

    def test_rational_sample(self):
        a = build_A(F(1), [F(2), F(3), F(4)])
        b = build_A(F(-1), [F(2), F(3), F(4)])
        assert a.entries * b.entries == 8 * sympy.eye(8)
        assert check_inverse_identity(F(1), [F(2), F(3), F(4)])

    def test_inverse_matrix(self):
        a = build_A(F(3), [F(1), F(1)])
        assert a.entries * inverse_A(F(3), [F(1), F(1)]) == sympy.eye(4)

    def test_singular_point(self):
        with pytest.raises(ZeroDivisionError):
            inverse_A(F(2), [F(1), F(3)])
