import pytest
import sympy

from src.characters import (
    char_formula,
    char_from_weights,
    character_paths,
    complete_sym,
    elem_sym,
    evaluate_at_ones,
    hook_shape,
    hook_sum,
    poly_terms,
    render_poly,
    schur_by_tableaux,
    schur_hook,
    variables,
)
from src.structure import dim_vp


def expr(poly):
    return sympy.expand(poly.as_expr())


class TestSymmetricFunctions:
    def test_elementary(self):
        x0, x1 = variables(1)
        assert expr(elem_sym(1, (x0, x1))) == x0 + x1
        assert expr(elem_sym(0, (x0, x1))) == 1
        assert elem_sym(3, (x0, x1)).is_zero

    def test_complete(self):
        x0, x1 = variables(1)
        assert expr(complete_sym(2, (x0, x1))) == x0**2 + x0 * x1 + x1**2
        assert expr(complete_sym(0, (x0, x1))) == 1
        assert complete_sym(-1, (x0, x1)).is_zero

    def test_hook_single_row(self):
        gens = variables(1)
        assert schur_hook(2, 0, gens) == complete_sym(3, gens)

    def test_hook_21(self):
        x0, x1 = gens = variables(1)
        assert expr(schur_hook(1, 1, gens)) == x0**2 * x1 + x0 * x1**2

    @pytest.mark.parametrize("a, b", [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2)])
    def test_hook_matches_tableaux(self, a, b):
        gens = variables(2)
        assert schur_hook(a, b, gens) == schur_by_tableaux(hook_shape(a, b), gens)

    def test_column_is_elementary(self):
        gens = variables(2)
        assert schur_hook(0, 1, gens) == elem_sym(2, gens)

    def test_negative_hook_rejected(self):
        with pytest.raises(ValueError):
            schur_hook(-1, 0, variables(1))


class TestCharacter:
    def test_q2_p2(self):
        x0, x1 = variables(1)
        assert expr(char_formula(1, 2)) == sympy.expand((x0 + x1) ** 2)
        assert expr(char_from_weights(1, 2)) == x0**2 + 2 * x0 * x1 + x1**2

    def test_q2_p1(self):
        x0, x1 = variables(1)
        assert expr(char_from_weights(1, 1)) == x0 + x1

    @pytest.mark.parametrize("p", [1, 2, 3, 5])
    def test_n1_single_term(self, p):
        gens = variables(1)
        assert char_formula(1, p) == complete_sym(p - 1, gens) * elem_sym(1, gens)

    def test_n2_p3(self):
        gens = variables(2)
        assert char_formula(2, 3) == complete_sym(1, gens) * elem_sym(2, gens) + complete_sym(3, gens)

    @pytest.mark.parametrize("n, p", [(1, 1), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3)])
    def test_three_routes_agree(self, n, p):
        assert character_paths(n, p).agree

    @pytest.mark.slow
    @pytest.mark.parametrize("n, p", [(3, 4), (3, 5), (2, 5)])
    def test_three_routes_agree_larger(self, n, p):
        assert character_paths(n, p).agree

    @pytest.mark.parametrize("n, p", [(2, 1), (3, 1), (3, 2)])
    def test_small_p_still_agrees(self, n, p):
        assert char_from_weights(n, p) == char_formula(n, p) == hook_sum(n, p)

    @pytest.mark.parametrize("n, p", [(1, 4), (2, 3), (3, 2)])
    def test_value_at_ones_is_dimension(self, n, p):
        assert evaluate_at_ones(char_formula(n, p)) == dim_vp(n, p)


class TestRendering:
    def test_render(self):
        assert render_poly(char_from_weights(1, 2)) == "x0^2 + 2 * x0 x1 + x1^2"
        assert render_poly(elem_sym(3, variables(1))) == "0"

    def test_terms(self):
        assert poly_terms(char_from_weights(1, 1)) == [([1, 0], "1"), ([0, 1], "1")]
