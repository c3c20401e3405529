"""Symmetric functions and the character of V_p.

Polynomials are `sympy.Poly` objects over QQ in the variables x0..xn.
Three independent routes to the character are compared:

* multiplicities summed over the weights of V_p,
* the alternating sum Σ_j h_{p-n+2j} e_{n-2j},
* the sum of hook Schur functions s_(p-1-i | i), i = 0 .. min(n, p-1).
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .structure import vp_mult, vp_weights

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def variables(n: int) -> tuple[sympy.Symbol, ...]:
    """x0, ..., xn."""
    return tuple(sympy.symbols(f"x0:{n + 1}"))


def _poly(expr, gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    return sympy.Poly(expr, *gens, domain="QQ")


def elem_sym(r: int, gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    if r < 0 or r > len(gens):
        return _poly(0, gens)
    return _poly(sympy.Add(*(sympy.Mul(*c) for c in itertools.combinations(gens, r))), gens)


def complete_sym(r: int, gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    if r < 0:
        return _poly(0, gens)
    return _poly(
        sympy.Add(*(sympy.Mul(*c) for c in itertools.combinations_with_replacement(gens, r))),
        gens,
    )


def schur_hook(a: int, b: int, gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    """s_(a|b) = h_{a+1} e_b - h_{a+2} e_{b-1} + ... + (-1)^b h_{a+b+1}."""
    if a < 0 or b < 0:
        raise ValueError(f"hook arm and leg must be >= 0, got ({a}|{b})")
    total = _poly(0, gens)
    for q in range(b + 1):
        term = complete_sym(a + 1 + q, gens) * elem_sym(b - q, gens)
        total = total + term if q % 2 == 0 else total - term
    return total


def hook_shape(a: int, b: int) -> tuple[int, ...]:
    return (a + 1,) + (1,) * b


def _semistandard_tableaux(shape: Sequence[int], nvars: int):
    cells = [(row, col) for row, length in enumerate(shape) for col in range(length)]
    filling: dict[tuple[int, int], int] = {}

    def place(index: int):
        if index == len(cells):
            yield dict(filling)
            return
        row, col = cells[index]
        low = 0
        if col > 0:
            low = max(low, filling[(row, col - 1)])
        if row > 0:
            low = max(low, filling[(row - 1, col)] + 1)
        for value in range(low, nvars):
            filling[(row, col)] = value
            yield from place(index + 1)
        filling.pop((row, col), None)

    yield from place(0)


def schur_by_tableaux(shape: Sequence[int], gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    """Schur polynomial as the sum of x^T over semistandard tableaux T."""
    total = sympy.Integer(0)
    for tableau in _semistandard_tableaux(shape, len(gens)):
        total += sympy.Mul(*(gens[v] for v in tableau.values()))
    return _poly(total, gens)


def char_formula(n: int, p: int) -> sympy.Poly:
    """h_{p-n} e_n + h_{p-n+2} e_{n-2} + ..., negative h indices dropped."""
    gens = variables(n)
    total = _poly(0, gens)
    for j in range(n // 2 + 1):
        h_index = p - n + 2 * j
        if h_index < 0:
            continue
        total = total + complete_sym(h_index, gens) * elem_sym(n - 2 * j, gens)
    return total


def hook_sum(n: int, p: int) -> sympy.Poly:
    gens = variables(n)
    total = _poly(0, gens)
    for i in range(min(n, p - 1) + 1):
        total = total + schur_hook(p - 1 - i, i, gens)
    return total


def char_from_weights(n: int, p: int) -> sympy.Poly:
    """Σ over weights of V_p of vp_mult(λ) x^λ."""
    gens = variables(n)
    expr = sympy.Integer(0)
    for w in vp_weights(n, p):
        mult = vp_mult(w, n, p)
        if mult:
            expr += mult * sympy.Mul(*(g ** e for g, e in zip(gens, w)))
    return _poly(expr, gens)


def evaluate_at_ones(poly: sympy.Poly) -> int:
    return int(poly.eval({g: 1 for g in poly.gens}))


@dataclass(frozen=True)
class CharacterPaths:
    from_weights: sympy.Poly
    formula: sympy.Poly
    hooks: sympy.Poly

    @property
    def agree(self) -> bool:
        return self.from_weights == self.formula == self.hooks


def character_paths(n: int, p: int) -> CharacterPaths:
    paths = CharacterPaths(char_from_weights(n, p), char_formula(n, p), hook_sum(n, p))
    if not paths.agree:
        logger.error("character routes disagree for n=%d p=%d", n, p)
    return paths


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _render_coeff(c) -> str:
    return str(c)


def render_poly(poly: sympy.Poly) -> str:
    """'c * x0^a0 ... xn^an + ...' in graded lexicographic order."""
    terms = poly.terms(order="grlex")
    if not terms:
        return "0"
    parts = []
    for monom, coeff in terms:
        factors = [
            str(g) if e == 1 else f"{g}^{e}"
            for g, e in zip(poly.gens, monom)
            if e
        ]
        if not factors:
            parts.append(_render_coeff(coeff))
        elif coeff == 1:
            parts.append(" ".join(factors))
        else:
            parts.append(f"{_render_coeff(coeff)} * " + " ".join(factors))
    return " + ".join(parts).replace("+ -", "- ")


def poly_terms(poly: sympy.Poly) -> list[tuple[list[int], str]]:
    return [(list(monom), str(coeff)) for monom, coeff in poly.terms(order="grlex")]
