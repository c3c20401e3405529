"""The 2^r x 2^r matrix A(s; t_1, ..., t_r) on binary labels.

Rows and columns are indexed by bit sequences (l_1, ..., l_r) in reverse
binary order (l_1 is the least significant bit). Entries:

* diagonal: s
* labels differing only at position i with l_i = 0 in the row label:
  -(-1)^(l_{i+1} + ... + l_r) t_i
* labels differing only at position i with l_i = 1 in the row label:
  (-1)^(l_i + ... + l_r)
* everything else: 0

Identities checked here: det A = (s^2 - Σt)^(2^(r-1)), rank 2^(r-1) when
Σt = s^2, and A(s; t) A(-s; t) = (Σt - s^2) I.
"""

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import sympy

from . import linalg

logger = logging.getLogger(__name__)


def binary_labels(r: int) -> list[tuple[int, ...]]:
    return [tuple((index >> bit) & 1 for bit in range(r)) for index in range(2 ** r)]


def matrix_A_entries(s: Any, t: Sequence[Any], zero: Any = 0) -> list[list[Any]]:
    """Dense entries of A(s; t) over whatever ring s and t live in."""
    r = len(t)
    if r < 1:
        raise ValueError("A(s; t) needs at least one t")
    one = zero + 1
    labels = binary_labels(r)
    rows = []
    for a in labels:
        row = []
        for b in labels:
            diff = [i for i in range(r) if a[i] != b[i]]
            if not diff:
                row.append(zero + s)
            elif len(diff) > 1:
                row.append(zero)
            else:
                i = diff[0]
                if a[i] == 0:
                    sign = -1 if sum(a[i + 1:]) % 2 == 0 else 1
                    row.append(zero + sign * t[i])
                else:
                    row.append(one if sum(a[i:]) % 2 == 0 else -one)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class MatrixA:
    r: int
    s: Any
    t: tuple[Any, ...]
    entries: sympy.Matrix

    @property
    def is_numeric(self) -> bool:
        return all(x.is_Rational for x in self.entries)

    def fraction_rows(self) -> list[list[Fraction]]:
        return [[Fraction(int(x.p), int(x.q)) for x in self.entries.row(i)] for i in range(self.entries.rows)]


def symbols_for(r: int) -> tuple[sympy.Symbol, tuple[sympy.Symbol, ...]]:
    s = sympy.Symbol("s")
    t = sympy.symbols(f"t1:{r + 1}")
    return s, tuple(t)


def _sympify(value: Any) -> sympy.Expr:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def build_A(s: Any = None, t: Sequence[Any] | None = None, r: int | None = None) -> MatrixA:
    """A(s; t); omitted arguments become the symbols s and t1..tr."""
    if t is None:
        if r is None:
            raise ValueError("give either t or r")
        _, t = symbols_for(r)
    if s is None:
        s, _ = symbols_for(len(t))
    s_expr = _sympify(s)
    t_expr = tuple(_sympify(x) for x in t)
    entries = sympy.Matrix(matrix_A_entries(s_expr, t_expr, sympy.Integer(0)))
    return MatrixA(len(t_expr), s_expr, t_expr, entries)


def expected_det(m: MatrixA) -> sympy.Expr:
    return (m.s ** 2 - sum(m.t)) ** (2 ** (m.r - 1))


def det_A(m: MatrixA) -> sympy.Expr:
    """Exact determinant: rational elimination when numeric, Berkowitz otherwise."""
    if m.is_numeric:
        value = linalg.det(m.fraction_rows())
        return sympy.Rational(Fraction(value).numerator, Fraction(value).denominator)
    return sympy.expand(m.entries.det(method="berkowitz"))


def rank_A(m: MatrixA) -> int:
    if not m.is_numeric:
        raise ValueError("rank is computed only for rational s and t")
    return linalg.rank(m.fraction_rows())


def check_inverse_identity(s: Any = None, t: Sequence[Any] | None = None, r: int | None = None) -> bool:
    """A(s; t) A(-s; t) == (Σt - s^2) I."""
    a = build_A(s, t, r)
    b = build_A(-a.s, a.t)
    product = (a.entries * b.entries).applyfunc(sympy.expand)
    target = sympy.expand(sum(a.t) - a.s ** 2) * sympy.eye(2 ** a.r)
    return (product - target).applyfunc(sympy.expand) == sympy.zeros(2 ** a.r)


def inverse_A(s: Any, t: Sequence[Any]) -> sympy.Matrix:
    """A(s; t)^(-1) = A(-s; t) / (Σt - s^2); undefined when Σt = s^2."""
    a = build_A(s, t)
    denom = sympy.expand(sum(a.t) - a.s ** 2)
    if denom == 0:
        raise ZeroDivisionError("A(s; t) is singular when Σt = s^2")
    return build_A(-a.s, a.t).entries / denom


@dataclass(frozen=True)
class DeterminantCheck:
    det: sympy.Expr
    expected: sympy.Expr

    @property
    def matches(self) -> bool:
        return sympy.expand(self.det - self.expected) == 0


def det_identity_symbolic(r: int) -> DeterminantCheck:
    m = build_A(r=r)
    return DeterminantCheck(det_A(m), sympy.expand(expected_det(m)))


def transposition_invariant(r: int) -> bool:
    """det A is unchanged by swapping neighbouring t_i."""
    s, t = symbols_for(r)
    base = det_A(build_A(s, t))
    for i in range(r - 1):
        swapped = list(t)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        if sympy.expand(det_A(build_A(s, swapped)) - base) != 0:
            return False
    return True


@dataclass(frozen=True)
class DetSample:
    s: Fraction
    t: tuple[Fraction, ...]
    det: Fraction
    expected: Fraction

    @property
    def matches(self) -> bool:
        return self.det == self.expected


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.randint(1, 9))


def sample_det_point(r: int, s: Fraction, t: Sequence[Fraction]) -> DetSample:
    rows = matrix_A_entries(s, list(t), Fraction(0))
    value = Fraction(linalg.det(rows))
    expected = (s * s - sum(t, Fraction(0))) ** (2 ** (r - 1))
    return DetSample(s, tuple(t), value, expected)


def sample_points(r: int, samples: int, seed: int) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    rng = random.Random(seed)
    return [(_random_fraction(rng), tuple(_random_fraction(rng) for _ in range(r))) for _ in range(samples)]


def sample_det_identity(r: int, samples: int, seed: int) -> list[DetSample]:
    """Exact determinant against the closed form at seeded random rational points."""
    out = [sample_det_point(r, s, t) for s, t in sample_points(r, samples, seed)]
    bad = [x for x in out if not x.matches]
    if bad:
        logger.error("determinant identity fails at s=%s t=%s", bad[0].s, bad[0].t)
    return out


def render_expr(expr: sympy.Expr) -> str:
    return str(sympy.factor(expr))
