"""Exact arithmetic in the quadratic extension Q(sqrt(p)).

Every coefficient in the engine is a `QuadScalar` a + b*sqrt(p) with
rational a, b and a fixed positive integer radicand p. Perfect-square
radicands are folded into the rational part on construction, so for
p = q**2 every value is stored with b = 0.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

logger = logging.getLogger(__name__)

Rational = Fraction


class RadicandMismatchError(ValueError):
    """Two scalars from different fields Q(sqrt(p)) were combined."""


class QuadParseError(ValueError):
    """Text could not be read as a + b*sqrt(p)."""


def _perfect_square_root(p: int) -> int | None:
    q = isqrt(p)
    return q if q * q == p else None


@dataclass(frozen=True, eq=False)
class QuadScalar:
    """Element a + b*sqrt(p) of Q(sqrt(p))."""
    a: Fraction
    b: Fraction
    p: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"radicand must be a positive integer, got {self.p}")
        a = Fraction(self.a)
        b = Fraction(self.b)
        q = _perfect_square_root(self.p)
        if q is not None and b:
            a, b = a + b * q, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    # --- constructors ---

    @classmethod
    def rational(cls, value: int | Fraction, p: int) -> "QuadScalar":
        return cls(Fraction(value), Fraction(0), p)

    @classmethod
    def zero(cls, p: int) -> "QuadScalar":
        return cls(Fraction(0), Fraction(0), p)

    @classmethod
    def one(cls, p: int) -> "QuadScalar":
        return cls(Fraction(1), Fraction(0), p)

    # --- coercion ---

    def _coerce(self, other: object) -> "QuadScalar | None":
        if isinstance(other, QuadScalar):
            if other.p != self.p:
                raise RadicandMismatchError(
                    f"cannot combine elements of Q(sqrt({self.p})) and Q(sqrt({other.p}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(Fraction(other), Fraction(0), self.p)
        return None

    # --- ring operations ---

    def __add__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return QuadScalar(self.a + y.a, self.b + y.b, self.p)

    __radd__ = __add__

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self.a, -self.b, self.p)

    def __sub__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return QuadScalar(self.a - y.a, self.b - y.b, self.p)

    def __rsub__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y - self

    def __mul__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_mul(self, y)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_mul(self, qs_inv(y))

    def __rtruediv__(self, other: object) -> "QuadScalar":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_mul(y, qs_inv(self))

    def __pow__(self, exponent: int) -> "QuadScalar":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else qs_inv(self)
        result = QuadScalar.one(self.p)
        for _ in range(abs(exponent)):
            result = qs_mul(result, base)
        return result

    # --- comparisons ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadScalar):
            return (self.a, self.b, self.p) == (other.a, other.b, other.p)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.p))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __lt__(self, other: object) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_sign(self - y) < 0

    def __le__(self, other: object) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_sign(self - y) <= 0

    def __gt__(self, other: object) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_sign(self - y) > 0

    def __ge__(self, other: object) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return qs_sign(self - y) >= 0

    # --- field structure ---

    @property
    def is_rational(self) -> bool:
        return not self.b

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.p)

    def norm(self) -> Fraction:
        return self.a * self.a - self.p * self.b * self.b

    def sign(self) -> int:
        return qs_sign(self)

    def to_mpf(self):
        """Numeric value as an mpmath float at the current working precision."""
        import mpmath

        return mpmath.mpf(self.a.numerator) / self.a.denominator + (
            mpmath.mpf(self.b.numerator) / self.b.denominator
        ) * mpmath.sqrt(self.p)

    def __float__(self) -> float:
        return float(self.to_mpf())

    def __repr__(self) -> str:
        return f"QuadScalar({render_quad(self)!r})"

    def __str__(self) -> str:
        return render_quad(self)


def sqrt_p(p: int) -> QuadScalar:
    """The element sqrt(p) itself."""
    return QuadScalar(Fraction(0), Fraction(1), p)


# ---------------------------------------------------------------------------
# Field operations
# ---------------------------------------------------------------------------

def qs_normalize(a: Fraction | int, b: Fraction | int, p: int) -> QuadScalar:
    """Canonical form of a + b*sqrt(p); perfect squares fold into a."""
    return QuadScalar(Fraction(a), Fraction(b), p)


def qs_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    if x.p != y.p:
        raise RadicandMismatchError(
            f"cannot multiply elements of Q(sqrt({x.p})) and Q(sqrt({y.p}))"
        )
    return QuadScalar(x.a * y.a + x.p * x.b * y.b, x.a * y.b + x.b * y.a, x.p)


def qs_inv(x: QuadScalar) -> QuadScalar:
    """Inverse as conjugate over norm."""
    norm = x.norm()
    if not norm:
        # a nonzero element has nonzero norm since sqrt(p) is irrational
        # whenever b survives normalization
        raise ZeroDivisionError("inverse of zero in Q(sqrt(p))")
    return QuadScalar(x.a / norm, -x.b / norm, x.p)


def _sgn(value: int) -> int:
    return (value > 0) - (value < 0)


def qs_sign(x: QuadScalar) -> int:
    """Exact sign of a + b*sqrt(p) using integer comparisons only."""
    sa = _sgn(x.a.numerator)
    sb = _sgn(x.b.numerator)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with p*b^2 over a common denominator
    lhs = x.a.numerator ** 2 * x.b.denominator ** 2
    rhs = x.p * x.b.numerator ** 2 * x.a.denominator ** 2
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


# ---------------------------------------------------------------------------
# Text form "a + b*sqrt(p)"
# ---------------------------------------------------------------------------

def render_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_quad(x: QuadScalar) -> str:
    if not x.b:
        return render_rational(x.a)
    radical = f"{render_rational(abs(x.b))}*sqrt({x.p})"
    if not x.a:
        return f"-{radical}" if x.b < 0 else radical
    op = "-" if x.b < 0 else "+"
    return f"{render_rational(x.a)} {op} {radical}"


_RATIONAL = r"\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^(?:(?P<a>[+-]?{_RATIONAL})(?=[+-]|$))?"
    rf"(?:(?P<bsign>[+-])?(?:(?P<b>{_RATIONAL})\*)?sqrt\((?P<p>\d+)\))?$"
)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise QuadParseError(f"bad rational {text!r}: {e}") from e


def parse_quad(text: str, p: int | None = None) -> QuadScalar:
    """Parse the output of `render_quad` (and a few looser spellings).

    `p` is the expected radicand; it is required when the text carries no
    sqrt term.
    """
    compact = re.sub(r"\s+", "", text)
    match = _QUAD_RE.match(compact)
    if not compact or match is None or (match["a"] is None and match["p"] is None):
        raise QuadParseError(f"cannot parse {text!r} as a + b*sqrt(p)")

    a = _parse_rational(match["a"]) if match["a"] else Fraction(0)
    if match["p"] is None:
        if p is None:
            raise QuadParseError(f"no radicand in {text!r} and none supplied")
        return QuadScalar(a, Fraction(0), p)

    parsed_p = int(match["p"])
    if p is not None and parsed_p != p:
        raise RadicandMismatchError(f"{text!r} lives in Q(sqrt({parsed_p})), expected Q(sqrt({p}))")
    b = _parse_rational(match["b"]) if match["b"] else Fraction(1)
    if match["bsign"] == "-":
        b = -b
    return QuadScalar(a, b, parsed_p)
