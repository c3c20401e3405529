"""The Lie superalgebra q(n+1) from its structure constants.

Basis elements e[i,j]^σ (0 <= i, j <= n, σ in {0, 1}) with the superbracket

    [[e_ij^σ, e_kl^θ]] = δ_jk e_il^(σ+θ) - (-1)^(σθ) δ_il e_kj^(σ+θ)

plus the defining matrix representation, the root system, the
creation/annihilation embedding and the brute-force identity suites
that back `check-algebra`.
"""

import itertools
import logging
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction

from . import linalg
from .report_types import Violation
from .scalar import QuadScalar, RadicandMismatchError

logger = logging.getLogger(__name__)


class MixedParityError(ValueError):
    """The bracket sign rule needs parity-homogeneous arguments."""


class Parity(IntEnum):
    EVEN = 0
    ODD = 1


def add_parity(*parities: int) -> Parity:
    return Parity(sum(int(x) for x in parities) % 2)


def super_sign(a: int, b: int) -> int:
    """(-1)^(ab)."""
    return -1 if (int(a) * int(b)) % 2 else 1


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GeneratorId:
    """Basis symbol e[i,j]^σ."""
    i: int
    j: int
    parity: Parity

    def __post_init__(self) -> None:
        if self.i < 0 or self.j < 0:
            raise ValueError(f"negative index in e[{self.i},{self.j}]")
        object.__setattr__(self, "parity", Parity(self.parity))

    def check_rank(self, n: int) -> None:
        if self.i > n or self.j > n:
            raise ValueError(f"{self} does not belong to q({n + 1})")

    def render(self) -> str:
        return f"e[{self.i},{self.j}]^{int(self.parity)}"

    def __str__(self) -> str:
        return self.render()


_GENERATOR_RE = re.compile(r"^e\[(\d+),(\d+)\]\^([01])$")


def parse_generator(text: str) -> GeneratorId:
    match = _GENERATOR_RE.match(text.replace(" ", ""))
    if match is None:
        raise ValueError(f"cannot parse generator {text!r}; expected e[i,j]^σ")
    return GeneratorId(int(match[1]), int(match[2]), Parity(int(match[3])))


def generators(n: int) -> list[GeneratorId]:
    """All 2(n+1)^2 basis elements in a fixed order."""
    return [
        GeneratorId(i, j, par)
        for par in Parity
        for i in range(n + 1)
        for j in range(n + 1)
    ]


# ---------------------------------------------------------------------------
# Creation / annihilation operators
# ---------------------------------------------------------------------------

class CaoKind(str, Enum):
    B = "b"   # even
    F = "f"   # odd


class CaoSign(str, Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class CaoId:
    kind: CaoKind
    sign: CaoSign
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"CAO index must be >= 1, got {self.index}")
        object.__setattr__(self, "kind", CaoKind(self.kind))
        object.__setattr__(self, "sign", CaoSign(self.sign))

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if self.kind is CaoKind.B else Parity.ODD

    @property
    def is_creation(self) -> bool:
        return self.sign is CaoSign.PLUS

    def render(self) -> str:
        return f"{self.kind.value}{self.index}{self.sign.value}"

    def __str__(self) -> str:
        return self.render()


def all_caos(n: int) -> list[CaoId]:
    return [CaoId(kind, sign, i) for i in range(1, n + 1) for kind in CaoKind for sign in CaoSign]


def creators(n: int) -> list[CaoId]:
    return [CaoId(kind, CaoSign.PLUS, i) for i in range(1, n + 1) for kind in CaoKind]


def annihilators(n: int) -> list[CaoId]:
    return [CaoId(kind, CaoSign.MINUS, i) for i in range(1, n + 1) for kind in CaoKind]


def cao_embed(c: CaoId) -> GeneratorId:
    """b_i^+ -> e[i,0]^0, b_i^- -> e[0,i]^0, f_i^+ -> e[i,0]^1, f_i^- -> e[0,i]^1."""
    if c.is_creation:
        return GeneratorId(c.index, 0, c.parity)
    return GeneratorId(0, c.index, c.parity)


def as_cao(g: GeneratorId) -> CaoId | None:
    """Inverse of `cao_embed` on generators that are CAOs."""
    kind = CaoKind.B if g.parity is Parity.EVEN else CaoKind.F
    if g.j == 0 and g.i > 0:
        return CaoId(kind, CaoSign.PLUS, g.i)
    if g.i == 0 and g.j > 0:
        return CaoId(kind, CaoSign.MINUS, g.j)
    return None


# ---------------------------------------------------------------------------
# Algebra elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    """Finite linear combination of generators with coefficients in Q(sqrt(p))."""
    terms: Mapping[GeneratorId, QuadScalar] = field(default_factory=dict)
    p: int = 1

    def __post_init__(self) -> None:
        clean: dict[GeneratorId, QuadScalar] = {}
        for g, c in self.terms.items():
            coeff = _as_scalar(c, self.p)
            if coeff:
                clean[g] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, g: GeneratorId, coeff: int | Fraction | QuadScalar = 1, p: int = 1) -> "AlgebraElement":
        return cls({g: _as_scalar(coeff, p)}, p)

    @classmethod
    def zero(cls, p: int = 1) -> "AlgebraElement":
        return cls({}, p)

    @property
    def parity(self) -> Parity | None:
        """Common parity of all terms; None when mixed (or for zero)."""
        parities = {g.parity for g in self.terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    @property
    def declared_parity(self) -> str:
        par = self.parity
        if par is not None:
            return "even" if par is Parity.EVEN else "odd"
        return "zero" if not self.terms else "mixed"

    def is_zero(self) -> bool:
        return not self.terms

    def rebase(self, p: int) -> "AlgebraElement":
        """Move rational coefficients into Q(sqrt(p))."""
        if p == self.p:
            return self
        moved = {}
        for g, c in self.terms.items():
            if not c.is_rational:
                raise RadicandMismatchError(f"cannot move {c} into Q(sqrt({p}))")
            moved[g] = QuadScalar.rational(c.a, p)
        return AlgebraElement(moved, p)

    def homogeneous_parts(self) -> dict[Parity, "AlgebraElement"]:
        parts: dict[Parity, dict[GeneratorId, QuadScalar]] = {}
        for g, c in self.terms.items():
            parts.setdefault(g.parity, {})[g] = c
        return {par: AlgebraElement(t, self.p) for par, t in parts.items()}

    def _same_field(self, other: "AlgebraElement") -> None:
        if other.p != self.p:
            raise RadicandMismatchError(f"elements over Q(sqrt({self.p})) and Q(sqrt({other.p}))")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same_field(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return AlgebraElement(out, self.p)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({g: -c for g, c in self.terms.items()}, self.p)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor: int | Fraction | QuadScalar) -> "AlgebraElement":
        f = _as_scalar(factor, self.p)
        return AlgebraElement({g: f * c for g, c in self.terms.items()}, self.p)

    def __rmul__(self, factor: int | Fraction | QuadScalar) -> "AlgebraElement":
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.p == other.p and dict(self.terms) == dict(other.terms)

    def coordinates(self, basis: list[GeneratorId]) -> list[QuadScalar]:
        zero = QuadScalar.zero(self.p)
        return [self.terms.get(g, zero) for g in basis]

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            if c == 1:
                parts.append(f"+ {g}")
            elif c == -1:
                parts.append(f"- {g}")
            elif c.is_rational and c < 0:
                parts.append(f"- {-c}*{g}")
            else:
                coeff = str(c) if c.is_rational else f"({c})"
                parts.append(f"+ {coeff}*{g}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.render()


def _as_scalar(value: int | Fraction | QuadScalar, p: int) -> QuadScalar:
    if isinstance(value, QuadScalar):
        if value.p != p:
            raise RadicandMismatchError(f"coefficient {value} is not in Q(sqrt({p}))")
        return value
    return QuadScalar.rational(value, p)


def center_element(n: int, p: int = 1) -> AlgebraElement:
    """I = sum_i e[i,i]^0, spanning the center."""
    return AlgebraElement({GeneratorId(i, i, Parity.EVEN): 1 for i in range(n + 1)}, p)


# ---------------------------------------------------------------------------
# Superbracket
# ---------------------------------------------------------------------------

def bracket(x: GeneratorId, y: GeneratorId, p: int = 1, n: int | None = None) -> AlgebraElement:
    """Superbracket of two basis elements."""
    if n is not None:
        x.check_rank(n)
        y.check_rank(n)
    par = add_parity(x.parity, y.parity)
    terms: dict[GeneratorId, QuadScalar] = {}
    if x.j == y.i:
        g = GeneratorId(x.i, y.j, par)
        terms[g] = QuadScalar.one(p)
    if x.i == y.j:
        g = GeneratorId(y.i, x.j, par)
        term = QuadScalar.rational(-super_sign(x.parity, y.parity), p)
        terms[g] = terms[g] + term if g in terms else term
    return AlgebraElement(terms, p)


def bracket_elements(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of `bracket` to homogeneous elements."""
    if u.p != v.p:
        raise RadicandMismatchError(f"elements over Q(sqrt({u.p})) and Q(sqrt({v.p}))")
    if u.is_zero() or v.is_zero():
        return AlgebraElement.zero(u.p)
    if u.parity is None or v.parity is None:
        raise MixedParityError(
            f"bracket of mixed-parity elements: {u.declared_parity} with {v.declared_parity}"
        )
    out = AlgebraElement.zero(u.p)
    for gx, cx in u.terms.items():
        for gy, cy in v.terms.items():
            out = out + bracket(gx, gy, u.p).scale(cx * cy)
    return out


# ---------------------------------------------------------------------------
# Defining representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperMatrix:
    """Square matrix of order 2(n+1) with rational entries."""
    order: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.order or any(len(r) != self.order for r in self.entries):
            raise ValueError(f"entries are not a square matrix of order {self.order}")

    @classmethod
    def from_rows(cls, rows: list[list]) -> "SuperMatrix":
        return cls(len(rows), tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def zeros(cls, order: int) -> "SuperMatrix":
        return cls.from_rows([[0] * order for _ in range(order)])

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix.from_rows(linalg.matmul(self.rows(), other.rows()))

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix.from_rows(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + other.scale(-1)

    def scale(self, factor: int | Fraction) -> "SuperMatrix":
        return SuperMatrix.from_rows(linalg.scale(self.rows(), Fraction(factor)))

    def nonzero(self) -> dict[tuple[int, int], Fraction]:
        return {
            (r, c): x
            for r, row in enumerate(self.entries)
            for c, x in enumerate(row)
            if x
        }


def defining_rep(x: GeneratorId, n: int) -> SuperMatrix:
    """Even e_ij -> diag(E_ij, E_ij); odd e_ij -> antidiag(E_ij, E_ij)."""
    x.check_rank(n)
    size = n + 1
    rows = [[0] * (2 * size) for _ in range(2 * size)]
    if x.parity is Parity.EVEN:
        rows[x.i][x.j] = 1
        rows[size + x.i][size + x.j] = 1
    else:
        rows[x.i][size + x.j] = 1
        rows[size + x.i][x.j] = 1
    return SuperMatrix.from_rows(rows)


def rep_of_element(u: AlgebraElement, n: int) -> SuperMatrix:
    """Image of an element with rational coefficients."""
    out = SuperMatrix.zeros(2 * (n + 1))
    for g, c in u.terms.items():
        if not c.is_rational:
            raise ValueError(f"coefficient {c} is irrational; the defining representation is over Q")
        out = out + defining_rep(g, n).scale(c.a)
    return out


def supercommutator_matrix(a: SuperMatrix, b: SuperMatrix, pa: int, pb: int) -> SuperMatrix:
    return a @ b - (b @ a).scale(super_sign(pa, pb))


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class RootInfo:
    vector: tuple[int, ...]
    even_multiplicity: int
    odd_multiplicity: int


def _eps_difference(n: int, i: int, j: int) -> tuple[int, ...]:
    vec = [0] * (n + 1)
    vec[i] += 1
    vec[j] -= 1
    return tuple(vec)


def roots(n: int) -> list[RootInfo]:
    """ε_i - ε_j (i != j) once even and once odd; the zero root is odd only."""
    out = [
        RootInfo(_eps_difference(n, i, j), 1, 1)
        for i in range(n + 1)
        for j in range(n + 1)
        if i != j
    ]
    out.append(RootInfo(tuple([0] * (n + 1)), 0, n + 1))
    return sorted(out)


def positive_roots(n: int) -> list[RootInfo]:
    return [
        RootInfo(_eps_difference(n, i, j), 1, 1)
        for i in range(n + 1)
        for j in range(i + 1, n + 1)
    ]


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

def antisymmetry_violations(n: int) -> list[Violation]:
    out = []
    gens = generators(n)
    for x, y in itertools.product(gens, repeat=2):
        lhs = bracket(x, y)
        rhs = bracket(y, x).scale(-super_sign(x.parity, y.parity))
        if lhs != rhs:
            out.append(Violation(
                relation="super-antisymmetry",
                instance=f"x={x}, y={y}",
                expected=rhs.render(),
                actual=lhs.render(),
            ))
    return out


def super_jacobi_violations(n: int) -> list[Violation]:
    """(-1)^(|x||z|)[[x,[[y,z]]]] + cyclic = 0 on all generator triples."""
    out = []
    gens = generators(n)
    for x, y, z in itertools.product(gens, repeat=3):
        total = (
            bracket_elements(AlgebraElement.of(x), bracket(y, z)).scale(super_sign(x.parity, z.parity))
            + bracket_elements(AlgebraElement.of(y), bracket(z, x)).scale(super_sign(y.parity, x.parity))
            + bracket_elements(AlgebraElement.of(z), bracket(x, y)).scale(super_sign(z.parity, y.parity))
        )
        if not total.is_zero():
            out.append(Violation(
                relation="super-jacobi",
                instance=f"x={x}, y={y}, z={z}",
                expected="0",
                actual=total.render(),
            ))
    return out


def defining_rep_violations(n: int) -> list[Violation]:
    """rho([[x,y]]) == rho(x)rho(y) - (-1)^(σθ) rho(y)rho(x) for all pairs."""
    out = []
    gens = generators(n)
    images = {g: defining_rep(g, n) for g in gens}
    for x, y in itertools.product(gens, repeat=2):
        lhs = rep_of_element(bracket(x, y), n)
        rhs = supercommutator_matrix(images[x], images[y], x.parity, y.parity)
        if lhs != rhs:
            out.append(Violation(
                relation="defining-representation",
                instance=f"x={x}, y={y}",
                expected=str(sorted(rhs.nonzero().items())),
                actual=str(sorted(lhs.nonzero().items())),
            ))
    return out


def _a(sign: CaoSign, i: int, par: int) -> GeneratorId:
    return cao_embed(CaoId(CaoKind.B if par == 0 else CaoKind.F, sign, i))


def _q_statistics_instances(
    n: int, sign_fault: bool = False,
) -> Iterator[tuple[str, str, AlgebraElement, AlgebraElement]]:
    """Yield (relation, instance, lhs, rhs) for every index/parity tuple."""
    fault = -1 if sign_fault else 1
    idx = range(1, n + 1)
    pars = (0, 1)
    plus, minus = CaoSign.PLUS, CaoSign.MINUS

    for sign in (plus, minus):
        for i, j in itertools.product(idx, repeat=2):
            for s, t in itertools.product(pars, repeat=2):
                yield (
                    f"same-kind-supercommute({sign.value})",
                    f"i={i}, j={j}, σ={s}, θ={t}",
                    bracket(_a(sign, i, s), _a(sign, j, t)),
                    AlgebraElement.zero(),
                )

    for i, j, k in itertools.product(idx, repeat=3):
        for s, t, w in itertools.product(pars, repeat=3):
            inner = bracket(_a(plus, i, s), _a(minus, j, t))
            par = (s + t + w) % 2
            instance = f"i={i}, j={j}, k={k}, σ={s}, θ={t}, ω={w}"

            lhs = bracket_elements(inner, AlgebraElement.of(_a(plus, k, w)))
            rhs = AlgebraElement.zero()
            if j == k:
                rhs = rhs + AlgebraElement.of(_a(plus, i, par))
            if i == j:
                rhs = rhs + AlgebraElement.of(_a(plus, k, par), fault * (-1) ** (s * t + t * w + w * s))
            yield "triple-creation", instance, lhs, rhs

            lhs = bracket_elements(inner, AlgebraElement.of(_a(minus, k, w)))
            rhs = AlgebraElement.zero()
            if i == j:
                rhs = rhs + AlgebraElement.of(_a(minus, k, par), -((-1) ** (s * t)))
            if i == k:
                rhs = rhs + AlgebraElement.of(_a(minus, j, par), -((-1) ** (t * w + w * s)))
            yield "triple-annihilation", instance, lhs, rhs


def verify_q_statistics(n: int, sign_fault: bool = False) -> list[Violation]:
    """Expand the quadratic and triple CAO relations through `bracket`.

    `sign_fault` flips the sign of the δ_ij term in the triple-creation
    right-hand side; it exists so callers can confirm violations surface.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = []
    checked = 0
    for relation, instance, lhs, rhs in _q_statistics_instances(n, sign_fault):
        checked += 1
        if lhs != rhs:
            out.append(Violation(relation=relation, instance=instance, expected=rhs.render(), actual=lhs.render()))
    logger.debug("q-statistics n=%d: %d instances, %d violations", n, checked, len(out))
    return out


def cao_span_dimension(n: int) -> int:
    """Rank over Q of the CAOs together with all their pairwise brackets."""
    cao_gens = [cao_embed(c) for c in all_caos(n)]
    elements: list[AlgebraElement] = [AlgebraElement.of(g) for g in cao_gens]
    for x, y in itertools.product(cao_gens, repeat=2):
        elements.append(bracket(x, y))
    basis = generators(n)
    rows = [[c.a for c in e.coordinates(basis)] for e in elements if not e.is_zero()]
    return linalg.rank(rows)


def expected_sq_dimension(n: int) -> int:
    return 2 * (n + 1) ** 2 - 1
