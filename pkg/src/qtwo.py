"""The q(2) case in closed form.

Basis of the Fock module: v_k = (b+)^k v0 (k >= 0) and w_k = (b+)^(k-1) f+ v0
(k >= 1). Actions and inner products are exact over Q(sqrt(p)); the
orthonormal family phi_k, psi_k involves nested radicals and is handled
with mpmath at a configurable precision.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial, prod

import mpmath

from . import linalg
from .fock import BasisKey, FockState, apply_cao, inner_product
from .report_types import Violation
from .scalar import QuadScalar, sqrt_p
from .superalgebra import CaoId, CaoKind, CaoSign

logger = logging.getLogger(__name__)


class Q2Op(str, Enum):
    B_PLUS = "b+"
    B_MINUS = "b-"
    F_PLUS = "f+"
    F_MINUS = "f-"

    @property
    def cao(self) -> CaoId:
        return CaoId(CaoKind(self.value[0]), CaoSign(self.value[1]), 1)

    @property
    def adjoint(self) -> "Q2Op":
        return Q2Op(self.value[0] + ("-" if self.value[1] == "+" else "+"))


@dataclass(frozen=True, order=True)
class Q2Label:
    kind: str   # "v" or "w"
    k: int

    def __post_init__(self) -> None:
        if self.kind not in ("v", "w"):
            raise ValueError(f"q(2) basis labels are v or w, got {self.kind!r}")
        if self.k < 0 or (self.kind == "w" and self.k < 1):
            raise IndexError(f"{self.kind}_{self.k} is not a basis vector")

    def to_key(self) -> BasisKey:
        if self.kind == "v":
            return BasisKey((self.k,), (0,))
        return BasisKey((self.k - 1,), (1,))

    def __str__(self) -> str:
        return f"{self.kind}{self.k}"


def v(k: int) -> Q2Label:
    return Q2Label("v", k)


def w(k: int) -> Q2Label:
    return Q2Label("w", k)


@dataclass(frozen=True)
class Q2State:
    p: int
    terms: Mapping[Q2Label, QuadScalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for label, c in self.terms.items():
            coeff = c if isinstance(c, QuadScalar) else QuadScalar.rational(c, self.p)
            if coeff:
                clean[label] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, label: Q2Label, p: int) -> "Q2State":
        return cls(p, {label: QuadScalar.one(p)})

    def __add__(self, other: "Q2State") -> "Q2State":
        out = dict(self.terms)
        for label, c in other.terms.items():
            out[label] = out[label] + c if label in out else c
        return Q2State(self.p, out)

    def __sub__(self, other: "Q2State") -> "Q2State":
        return self + other.scale(-1)

    def scale(self, factor) -> "Q2State":
        return Q2State(self.p, {label: factor * c for label, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, label: Q2Label) -> QuadScalar:
        return self.terms.get(label, QuadScalar.zero(self.p))

    def to_fock(self) -> FockState:
        return FockState(1, self.p, {label.to_key(): c for label, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Q2State):
            return NotImplemented
        return self.p == other.p and dict(self.terms) == dict(other.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c if c.is_rational else f'({c})'} {label}" for label, c in sorted(self.terms.items())
        )

    def __str__(self) -> str:
        return self.render()


def from_fock(state: FockState) -> Q2State:
    if state.n != 1:
        raise ValueError(f"q(2) states live in the n=1 module, got n={state.n}")
    terms = {}
    for key, c in state.terms.items():
        label = v(key.k[0]) if key.l[0] == 0 else w(key.k[0] + 1)
        terms[label] = c
    return Q2State(state.p, terms)


# ---------------------------------------------------------------------------
# Exact actions and inner products
# ---------------------------------------------------------------------------

def _act_label(op: Q2Op, label: Q2Label, p: int) -> dict[Q2Label, QuadScalar]:
    k = label.k
    root = sqrt_p(p)
    one = QuadScalar.one(p)
    if op is Q2Op.B_PLUS:
        return {Q2Label(label.kind, k + 1): one}
    if op is Q2Op.F_PLUS:
        return {w(k + 1): one} if label.kind == "v" else {}
    if k == 0:
        return {}
    out: dict[Q2Label, QuadScalar] = {}
    if label.kind == "v":
        if op is Q2Op.B_MINUS:
            out[v(k - 1)] = one * (k * (p - k + 1))
        else:
            out[v(k - 1)] = root * k
            if k >= 2:
                out[w(k - 1)] = one * (-k * (k - 1))
    else:
        if op is Q2Op.B_MINUS:
            out[v(k - 1)] = root
            if k >= 2:
                out[w(k - 1)] = one * ((k - 1) * (p - k))
        else:
            out[v(k - 1)] = one * p
            if k >= 2:
                out[w(k - 1)] = root * (-(k - 1))
    return out


def q2_act(op: Q2Op | str, state: Q2State) -> Q2State:
    op = Q2Op(op)
    out = Q2State(state.p)
    for label, c in state.terms.items():
        out = out + Q2State(state.p, _act_label(op, label, state.p)).scale(c)
    return out


def falling(p: int, k: int) -> int:
    """p (p-1) ... (p-k+1)."""
    return prod((p - i for i in range(k)), start=1)


def q2_inner(x: Q2Label, y: Q2Label, p: int) -> QuadScalar:
    if x.k != y.k:
        return QuadScalar.zero(p)
    k = x.k
    base = QuadScalar.rational(falling(p, k), p)
    if x.kind == y.kind == "v":
        return base * factorial(k)
    if x.kind == y.kind == "w":
        return base * factorial(k - 1)
    return base * factorial(k) / sqrt_p(p)


def q2_inner_states(a: Q2State, b: Q2State) -> QuadScalar:
    total = QuadScalar.zero(a.p)
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            total = total + ca * cb * q2_inner(la, lb, a.p)
    return total


def level_gram_det(k: int, p: int) -> QuadScalar:
    """det of the Gram matrix of (v_k, w_k)."""
    vv, ww, vw = q2_inner(v(k), v(k), p), q2_inner(w(k), w(k), p), q2_inner(v(k), w(k), p)
    return vv * ww - vw * vw


def expected_level_gram_det(k: int, p: int) -> QuadScalar:
    value = factorial(k) * factorial(k - 1) * falling(p, k) ** 2 * (1 - Fraction(k, p))
    return QuadScalar.rational(value, p)


# ---------------------------------------------------------------------------
# Primitive vectors
# ---------------------------------------------------------------------------

def q2_primitive(p: int) -> Q2State:
    """v_p - sqrt(p) w_p."""
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    return Q2State(p, {v(p): QuadScalar.one(p), w(p): -sqrt_p(p)})


def is_primitive(state: Q2State) -> bool:
    return q2_act(Q2Op.B_MINUS, state).is_zero() and q2_act(Q2Op.F_MINUS, state).is_zero()


def q2_primitive_candidates(p: int, max_level: int | None = None) -> dict[int, list[Q2State]]:
    """Exact solutions of b^- x = f^- x = 0 with x = α v_k + β w_k, per level k >= 1."""
    top = p if max_level is None else max_level
    out: dict[int, list[Q2State]] = {}
    for k in range(1, top + 1):
        columns = [Q2State.of(v(k), p), Q2State.of(w(k), p)]
        targets = [v(k - 1)] + ([w(k - 1)] if k >= 2 else [])
        rows = []
        for op in (Q2Op.B_MINUS, Q2Op.F_MINUS):
            images = [q2_act(op, col) for col in columns]
            for target in targets:
                rows.append([img.coeff(target) for img in images])
        solutions = []
        for vec in linalg.nullspace(rows):
            solutions.append(Q2State(p, {v(k): vec[0], w(k): vec[1]}))
        if solutions:
            out[k] = solutions
    return out


# ---------------------------------------------------------------------------
# Dispin decomposition
# ---------------------------------------------------------------------------

def gl2_weights(highest: tuple[int, int]) -> list[tuple[int, int]]:
    a, b = highest
    return [(a - i, b + i) for i in range(a - b + 1)]


def dispin_weights(p: int) -> list[tuple[int, int]]:
    """Weights of (p, 0), plus (p-1, 1) when p > 1, as a sorted multiset."""
    out = gl2_weights((p, 0))
    if p > 1:
        out += gl2_weights((p - 1, 1))
    return sorted(out)


# ---------------------------------------------------------------------------
# Orthonormal basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthoVec:
    kind: str   # "phi" or "psi"
    k: int
    cv: mpmath.mpf
    cw: mpmath.mpf

    @property
    def name(self) -> str:
        return f"{self.kind}{self.k}"

    def components(self) -> list[tuple[Q2Label, mpmath.mpf]]:
        out = [(v(self.k), self.cv)]
        if self.k >= 1 and self.cw:
            out.append((w(self.k), self.cw))
        return out


def _norm_factor(k: int, p: int, sign: int) -> mpmath.mpf:
    ratio = mpmath.sqrt(mpmath.mpf(k) / p)
    return mpmath.sqrt(
        mpmath.mpf(factorial(p - k)) / (2 * factorial(k) * factorial(p) * (1 + sign * ratio))
    )


def q2_ortho_basis(p: int, dps: int = 40) -> list[OrthoVec]:
    """psi_0 = v0, then phi_k (k = 1..p) and psi_k (k = 1..p-1)."""
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    with mpmath.workdps(dps):
        out = [OrthoVec("psi", 0, mpmath.mpf(1), mpmath.mpf(0))]
        for k in range(1, p + 1):
            n_plus = _norm_factor(k, p, 1)
            out.append(OrthoVec("phi", k, n_plus, n_plus * mpmath.sqrt(k)))
            if k < p:
                n_minus = _norm_factor(k, p, -1)
                out.append(OrthoVec("psi", k, n_minus, -n_minus * mpmath.sqrt(k)))
    return sorted(out, key=lambda x: (x.k, x.kind))


def numeric_inner(a: OrthoVec, b: OrthoVec, p: int) -> mpmath.mpf:
    total = mpmath.mpf(0)
    for la, ca in a.components():
        for lb, cb in b.components():
            value = q2_inner(la, lb, p)
            if value:
                total += ca * cb * value.to_mpf()
    return total


def orthonormality_residual(p: int, dps: int = 40) -> float:
    with mpmath.workdps(dps):
        basis = q2_ortho_basis(p, dps)
        worst = mpmath.mpf(0)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                target = 1 if i == j else 0
                worst = max(worst, abs(numeric_inner(a, b, p) - target))
        return float(worst)


def transported(op: Q2Op, src: OrthoVec, dst: OrthoVec, p: int) -> mpmath.mpf:
    """<dst | op src> computed from the exact actions."""
    total = mpmath.mpf(0)
    for label, c in src.components():
        image = Q2State(p, _act_label(op, label, p))
        for img_label, img_c in image.terms.items():
            for dst_label, dc in dst.components():
                value = q2_inner(img_label, dst_label, p)
                if value:
                    total += c * dc * (img_c * value).to_mpf()
    return total


def _displayed_plus(op: Q2Op, src: OrthoVec, dst: OrthoVec, p: int) -> mpmath.mpf:
    """Closed-form coefficient of dst in op(src) for op in {b+, f+}, dst one level up.

    The closed forms assume phi_0 = psi_0 = v0 / sqrt(2); with psi_0 = v0
    the source entries at k = 0 pick up a factor sqrt(2).
    """
    if dst.k != src.k + 1:
        return mpmath.mpf(0)
    k = src.k
    P, K, K1 = mpmath.sqrt(p), mpmath.sqrt(k), mpmath.sqrt(k + 1)
    src_term = P - K if src.kind == "phi" else P + K
    dst_term = P + K1 if dst.kind == "phi" else P - K1
    radical = mpmath.sqrt(max(src_term * dst_term, mpmath.mpf(0)))
    if op is Q2Op.F_PLUS:
        value = radical / 2 if dst.kind == "phi" else -radical / 2
    else:
        same = src.kind == dst.kind
        value = (K1 + K if same else K1 - K) * radical / 2
    if k == 0:
        value *= mpmath.sqrt(2)
    return value


def displayed(op: Q2Op, src: OrthoVec, dst: OrthoVec, p: int) -> mpmath.mpf:
    if op in (Q2Op.B_PLUS, Q2Op.F_PLUS):
        return _displayed_plus(op, src, dst, p)
    return _displayed_plus(op.adjoint, dst, src, p)


def displayed_f_minus_phi(k: int, p: int) -> dict[str, mpmath.mpf]:
    """Explicit f^- phi_k; at k = 1 the two level-0 terms merge onto psi_0 = v0."""
    P, K, K0 = mpmath.sqrt(p), mpmath.sqrt(k), mpmath.sqrt(k - 1)
    to_phi = mpmath.sqrt((P - K0) * (P + K)) / 2
    to_psi = mpmath.sqrt((P + K0) * (P + K)) / 2
    if k == 1:
        return {"psi0": (to_phi + to_psi) / mpmath.sqrt(2)}
    return {f"phi{k - 1}": to_phi, f"psi{k - 1}": to_psi}


@dataclass(frozen=True)
class MatrixElement:
    op: Q2Op
    source: str
    target: str
    displayed: mpmath.mpf
    transported: mpmath.mpf

    @property
    def residual(self) -> float:
        return float(abs(self.displayed - self.transported))


def q2_matrix_elements(op: Q2Op | str, p: int, dps: int = 40) -> list[MatrixElement]:
    """Closed-form matrix elements against the transported action, op in all four CAOs."""
    op = Q2Op(op)
    step = 1 if op in (Q2Op.B_PLUS, Q2Op.F_PLUS) else -1
    out = []
    with mpmath.workdps(dps):
        basis = q2_ortho_basis(p, dps)
        for src in basis:
            for dst in basis:
                if dst.k != src.k + step:
                    continue
                out.append(MatrixElement(
                    op, src.name, dst.name,
                    displayed(op, src, dst, p),
                    transported(op, src, dst, p),
                ))
    return out


def f_minus_phi_residual(p: int, dps: int = 40) -> float:
    with mpmath.workdps(dps):
        basis = {b.name: b for b in q2_ortho_basis(p, dps)}
        worst = mpmath.mpf(0)
        for k in range(1, p + 1):
            src = basis[f"phi{k}"]
            for name, value in displayed_f_minus_phi(k, p).items():
                if name in basis:
                    worst = max(worst, abs(value - transported(Q2Op.F_MINUS, src, basis[name], p)))
        return float(worst)


def adjoint_residual(p: int, dps: int = 40) -> float:
    """max |<e_i| b- e_j> - <e_j| b+ e_i>| and likewise for f."""
    with mpmath.workdps(dps):
        basis = q2_ortho_basis(p, dps)
        worst = mpmath.mpf(0)
        for minus, plus in ((Q2Op.B_MINUS, Q2Op.B_PLUS), (Q2Op.F_MINUS, Q2Op.F_PLUS)):
            for a in basis:
                for b in basis:
                    diff = transported(minus, b, a, p) - transported(plus, a, b, p)
                    worst = max(worst, abs(diff))
        return float(worst)


# ---------------------------------------------------------------------------
# Agreement with the general Fock module
# ---------------------------------------------------------------------------

def closed_form_violations(p: int, max_k: int) -> list[Violation]:
    """q(2) actions and inner products against the n = 1 Fock module."""
    out = []
    labels = [v(k) for k in range(max_k + 1)] + [w(k) for k in range(1, max_k + 1)]
    for label in labels:
        state = Q2State.of(label, p)
        for op in Q2Op:
            mine = q2_act(op, state)
            general = from_fock(apply_cao(op.cao, state.to_fock()))
            if mine != general:
                out.append(Violation(
                    relation="q2-action",
                    instance=f"{op.value} {label}",
                    expected=general.render(),
                    actual=mine.render(),
                ))
    for a in labels:
        for b in labels:
            mine = q2_inner(a, b, p)
            general = inner_product(Q2State.of(a, p).to_fock(), Q2State.of(b, p).to_fock())
            if mine != general:
                out.append(Violation(
                    relation="q2-inner-product",
                    instance=f"<{a}|{b}>",
                    expected=str(general),
                    actual=str(mine),
                ))
    return out
