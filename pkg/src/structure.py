"""Maximal submodule M_p and the simple quotient V_p = V̄_p / M_p.

Weight spaces are labelled by the occupation vector m = (m_1, ..., m_n);
the weight is (p - Σm, m_1, ..., m_n) and the level is Σm. V_p is handled
through representative keys: every V_p computation is exact linear
algebra modulo span(mp_basis).
"""

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

from . import linalg
from .binary_matrix import matrix_A_entries
from .fock import (
    BasisKey,
    FockState,
    Weight,
    apply_annihilate,
    apply_cao,
    inner_product,
    key_inner,
    keys_of_weight,
    occupations_at_level,
    occupations_of,
    x_vector,
)
from .report_types import Violation
from .scalar import QuadScalar, qs_sign, sqrt_p
from .superalgebra import all_caos, annihilators

logger = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """An operation was called outside its stated hypothesis."""


def _occupations(weight: Sequence[int], n: int, p: int) -> tuple[int, ...]:
    m = occupations_of(weight, n, p)
    if m is None:
        raise PreconditionError(f"{tuple(weight)} is not a weight of the Fock module for n={n}, p={p}")
    return m


def weight_from_occupations(m: Sequence[int], p: int) -> Weight:
    return (p - sum(m),) + tuple(m)


# ---------------------------------------------------------------------------
# Multiplicities
# ---------------------------------------------------------------------------

def mult_bar(weight: Sequence[int], n: int, p: int) -> int:
    m = occupations_of(weight, n, p)
    if m is None:
        return 0
    return 2 ** sum(1 for x in m if x > 0)


def vp_mult(weight: Sequence[int], n: int, p: int) -> int:
    m = occupations_of(weight, n, p)
    if m is None:
        return 0
    lev = sum(m)
    r = sum(1 for x in m if x > 0)
    if lev < p:
        return 2 ** r
    if lev == p:
        return 2 ** (r - 1)
    return 0


def vp_weights(n: int, p: int) -> list[Weight]:
    """All weights of V_p, by level then lexicographically."""
    return [weight_from_occupations(m, p) for lev in range(p + 1) for m in occupations_at_level(n, lev)]


@dataclass(frozen=True)
class WeightSpaceInfo:
    weight: Weight
    level: int
    r: int
    dim_bar: int
    dim_vp: int
    basis_keys: list[BasisKey] = field(default_factory=list)


def weight_space_info(weight: Sequence[int], n: int, p: int) -> WeightSpaceInfo:
    m = _occupations(weight, n, p)
    return WeightSpaceInfo(
        weight=tuple(weight),
        level=sum(m),
        r=sum(1 for x in m if x > 0),
        dim_bar=mult_bar(weight, n, p),
        dim_vp=vp_mult(weight, n, p),
        basis_keys=keys_of_weight(m),
    )


def dim_vp(n: int, p: int) -> int:
    if p < 1:
        raise PreconditionError(f"p must be a positive integer, got {p}")
    return sum(comb(p - 1, i) * comb(p + n - i, n - i) for i in range(n + 1))


# ---------------------------------------------------------------------------
# M_p and representatives
# ---------------------------------------------------------------------------

def coordinates(states: Sequence[FockState], keys: Sequence[BasisKey]) -> list[list[QuadScalar]]:
    return [[s.coeff(key) for key in keys] for s in states]


def mp_basis(weight: Sequence[int], n: int, p: int, level_cap: int | None = None) -> list[FockState]:
    """A basis of M_p at this weight.

    Level < p: empty. Level p: an independent subset of the X-vectors
    (d_m / 2 of them). Level > p: every basis key.
    """
    m = _occupations(weight, n, p)
    lev = sum(m)
    if level_cap is not None and lev > level_cap:
        raise PreconditionError(f"weight {tuple(weight)} lies above the level cap {level_cap}")
    keys = keys_of_weight(m)
    if lev < p:
        return []
    if lev > p:
        return [FockState.basis(key, p) for key in keys]
    xs = [x_vector(key, p) for key in keys]
    chosen = linalg.independent_rows(coordinates(xs, keys))
    return [xs[i] for i in chosen]


def vp_representatives(weight: Sequence[int], n: int, p: int) -> list[BasisKey]:
    """Keys whose classes form a basis of V_p at this weight.

    At level p the keys with l_j = 1 are kept, j being the last position
    with m_j > 0.
    """
    m = _occupations(weight, n, p)
    lev = sum(m)
    if lev > p:
        raise PreconditionError(f"V_p has no vectors of weight {tuple(weight)} (level {lev} > p={p})")
    keys = keys_of_weight(m)
    if lev < p:
        return keys
    j = max(i for i, x in enumerate(m) if x > 0)
    return [key for key in keys if key.l[j] == 1]


def quotient_dimension(weight: Sequence[int], n: int, p: int) -> int:
    """Rank of the representatives together with M_p; equals d_m when they complement it."""
    m = _occupations(weight, n, p)
    keys = keys_of_weight(m)
    reps = [FockState.basis(key, p) for key in vp_representatives(weight, n, p)]
    return linalg.rank(coordinates(reps + mp_basis(weight, n, p), keys))


# ---------------------------------------------------------------------------
# gl(n+1) content
# ---------------------------------------------------------------------------

def gl_decomposition(n: int, p: int) -> list[Weight]:
    """Highest weights (p - i, 1^i, 0, ...) for i = 0 .. min(n, p - 1)."""
    if p < 1:
        raise PreconditionError(f"p must be a positive integer, got {p}")
    return [(p - i,) + (1,) * i + (0,) * (n - i) for i in range(min(n, p - 1) + 1)]


def gl_dimension(highest: Sequence[int]) -> int:
    """Weyl dimension prod_{i<j} (λ_i - λ_j + j - i) / (j - i)."""
    size = len(highest)
    value = prod(
        (Fraction(highest[i] - highest[j] + j - i, j - i) for i in range(size) for j in range(i + 1, size)),
        start=Fraction(1),
    )
    return int(value)


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GramMatrix:
    weight: Weight
    basis: list[BasisKey]
    entries: list[list[QuadScalar]]

    @property
    def order(self) -> int:
        return len(self.basis)

    def render(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"


def _gram_over(weight: Sequence[int], keys: list[BasisKey], p: int) -> GramMatrix:
    entries = [[key_inner(a, b, p) for b in keys] for a in keys]
    return GramMatrix(tuple(weight), keys, entries)


def gram(weight: Sequence[int], n: int, p: int) -> GramMatrix:
    """Gram matrix of the V_p representatives."""
    return _gram_over(weight, vp_representatives(weight, n, p), p)


def full_gram(weight: Sequence[int], n: int, p: int) -> GramMatrix:
    """Gram matrix over all d_m keys of V̄_p at this weight."""
    return _gram_over(weight, keys_of_weight(_occupations(weight, n, p)), p)


@dataclass(frozen=True)
class Certificate:
    positive: bool
    minors: list[QuadScalar]

    def __bool__(self) -> bool:
        return self.positive


def is_positive_definite(g: GramMatrix, p: int | None = None) -> Certificate:
    """Sylvester criterion with exact leading minors."""
    if not linalg.is_symmetric(g.entries):
        raise PreconditionError(f"Gram matrix at {g.weight} is not symmetric")
    radicand = p if p is not None else getattr(g.entries[0][0] if g.entries else None, "p", 1)
    minors = [
        x if isinstance(x, QuadScalar) else QuadScalar.rational(x, radicand)
        for x in linalg.leading_minors(g.entries)
    ]
    return Certificate(all(qs_sign(x) > 0 for x in minors), minors)


def gram_closed_form_check(weight: Sequence[int], n: int, p: int) -> bool:
    """H == sqrt(p) diag(d) A(sqrt(p); m)^(-T) for level < p and every m_i > 0.

    d(k, l) = k_1! ... k_n! (p - 1)(p - 2) ... (p - Σm).
    """
    m = _occupations(weight, n, p)
    lev = sum(m)
    if any(x == 0 for x in m):
        raise PreconditionError(f"closed form needs every m_i > 0, got m={m}")
    if lev >= p:
        raise PreconditionError(f"closed form needs level < p, got level {lev} with p={p}")
    keys = keys_of_weight(m)
    H = _gram_over(weight, keys, p).entries

    root = sqrt_p(p)
    zero = QuadScalar.zero(p)
    t = [QuadScalar.rational(x, p) for x in m]
    a_neg = matrix_A_entries(-root, t, zero)
    denom = sum(t, zero) - root * root
    falling = prod((p - step for step in range(1, lev + 1)), start=1)
    d = [prod((factorial(x) for x in key.k), start=1) * falling for key in keys]

    order = len(keys)
    for a in range(order):
        for b in range(order):
            expected = root * d[a] * a_neg[b][a] / denom
            if H[a][b] != expected:
                logger.debug("closed form mismatch at %s entry (%d,%d): %s vs %s", weight, a, b, H[a][b], expected)
                return False
    return True


# ---------------------------------------------------------------------------
# Singular vector and generation
# ---------------------------------------------------------------------------

def singular_vector(n: int, p: int) -> FockState:
    """X(p; k=(p, 0, ..., 0), l=0); its weight is (0, p, 0, ..., 0)."""
    if p < 1:
        raise PreconditionError(f"p must be a positive integer, got {p}")
    return x_vector(BasisKey((p,) + (0,) * (n - 1), (0,) * n), p)


def annihilated_by_all(v: FockState) -> bool:
    return all(apply_annihilate(c, v).is_zero() for c in annihilators(v.n))


class _WeightSpan:
    """Echelonized span of states sharing one weight."""

    def __init__(self, keys: list[BasisKey]):
        self.keys = keys
        self.rows: list[list[QuadScalar]] = []
        self.states: list[FockState] = []

    def add(self, state: FockState) -> bool:
        row = [state.coeff(key) for key in self.keys]
        if linalg.rank(self.rows + [row]) == len(self.rows):
            return False
        self.rows.append(row)
        self.states.append(state)
        return True


def cao_closure(seed: FockState, n: int, p: int, level_cap: int) -> dict[Weight, list[FockState]]:
    """Smallest CAO-stable subspace containing `seed`, truncated at `level_cap`."""
    spans: dict[Weight, _WeightSpan] = {}

    def offer(state: FockState) -> bool:
        weights = state.weights()
        if len(weights) != 1:
            raise PreconditionError("closure seeds must be weight vectors")
        (w,) = weights
        if w not in spans:
            spans[w] = _WeightSpan(keys_of_weight(w[1:]))
        return spans[w].add(state)

    queue: deque[FockState] = deque()
    if not seed.is_zero() and offer(seed):
        queue.append(seed)
    while queue:
        state = queue.popleft()
        for c in all_caos(n):
            image = apply_cao(c, state)
            if image.is_zero():
                continue
            key = next(iter(image.terms))
            if sum(key.k) + sum(key.l) > level_cap:
                continue
            if offer(image):
                queue.append(image)
    return {w: span.states for w, span in sorted(spans.items())}


@dataclass(frozen=True)
class GenerationCheck:
    level_cap: int
    closure_dimension: int
    per_weight: dict[Weight, tuple[int, int]]
    matches: bool


def generation_check(n: int, p: int, level_cap: int | None = None) -> GenerationCheck:
    """Compare the CAO closure of the singular vector with span(mp_basis) at level p."""
    cap = p + 1 if level_cap is None else level_cap
    closure = cao_closure(singular_vector(n, p), n, p, cap)
    per_weight: dict[Weight, tuple[int, int]] = {}
    matches = True
    for m in occupations_at_level(n, p):
        w = weight_from_occupations(m, p)
        keys = keys_of_weight(m)
        gen_rows = coordinates(closure.get(w, []), keys)
        mp_rows = coordinates(mp_basis(w, n, p), keys)
        r_gen, r_mp = linalg.rank(gen_rows), linalg.rank(mp_rows)
        r_joint = linalg.rank(gen_rows + mp_rows)
        per_weight[w] = (r_gen, r_mp)
        if not (r_gen == r_mp == r_joint):
            matches = False
    total = sum(len(states) for states in closure.values())
    logger.debug("closure of singular vector n=%d p=%d cap=%d: dim %d", n, p, cap, total)
    return GenerationCheck(cap, total, per_weight, matches)


def mp_orthogonality_violations(n: int, p: int) -> list[Violation]:
    """Vectors of M_p at level p are orthogonal to all of V̄_p."""
    out = []
    for m in occupations_at_level(n, p):
        w = weight_from_occupations(m, p)
        keys = keys_of_weight(m)
        for vec in mp_basis(w, n, p):
            for key in keys:
                value = inner_product(vec, FockState.basis(key, p))
                if value:
                    out.append(Violation(
                        relation="M_p-orthogonal",
                        instance=f"<{vec}|{key}>",
                        expected="0",
                        actual=str(value),
                    ))
    return out


def level_p_weights(n: int, p: int) -> list[Weight]:
    return [weight_from_occupations(m, p) for m in occupations_at_level(n, p)]