"""The induced Fock module over q(n+1).

Basis vectors are labelled by occupation keys |k, l> = (b1+)^k1 (f1+)^l1 ...
(bn+)^kn (fn+)^ln v0 with k_i >= 0 and l_i in {0, 1}. The vacuum v0 has
e[0,0]^0 v0 = p v0, e[0,0]^1 v0 = sqrt(p) v0 and is killed by q(n) and the
annihilators.

Two independent ways to act are provided:

* `apply_create` / `apply_annihilate` evaluate the closed-form actions.
* `oracle_apply` rewrites x . (creation word) v0 using nothing but the
  superbracket and the vacuum seeds.

The suites at the bottom compare the two and check the X-vector laws.
"""

import itertools
import logging
import re
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .report_types import Violation
from .scalar import QuadScalar, RadicandMismatchError, sqrt_p
from .superalgebra import (
    AlgebraElement,
    CaoId,
    CaoKind,
    GeneratorId,
    Parity,
    all_caos,
    annihilators,
    bracket,
    cao_embed,
    center_element,
    super_sign,
)

logger = logging.getLogger(__name__)

# memo bounds for the vacuum-coefficient and oracle rewriting caches
KEY_INNER_CACHE_SIZE = 1 << 16
ORACLE_CACHE_SIZE = 1 << 18

Weight = tuple[int, ...]


# ---------------------------------------------------------------------------
# Keys and states
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BasisKey:
    k: tuple[int, ...]
    l: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", tuple(self.k))
        object.__setattr__(self, "l", tuple(self.l))
        if len(self.k) != len(self.l):
            raise ValueError(f"k and l differ in length: {self.k} vs {self.l}")
        if any(x < 0 for x in self.k):
            raise ValueError(f"negative occupation in k={self.k}")
        if any(x not in (0, 1) for x in self.l):
            raise ValueError(f"odd occupations must be bits, got l={self.l}")

    @classmethod
    def vacuum(cls, n: int) -> "BasisKey":
        return cls((0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.k, self.l))

    def shifted(self, dk: Mapping[int, int] | None = None, dl: Mapping[int, int] | None = None) -> "BasisKey | None":
        """Key with 0-based positions moved by the given deltas, or None if invalid."""
        k = list(self.k)
        l = list(self.l)
        for pos, d in (dk or {}).items():
            k[pos] += d
        for pos, d in (dl or {}).items():
            l[pos] += d
        if any(x < 0 for x in k) or any(x not in (0, 1) for x in l):
            return None
        return BasisKey(tuple(k), tuple(l))

    def render(self) -> str:
        return ";".join(f"{a},{b}" for a, b in zip(self.k, self.l))

    def __str__(self) -> str:
        return self.render()


_KEY_PART = re.compile(r"^(\d+),([01])$")


def parse_key(text: str) -> BasisKey:
    k, l = [], []
    for part in text.replace(" ", "").split(";"):
        match = _KEY_PART.match(part)
        if match is None:
            raise ValueError(f"bad key component {part!r} in {text!r}; expected k,l with l in {{0,1}}")
        k.append(int(match[1]))
        l.append(int(match[2]))
    return BasisKey(tuple(k), tuple(l))


def weight_of(key: BasisKey, p: int) -> Weight:
    m = key.m
    return (p - sum(m),) + m


def level(key: BasisKey) -> int:
    return sum(key.k) + sum(key.l)


@dataclass(frozen=True)
class FockState:
    """Sparse vector over basis keys with coefficients in Q(sqrt(p))."""
    n: int
    p: int
    terms: Mapping[BasisKey, QuadScalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[BasisKey, QuadScalar] = {}
        for key, c in self.terms.items():
            if key.n != self.n:
                raise ValueError(f"key {key} does not belong to a module with n={self.n}")
            coeff = c if isinstance(c, QuadScalar) else QuadScalar.rational(c, self.p)
            if coeff.p != self.p:
                raise RadicandMismatchError(f"coefficient {coeff} is not in Q(sqrt({self.p}))")
            if coeff:
                clean[key] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, n: int, p: int) -> "FockState":
        return cls(n, p, {})

    @classmethod
    def basis(cls, key: BasisKey, p: int) -> "FockState":
        return cls(key.n, p, {key: QuadScalar.one(p)})

    @classmethod
    def vacuum(cls, n: int, p: int) -> "FockState":
        return cls.basis(BasisKey.vacuum(n), p)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key: BasisKey) -> QuadScalar:
        return self.terms.get(key, QuadScalar.zero(self.p))

    def _check(self, other: "FockState") -> None:
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError(f"states of different modules: (n={self.n}, p={self.p}) vs (n={other.n}, p={other.p})")

    def __add__(self, other: "FockState") -> "FockState":
        if not isinstance(other, FockState):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return FockState(self.n, self.p, out)

    def __neg__(self) -> "FockState":
        return FockState(self.n, self.p, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-other)

    def scale(self, factor) -> "FockState":
        return FockState(self.n, self.p, {key: factor * c for key, c in self.terms.items()})

    def __rmul__(self, factor) -> "FockState":
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and dict(self.terms) == dict(other.terms)

    def weights(self) -> set[Weight]:
        return {weight_of(key, self.p) for key in self.terms}

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            coeff = str(c) if c.is_rational else f"({c})"
            parts.append(f"{coeff}|{key}>")
        return " + ".join(parts)

    def to_json(self) -> list[dict[str, str]]:
        return [{"key": key.render(), "coeff": str(self.terms[key])} for key in sorted(self.terms)]

    def __str__(self) -> str:
        return self.render()


def _accumulate(out: dict[BasisKey, QuadScalar], key: BasisKey | None, coeff: QuadScalar) -> None:
    if key is None or not coeff:
        return
    out[key] = out[key] + coeff if key in out else coeff


def _parity_of(bits: Sequence[int]) -> int:
    return -1 if sum(bits) % 2 else 1


# ---------------------------------------------------------------------------
# Closed-form actions
# ---------------------------------------------------------------------------

def _check_index(c: CaoId, n: int) -> int:
    if c.index > n:
        raise ValueError(f"{c} acts only on modules with n >= {c.index}, got n={n}")
    return c.index - 1


def apply_create(c: CaoId, v: FockState) -> FockState:
    """b_j^+ raises k_j; f_j^+ sets l_j with sign (-1)^(l_1+...+l_{j-1})."""
    if not c.is_creation:
        raise ValueError(f"{c} is not a creation operator")
    j = _check_index(c, v.n)
    out: dict[BasisKey, QuadScalar] = {}
    for key, coeff in v.terms.items():
        if c.kind is CaoKind.B:
            _accumulate(out, key.shifted(dk={j: 1}), coeff)
        elif key.l[j] == 0:
            _accumulate(out, key.shifted(dl={j: 1}), coeff * _parity_of(key.l[:j]))
    return FockState(v.n, v.p, out)


def _annihilate_f(j: int, key: BasisKey, p: int) -> Iterator[tuple[BasisKey | None, QuadScalar]]:
    k, l = key.k, key.l
    total = level(key)
    s_before = _parity_of(l[:j])
    kj = k[j]
    if l[j] == 1:
        yield key.shifted(dl={j: -1}), QuadScalar.rational(s_before * (p + 1 + kj - total), p)
    if kj:
        yield key.shifted(dk={j: -1}), sqrt_p(p) * (_parity_of(l) * kj)
        if l[j] == 0 and kj >= 2:
            yield key.shifted(dk={j: -2}, dl={j: 1}), QuadScalar.rational(-s_before * kj * (kj - 1), p)
        for i in range(key.n):
            if i == j:
                continue
            s_i = _parity_of(l[:i])
            if l[i] == 0:
                if k[i]:
                    yield key.shifted(dk={j: -1, i: -1}, dl={i: 1}), QuadScalar.rational(-s_i * k[i] * kj, p)
            else:
                yield key.shifted(dk={j: -1, i: 1}, dl={i: -1}), QuadScalar.rational(s_i * kj, p)


def _annihilate_b(j: int, key: BasisKey, p: int) -> Iterator[tuple[BasisKey | None, QuadScalar]]:
    k, l = key.k, key.l
    total = level(key)
    kj, lj = k[j], l[j]
    if kj:
        yield key.shifted(dk={j: -1}), QuadScalar.rational(kj * (p + 1 - lj - total), p)
    if lj:
        eps = _parity_of(l[j + 1:])
        yield key.shifted(dl={j: -1}), sqrt_p(p) * eps
        for i in range(key.n):
            if i == j:
                continue
            theta = 1 if i < j else -1
            sign = eps * _parity_of(l[i:]) * theta
            if l[i] == 0:
                if k[i]:
                    yield key.shifted(dk={i: -1}, dl={j: -1, i: 1}), QuadScalar.rational(sign * k[i], p)
            else:
                yield key.shifted(dk={i: 1}, dl={j: -1, i: -1}), QuadScalar.rational(-sign, p)


def apply_annihilate(c: CaoId, v: FockState) -> FockState:
    """Closed-form action of b_j^- (four terms) and f_j^- (five terms)."""
    if c.is_creation:
        raise ValueError(f"{c} is not an annihilation operator")
    j = _check_index(c, v.n)
    rule = _annihilate_b if c.kind is CaoKind.B else _annihilate_f
    out: dict[BasisKey, QuadScalar] = {}
    for key, coeff in v.terms.items():
        for target, factor in rule(j, key, v.p):
            _accumulate(out, target, coeff * factor)
    return FockState(v.n, v.p, out)


def apply_cao(c: CaoId, v: FockState) -> FockState:
    return apply_create(c, v) if c.is_creation else apply_annihilate(c, v)


def apply_word(word: Sequence[CaoId], v: FockState) -> FockState:
    """Apply word[0] first."""
    for c in word:
        v = apply_cao(c, v)
        if v.is_zero():
            break
    return v


# ---------------------------------------------------------------------------
# X-vectors
# ---------------------------------------------------------------------------

def x_vector(key: BasisKey, p: int) -> FockState:
    """X(p; k, l), the combination on which the annihilators act diagonally."""
    l = key.l
    out: dict[BasisKey, QuadScalar] = {}
    _accumulate(out, key, sqrt_p(p) * _parity_of(l))
    for i in range(key.n):
        s_through = _parity_of(l[: i + 1])
        if l[i]:
            _accumulate(out, key.shifted(dk={i: 1}, dl={i: -1}), QuadScalar.rational(-s_through, p))
        elif key.k[i]:
            _accumulate(out, key.shifted(dk={i: -1}, dl={i: 1}), QuadScalar.rational(-s_through * key.k[i], p))
    return FockState(key.n, p, out)


# ---------------------------------------------------------------------------
# Hermitian form
# ---------------------------------------------------------------------------

Annihilate = Callable[[CaoId, FockState], FockState]


def adjoint_word(key: BasisKey) -> list[CaoId]:
    """Annihilators for <key|: b_1^- first, then f_1^-, b_2^-, ..."""
    word = []
    for i in range(key.n):
        word += [CaoId(CaoKind.B, "-", i + 1)] * key.k[i]
        word += [CaoId(CaoKind.F, "-", i + 1)] * key.l[i]
    return word


def _vacuum_coefficient(key_a: BasisKey, key_b: BasisKey, p: int, annihilate: Annihilate) -> QuadScalar:
    state = FockState.basis(key_b, p)
    for c in adjoint_word(key_a):
        state = annihilate(c, state)
        if state.is_zero():
            return QuadScalar.zero(p)
    return state.coeff(BasisKey.vacuum(key_a.n))


@lru_cache(maxsize=KEY_INNER_CACHE_SIZE)
def _key_inner(key_a: BasisKey, key_b: BasisKey, p: int) -> QuadScalar:
    return _vacuum_coefficient(key_a, key_b, p, apply_annihilate)


def key_inner(key_a: BasisKey, key_b: BasisKey, p: int, annihilate: Annihilate | None = None) -> QuadScalar:
    if key_a.m != key_b.m:
        return QuadScalar.zero(p)
    if annihilate is None:
        return _key_inner(key_a, key_b, p)
    return _vacuum_coefficient(key_a, key_b, p, annihilate)


def inner_product(u: FockState, v: FockState, annihilate: Annihilate | None = None) -> QuadScalar:
    """Symmetric bilinear form with <v0|v0> = 1 (coefficients are real)."""
    u._check(v)
    total = QuadScalar.zero(u.p)
    for ka, ca in u.terms.items():
        for kb, cb in v.terms.items():
            value = key_inner(ka, kb, u.p, annihilate)
            if value:
                total = total + ca * cb * value
    return total


# ---------------------------------------------------------------------------
# Structure-constant oracle
# ---------------------------------------------------------------------------

_Terms = tuple[tuple[BasisKey, QuadScalar], ...]


def creation_word(key: BasisKey) -> tuple[GeneratorId, ...]:
    word: list[GeneratorId] = []
    for i in range(key.n):
        word += [GeneratorId(i + 1, 0, Parity.EVEN)] * key.k[i]
        word += [GeneratorId(i + 1, 0, Parity.ODD)] * key.l[i]
    return tuple(word)


def _is_creator(g: GeneratorId) -> bool:
    return g.j == 0 and g.i > 0


def _canonical_key(word: tuple[GeneratorId, ...], n: int, p: int) -> _Terms:
    """Sort a creator word into b1, f1, b2, f2, ... order.

    Creators supercommute, so each adjacent swap costs (-1)^(|x||y|) and a
    repeated odd creator gives zero.
    """
    letters = list(word)
    sign = 1
    for end in range(len(letters) - 1, 0, -1):
        for pos in range(end):
            a, b = letters[pos], letters[pos + 1]
            if (a.i, a.parity) > (b.i, b.parity):
                letters[pos], letters[pos + 1] = b, a
                sign *= super_sign(a.parity, b.parity)
    k = [0] * n
    l = [0] * n
    for g in letters:
        if g.parity is Parity.EVEN:
            k[g.i - 1] += 1
        else:
            l[g.i - 1] += 1
            if l[g.i - 1] > 1:
                return ()
    return ((BasisKey(tuple(k), tuple(l)), QuadScalar.rational(sign, p)),)


@lru_cache(maxsize=ORACLE_CACHE_SIZE)
def _act_on_word(x: GeneratorId, word: tuple[GeneratorId, ...], n: int, p: int) -> _Terms:
    if _is_creator(x):
        return _canonical_key((x,) + word, n, p)
    if not word:
        if (x.i, x.j) == (0, 0):
            seed = QuadScalar.rational(p, p) if x.parity is Parity.EVEN else sqrt_p(p)
            return ((BasisKey.vacuum(n), seed),)
        return ()

    head, rest = word[0], word[1:]
    out: dict[BasisKey, QuadScalar] = {}
    # x head rest v0 = [[x, head]] rest v0 + (-1)^(|x||head|) head x rest v0
    for g, coeff in bracket(x, head, p).terms.items():
        for key, c in _act_on_word(g, rest, n, p):
            _accumulate(out, key, coeff * c)
    sign = super_sign(x.parity, head.parity)
    for key, c in _act_on_word(x, rest, n, p):
        for key2, c2 in _act_on_word(head, creation_word(key), n, p):
            _accumulate(out, key2, c * c2 * sign)
    return tuple(out.items())


def clear_caches() -> None:
    _key_inner.cache_clear()
    _act_on_word.cache_clear()


def oracle_apply(x: GeneratorId, v: FockState) -> FockState:
    """x . v by supercommuting x through each creation word."""
    x.check_rank(v.n)
    out: dict[BasisKey, QuadScalar] = {}
    for key, coeff in v.terms.items():
        for target, c in _act_on_word(x, creation_word(key), v.n, v.p):
            _accumulate(out, target, coeff * c)
    return FockState(v.n, v.p, out)


def oracle_annihilate(c: CaoId, v: FockState) -> FockState:
    return oracle_apply(cao_embed(c), v)


def apply_element(u: AlgebraElement, v: FockState) -> FockState:
    """Action of an arbitrary algebra element through the oracle."""
    if u.p != v.p:
        u = u.rebase(v.p)
    out = FockState.zero(v.n, v.p)
    for g, coeff in u.terms.items():
        out = out + oracle_apply(g, v).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def occupations_of(weight: Sequence[int], n: int, p: int) -> tuple[int, ...] | None:
    """m = (λ_1, ..., λ_n) when the weight has the form (p - Σm, m), else None."""
    if len(weight) != n + 1:
        return None
    m = tuple(weight[1:])
    if any(x < 0 for x in m) or weight[0] != p - sum(m):
        return None
    return m


def keys_of_weight(m: Sequence[int]) -> list[BasisKey]:
    """All keys with k_i + l_i = m_i, in reverse binary order of the odd bits.

    Only positions with m_i > 0 carry a bit; the first such position is the
    least significant.
    """
    active = [i for i, x in enumerate(m) if x > 0]
    keys = []
    for index in range(2 ** len(active)):
        l = [0] * len(m)
        for bit, pos in enumerate(active):
            l[pos] = (index >> bit) & 1
        k = [x - b for x, b in zip(m, l)]
        keys.append(BasisKey(tuple(k), tuple(l)))
    return keys


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def occupations_at_level(n: int, lev: int) -> list[tuple[int, ...]]:
    return sorted(_compositions(lev, n))


def keys_at_level(n: int, lev: int) -> list[BasisKey]:
    keys = []
    for l in itertools.product((0, 1), repeat=n):
        rest = lev - sum(l)
        if rest < 0:
            continue
        for k in _compositions(rest, n):
            keys.append(BasisKey(k, l))
    return sorted(keys)


def keys_up_to(n: int, level_cap: int) -> list[BasisKey]:
    return [key for lev in range(level_cap + 1) for key in keys_at_level(n, lev)]


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def _violation(relation: str, instance: str, expected: FockState, actual: FockState) -> Violation:
    return Violation(relation=relation, instance=instance, expected=expected.render(), actual=actual.render())


def oracle_discrepancies(n: int, p: int, level_cap: int) -> list[Violation]:
    """Closed forms against the rewriting oracle for all 4n CAOs."""
    out = []
    for key in keys_up_to(n, level_cap):
        v = FockState.basis(key, p)
        for c in all_caos(n):
            fast = apply_cao(c, v)
            slow = oracle_apply(cao_embed(c), v)
            if fast != slow:
                out.append(_violation("closed-form-vs-oracle", f"{c} on |{key}>", slow, fast))
    return out


def representation_violations(n: int, p: int, level_cap: int) -> list[Violation]:
    """[[x,y]] v == x(yv) - (-1)^(|x||y|) y(xv) for all CAO pairs."""
    out = []
    caos = all_caos(n)
    for key in keys_up_to(n, level_cap):
        v = FockState.basis(key, p)
        acted = {c: apply_cao(c, v) for c in caos}
        for x, y in itertools.product(caos, repeat=2):
            gx, gy = cao_embed(x), cao_embed(y)
            lhs = apply_element(bracket(gx, gy, p), v)
            rhs = apply_cao(x, acted[y]) - apply_cao(y, acted[x]).scale(super_sign(gx.parity, gy.parity))
            if lhs != rhs:
                out.append(_violation("representation", f"x={x}, y={y} on |{key}>", rhs, lhs))
    return out


def x_vector_law_violations(n: int, p: int, level_cap: int) -> list[Violation]:
    """Laws for the annihilators and creators on X-vectors and basis keys."""
    out = []
    zero = FockState.zero(n, p)
    for key in keys_up_to(n, level_cap):
        X = x_vector(key, p)
        ket = FockState.basis(key, p)
        total = level(key)
        for j in range(n):
            kj, lj = key.k[j], key.l[j]
            before = _parity_of(key.l[:j])
            through = _parity_of(key.l[: j + 1])
            b_minus = CaoId(CaoKind.B, "-", j + 1)
            f_minus = CaoId(CaoKind.F, "-", j + 1)
            b_plus = CaoId(CaoKind.B, "+", j + 1)
            f_plus = CaoId(CaoKind.F, "+", j + 1)

            def x_at(dk=None, dl=None) -> FockState:
                shifted = key.shifted(dk, dl)
                return zero if shifted is None else x_vector(shifted, p)

            def ket_at(dk=None, dl=None) -> FockState:
                shifted = key.shifted(dk, dl)
                return zero if shifted is None else FockState.basis(shifted, p)

            checks = [
                ("b-minus-on-X", apply_cao(b_minus, X), x_at(dk={j: -1}).scale(kj * (p - total))),
                ("f-minus-on-X", apply_cao(f_minus, X), x_at(dl={j: -1}).scale(through * lj * (p - total))),
                (
                    "b-plus-on-X",
                    apply_cao(b_plus, X),
                    x_at(dk={j: 1}) + (ket_at(dl={j: 1}).scale(through) if lj == 0 else zero),
                ),
                (
                    "f-plus-on-X",
                    apply_cao(f_plus, X),
                    (x_at(dl={j: 1}).scale(-before) if lj == 0 else zero) + ket_at(dk={j: 1}),
                ),
                (
                    "b-minus-on-ket",
                    apply_cao(b_minus, ket),
                    ket_at(dk={j: -1}).scale(kj * (p + 1 - total)) + x_at(dl={j: -1}).scale(before * lj),
                ),
                (
                    "f-minus-on-ket",
                    apply_cao(f_minus, ket),
                    ket_at(dl={j: -1}).scale(before * lj * (p + 1 - total)) + x_at(dk={j: -1}).scale(kj),
                ),
            ]
            for relation, actual, expected in checks:
                if actual != expected:
                    out.append(_violation(relation, f"j={j + 1}, |{key}>", expected, actual))
    return out


def x_annihilation_violations(n: int, p: int) -> list[Violation]:
    """Every X-vector of level p is killed by all annihilators."""
    out = []
    for key in keys_at_level(n, p):
        X = x_vector(key, p)
        for c in annihilators(n):
            image = apply_annihilate(c, X)
            if not image.is_zero():
                out.append(_violation("level-p-X-annihilated", f"{c} on X(|{key}>)", FockState.zero(n, p), image))
    return out


def vacuum_relation_violations(n: int, p: int) -> list[Violation]:
    """Vacuum seeds and the first-level relations b_j^- b_i^+ v0 = δ_ij p v0 etc."""
    out = []
    v0 = FockState.vacuum(n, p)
    root_p = sqrt_p(p)
    seeds = [
        (GeneratorId(0, 0, Parity.EVEN), v0.scale(p)),
        (GeneratorId(0, 0, Parity.ODD), v0.scale(root_p)),
    ]
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        for par in Parity:
            seeds.append((GeneratorId(i, j, par), FockState.zero(n, p)))
    for i in range(1, n + 1):
        for par in Parity:
            seeds.append((GeneratorId(0, i, par), FockState.zero(n, p)))
    for g, expected in seeds:
        actual = oracle_apply(g, v0)
        if actual != expected:
            out.append(_violation("vacuum-seed", f"{g} v0", expected, actual))

    for c in annihilators(n):
        actual = apply_annihilate(c, v0)
        if not actual.is_zero():
            out.append(_violation("vacuum-annihilated", f"{c} v0", FockState.zero(n, p), actual))

    for i, j in itertools.product(range(1, n + 1), repeat=2):
        for minus_kind, plus_kind in itertools.product(CaoKind, repeat=2):
            word = [CaoId(plus_kind, "+", i), CaoId(minus_kind, "-", j)]
            actual = apply_word(word, v0)
            if i != j:
                expected = FockState.zero(n, p)
            elif minus_kind is plus_kind:
                expected = v0.scale(p)
            else:
                expected = v0.scale(root_p)
            if actual != expected:
                out.append(_violation("first-level", f"{word[1]} {word[0]} v0", expected, actual))
    return out


def center_violations(n: int, p: int, level_cap: int) -> list[Violation]:
    """I = sum e[i,i]^0 acts as p on every key."""
    out = []
    central = center_element(n, p)
    for key in keys_up_to(n, level_cap):
        v = FockState.basis(key, p)
        actual = apply_element(central, v)
        if actual != v.scale(p):
            out.append(_violation("center", f"I on |{key}>", v.scale(p), actual))
    return out


def inner_product_violations(n: int, p: int, level_cap: int) -> list[Violation]:
    """Symmetry of the form and agreement with the oracle evaluation path."""
    out = []
    for lev in range(level_cap + 1):
        for m in occupations_at_level(n, lev):
            keys = keys_of_weight(m)
            for a, b in itertools.product(keys, repeat=2):
                ab = key_inner(a, b, p)
                ba = key_inner(b, a, p)
                slow = key_inner(a, b, p, annihilate=oracle_annihilate)
                if ab != ba or ab != slow:
                    out.append(Violation(
                        relation="inner-product",
                        instance=f"<{a}|{b}>",
                        expected=f"{ba} (swapped), {slow} (oracle)",
                        actual=str(ab),
                    ))
    return out
