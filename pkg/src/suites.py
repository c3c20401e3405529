"""Verification suites behind the CLI subcommands.

Each `run_*` coroutine builds one pydantic report. Independent weight
spaces, sample points and suites are fanned out to worker threads under a
semaphore; `asyncio.gather` keeps input order, so reports are deterministic.
"""

import asyncio
import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, TypeVar

import mpmath

from . import binary_matrix, characters, fock, linalg, qtwo, structure, superalgebra
from .config import settings
from .report_types import (
    AlgebraReport,
    CharacterReport,
    CharTerm,
    GenerationResult,
    Lemma3Report,
    MatrixElementRow,
    ModuleReport,
    Q2LevelRow,
    Q2Report,
    RootRow,
    SampleRecord,
    SuiteResult,
    Violation,
    WeightReport,
)
from .scalar import render_rational

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# lemma3 expands the determinant symbolically up to this r; above it only samples run
SYMBOLIC_MAX_R = 3


class UsageError(ValueError):
    """Flags outside the configured bounds or otherwise unusable."""


class Command(str, Enum):
    CHECK_ALGEBRA = "check-algebra"
    REPORT = "report"
    LEMMA3 = "lemma3"
    Q2 = "q2"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


@dataclass
class RunConfig:
    command: Command
    n: int = 1
    p: int = 1
    level_cap: int | None = None
    weight: tuple[int, ...] | None = None
    format: OutputFormat = OutputFormat.TEXT
    samples: int = field(default_factory=lambda: settings.numeric.samples)
    seed: int = field(default_factory=lambda: settings.numeric.seed)
    r: int = 2
    s: Fraction | None = None
    t: tuple[Fraction, ...] | None = None
    sign_fault: bool = False

    @property
    def effective_level_cap(self) -> int:
        if self.level_cap is None:
            return settings.bounds.level_cap_for(self.p)
        return self.level_cap

    def validate(self) -> None:
        bounds = settings.bounds
        if self.command is Command.REPORT:
            max_n, max_p = bounds.report_max_n, bounds.report_max_p
        else:
            max_n, max_p = bounds.max_n, bounds.max_p
        if self.command in (Command.CHECK_ALGEBRA, Command.REPORT):
            if not 1 <= self.n <= max_n:
                raise UsageError(f"--n must lie in 1..{max_n}, got {self.n}")
        if self.command in (Command.REPORT, Command.Q2):
            if not 1 <= self.p <= max_p:
                raise UsageError(f"--p must lie in 1..{max_p}, got {self.p}")
        if self.command is Command.REPORT:
            if self.effective_level_cap < self.p:
                raise UsageError(f"--level-cap must be >= p={self.p}, got {self.effective_level_cap}")
            if self.weight is not None and len(self.weight) != self.n + 1:
                raise UsageError(f"--weight needs {self.n + 1} entries, got {len(self.weight)}")
        if self.command is Command.LEMMA3:
            if self.t is not None:
                self.r = len(self.t)
            if not 1 <= self.r <= bounds.max_r:
                raise UsageError(f"--r must lie in 1..{bounds.max_r}, got {self.r}")
            if (self.s is None) != (self.t is None):
                raise UsageError("--s and --t must be given together")
            if self.samples < 0:
                raise UsageError(f"--samples must be >= 0, got {self.samples}")
            if self.s is None and self.samples == 0 and self.r > SYMBOLIC_MAX_R:
                raise UsageError(
                    f"--samples 0 checks nothing at r={self.r}; symbolic checks stop at r={SYMBOLIC_MAX_R}"
                )


async def fan_out(func: Callable[[T], R], items: Iterable[T], limit: int | None = None) -> list[R]:
    """Run func over items in worker threads, at most `limit` at a time, preserving order."""
    semaphore = asyncio.Semaphore(limit or settings.max_concurrent)

    async def one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(func, item)

    return list(await asyncio.gather(*(one(item) for item in items)))


def _suite(name: str, checked: int, violations: list[Violation]) -> SuiteResult:
    if violations:
        logger.error("%s: %d violations, first %s", name, len(violations), violations[0].to_text())
    else:
        logger.info("%s: %d checks passed", name, checked)
    return SuiteResult(name=name, checked=checked, violations=violations)


async def _run_suites(specs: Sequence[tuple[str, int, Callable[[], list[Violation]]]]) -> list[SuiteResult]:
    results = await fan_out(lambda spec: spec[2](), specs)
    return [_suite(name, checked, violations) for (name, checked, _), violations in zip(specs, results)]


# ---------------------------------------------------------------------------
# check-algebra
# ---------------------------------------------------------------------------

def q_statistics_instance_count(n: int) -> int:
    return 2 * n * n * 4 + 2 * n ** 3 * 8


async def run_check_algebra(cfg: RunConfig) -> AlgebraReport:
    n = cfg.n
    logger.info("check-algebra: n=%d%s", n, " (sign fault injected)" if cfg.sign_fault else "")
    count = len(superalgebra.generators(n))
    suites = await _run_suites([
        ("super-antisymmetry", count ** 2, lambda: superalgebra.antisymmetry_violations(n)),
        ("super-jacobi", count ** 3, lambda: superalgebra.super_jacobi_violations(n)),
        ("defining-representation", count ** 2, lambda: superalgebra.defining_rep_violations(n)),
        (
            "q-statistics",
            q_statistics_instance_count(n),
            lambda: superalgebra.verify_q_statistics(n, sign_fault=cfg.sign_fault),
        ),
    ])
    span = await asyncio.to_thread(superalgebra.cao_span_dimension, n)
    roots = [
        RootRow(vector=list(info.vector), even_multiplicity=info.even_multiplicity,
                odd_multiplicity=info.odd_multiplicity)
        for info in superalgebra.roots(n)
    ]
    return AlgebraReport(
        n=n,
        suites=suites,
        cao_span_dimension=span,
        expected_span_dimension=superalgebra.expected_sq_dimension(n),
        roots=roots,
    )


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def weight_report(weight: Sequence[int], n: int, p: int) -> WeightReport:
    info = structure.weight_space_info(weight, n, p)
    report = WeightReport(
        weight=list(info.weight),
        level=info.level,
        dim_bar=info.dim_bar,
        dim_vp=info.dim_vp,
    )
    if info.level > p:
        return report

    report.representatives = [key.render() for key in structure.vp_representatives(weight, n, p)]
    report.quotient_dimension = structure.quotient_dimension(weight, n, p)
    g = structure.gram(weight, n, p)
    certificate = structure.is_positive_definite(g, p)
    report.gram_minors = [str(x) for x in certificate.minors]
    report.positive_definite = certificate.positive

    if info.level == p and info.r > 0:
        full = structure.full_gram(weight, n, p)
        report.full_gram_rank = linalg.rank(full.entries)
        report.expected_full_gram_rank = info.dim_bar // 2
    if 0 < info.level < p and info.r == n:
        report.closed_form = structure.gram_closed_form_check(weight, n, p)
    logger.debug("weight %s: dim_vp=%d pos-def=%s", info.weight, info.dim_vp, certificate.positive)
    return report


def character_report(n: int, p: int) -> CharacterReport:
    paths = characters.character_paths(n, p)
    return CharacterReport(
        from_weights=characters.render_poly(paths.from_weights),
        formula=characters.render_poly(paths.formula),
        hook_sum=characters.render_poly(paths.hooks),
        agree=paths.agree,
        value_at_ones=characters.evaluate_at_ones(paths.from_weights),
        terms=[CharTerm(exponents=e, coeff=c) for e, c in characters.poly_terms(paths.from_weights)],
    )


def generation_result(n: int, p: int) -> GenerationResult:
    check = structure.generation_check(n, p)
    return GenerationResult(
        level_cap=check.level_cap,
        closure_dimension=check.closure_dimension,
        matches=check.matches,
        per_weight={",".join(map(str, w)): list(ranks) for w, ranks in check.per_weight.items()},
    )


def vacuum_relation_count(n: int) -> int:
    """Two vacuum seeds, 2n^2 + 2n vanishing seeds, 2n annihilators, 4n^2 first-level words."""
    return 2 + 6 * n * n + 4 * n


def inner_product_count(n: int, cap: int) -> int:
    return sum(
        len(fock.keys_of_weight(m)) ** 2 for lev in range(cap + 1) for m in fock.occupations_at_level(n, lev)
    )


def mp_orthogonality_count(n: int, p: int) -> int:
    # d_m / 2 vectors of M_p against d_m keys at each level-p weight
    return sum(len(fock.keys_of_weight(m)) ** 2 // 2 for m in fock.occupations_at_level(n, p))


def _fock_suite_specs(n: int, p: int, cap: int) -> list[tuple[str, int, Callable[[], list[Violation]]]]:
    keys = len(fock.keys_up_to(n, cap))
    caos = 4 * n
    level_p = len(fock.keys_at_level(n, p))
    return [
        ("vacuum-relations", vacuum_relation_count(n), lambda: fock.vacuum_relation_violations(n, p)),
        ("representation", keys * caos * caos, lambda: fock.representation_violations(n, p, cap)),
        ("oracle-equivalence", keys * caos, lambda: fock.oracle_discrepancies(n, p, cap)),
        ("x-vector-laws", 6 * n * len(fock.keys_up_to(n, p + 1)), lambda: fock.x_vector_law_violations(n, p, p + 1)),
        ("x-vectors-annihilated", 2 * n * level_p, lambda: fock.x_annihilation_violations(n, p)),
        ("center-acts-by-scalar", keys, lambda: fock.center_violations(n, p, cap)),
        ("inner-product", inner_product_count(n, cap), lambda: fock.inner_product_violations(n, p, cap)),
        ("M_p-orthogonal", mp_orthogonality_count(n, p), lambda: structure.mp_orthogonality_violations(n, p)),
    ]


async def run_module_report(cfg: RunConfig) -> ModuleReport:
    n, p, cap = cfg.n, cfg.p, cfg.effective_level_cap
    logger.info("report: n=%d p=%d level_cap=%d", n, p, cap)
    decomposition = structure.gl_decomposition(n, p)
    weights = structure.vp_weights(n, p)
    report = ModuleReport(
        n=n,
        p=p,
        level_cap=cap,
        dim_vp=structure.dim_vp(n, p),
        dim_from_weights=sum(structure.vp_mult(w, n, p) for w in weights),
        gl_decomposition=[list(h) for h in decomposition],
        gl_dimensions=[structure.gl_dimension(h) for h in decomposition],
    )

    if cfg.weight is not None:
        report.weights = [await asyncio.to_thread(weight_report, cfg.weight, n, p)]
        return report

    singular = structure.singular_vector(n, p)
    report.singular_vector = singular.render()
    report.singular_annihilated = structure.annihilated_by_all(singular)

    character, generation, weight_rows, suites = await asyncio.gather(
        asyncio.to_thread(character_report, n, p),
        asyncio.to_thread(generation_result, n, p),
        fan_out(lambda w: weight_report(w, n, p), weights),
        _run_suites(_fock_suite_specs(n, p, cap)),
    )
    report.character = character
    report.generation = generation
    report.weights = weight_rows
    report.suites = suites
    return report


# ---------------------------------------------------------------------------
# lemma3
# ---------------------------------------------------------------------------

def _sample_record(sample: binary_matrix.DetSample) -> SampleRecord:
    return SampleRecord(
        s=render_rational(sample.s),
        t=[render_rational(x) for x in sample.t],
        det=render_rational(sample.det),
        expected=render_rational(sample.expected),
    )


async def run_lemma3(cfg: RunConfig) -> Lemma3Report:
    r = cfg.r
    report = Lemma3Report(r=r)

    if cfg.s is not None and cfg.t is not None:
        s, t = cfg.s, cfg.t
        logger.info("lemma3: r=%d at s=%s t=%s", r, s, t)
        matrix = binary_matrix.build_A(s, t)
        report.s = render_rational(s)
        report.t = [render_rational(x) for x in t]
        report.rank = binary_matrix.rank_A(matrix)
        report.expected_rank = 2 ** (r - 1) if sum(t) == s * s else 2 ** r
        report.inverse_identity = binary_matrix.check_inverse_identity(s, t)
        report.samples = [_sample_record(binary_matrix.sample_det_point(r, s, t))]
        return report

    logger.info("lemma3: r=%d symbolic%s", r, f", {cfg.samples} samples (seed {cfg.seed})" if cfg.samples else "")
    if r <= SYMBOLIC_MAX_R:
        check = await asyncio.to_thread(binary_matrix.det_identity_symbolic, r)
        report.symbolic_det = binary_matrix.render_expr(check.det)
        report.expected_det = binary_matrix.render_expr(check.expected)
        report.det_matches = check.matches
        report.permutation_invariant = await asyncio.to_thread(binary_matrix.transposition_invariant, r)
        report.inverse_identity = await asyncio.to_thread(binary_matrix.check_inverse_identity, None, None, r)

    points = binary_matrix.sample_points(r, cfg.samples, cfg.seed)
    samples = await fan_out(lambda point: binary_matrix.sample_det_point(r, *point), points)
    report.samples = [_sample_record(x) for x in samples]
    bad = [x for x in samples if not x.matches]
    if bad:
        logger.error("determinant identity fails at %d of %d sample points", len(bad), len(samples))
    return report


# ---------------------------------------------------------------------------
# q2
# ---------------------------------------------------------------------------

def q2_closed_form_count(max_k: int) -> int:
    """Every q(2) operator on each of v_0..v_K, w_1..w_K, then every inner product among them."""
    labels = 2 * max_k + 1
    return labels * len(qtwo.Q2Op) + labels * labels


def _dispin_violations(p: int) -> list[Violation]:
    weights = sorted(
        w for w in structure.vp_weights(1, p) for _ in range(structure.vp_mult(w, 1, p))
    )
    expected = qtwo.dispin_weights(p)
    if weights != expected:
        return [Violation(relation="dispin", instance=f"p={p}", expected=str(expected), actual=str(weights))]
    return []


def _level_row(k: int, p: int, dps: int, basis: dict[str, qtwo.OrthoVec]) -> Q2LevelRow:
    row = Q2LevelRow(k=k, vv=str(qtwo.q2_inner(qtwo.v(k), qtwo.v(k), p)))
    if k >= 1:
        row.ww = str(qtwo.q2_inner(qtwo.w(k), qtwo.w(k), p))
        row.vw = str(qtwo.q2_inner(qtwo.v(k), qtwo.w(k), p))
        row.gram_det = str(qtwo.level_gram_det(k, p))
        row.expected_gram_det = str(qtwo.expected_level_gram_det(k, p))

    def coefficients(name: str) -> list[str] | None:
        vec = basis.get(name)
        if vec is None:
            return None
        return [mpmath.nstr(vec.cv, 15), mpmath.nstr(vec.cw, 15)]

    row.phi = coefficients(f"phi{k}")
    row.psi = coefficients(f"psi{k}")
    return row


def primitive_is_unique(p: int) -> bool:
    primitive = qtwo.q2_primitive(p)
    candidates = qtwo.q2_primitive_candidates(p, p)
    if list(candidates) != [p] or len(candidates[p]) != 1:
        return False
    (found,) = candidates[p]
    lead = found.coeff(qtwo.v(p))
    return bool(lead) and found.scale(1 / lead) == primitive


def _matrix_rows(p: int, dps: int) -> tuple[list[MatrixElementRow], float]:
    rows = []
    worst = 0.0
    for op in qtwo.Q2Op:
        for element in qtwo.q2_matrix_elements(op, p, dps):
            rows.append(MatrixElementRow(
                op=element.op.value,
                source=element.source,
                target=element.target,
                displayed=mpmath.nstr(element.displayed, 15),
                transported=mpmath.nstr(element.transported, 15),
                residual=element.residual,
            ))
            worst = max(worst, element.residual)
    worst = max(worst, qtwo.f_minus_phi_residual(p, dps))
    return rows, worst


async def run_q2(cfg: RunConfig) -> Q2Report:
    p = cfg.p
    dps = settings.numeric.precision
    logger.info("q2: p=%d precision=%d digits", p, dps)
    primitive = qtwo.q2_primitive(p)
    max_k = max(6, p)
    suites = await _run_suites([
        ("q2-closed-forms", q2_closed_form_count(max_k), lambda: qtwo.closed_form_violations(p, max_k)),
        ("dispin-weights", len(qtwo.dispin_weights(p)), lambda: _dispin_violations(p)),
    ])
    basis = {vec.name: vec for vec in qtwo.q2_ortho_basis(p, dps)}
    levels = await fan_out(lambda k: _level_row(k, p, dps, basis), range(p + 1))
    (matrix_rows, worst), ortho, adjoint, unique = await asyncio.gather(
        asyncio.to_thread(_matrix_rows, p, dps),
        asyncio.to_thread(qtwo.orthonormality_residual, p, dps),
        asyncio.to_thread(qtwo.adjoint_residual, p, dps),
        asyncio.to_thread(primitive_is_unique, p),
    )
    return Q2Report(
        p=p,
        dim=structure.dim_vp(1, p),
        decomposition=[list(h) for h in structure.gl_decomposition(1, p)],
        primitive=primitive.render(),
        primitive_annihilated=qtwo.is_primitive(primitive),
        primitive_unique=unique,
        suites=suites,
        levels=levels,
        orthonormality_residual=ortho,
        matrix_elements=matrix_rows,
        max_matrix_residual=worst,
        adjoint_residual=adjoint,
        tolerance=settings.numeric.tolerance,
    )


_RUNNERS: dict[Command, Callable[[RunConfig], Any]] = {
    Command.CHECK_ALGEBRA: run_check_algebra,
    Command.REPORT: run_module_report,
    Command.LEMMA3: run_lemma3,
    Command.Q2: run_q2,
}


async def dispatch(cfg: RunConfig):
    """Validate and run one command, returning its report."""
    cfg.validate()
    fock.clear_caches()
    return await _RUNNERS[cfg.command](cfg)
