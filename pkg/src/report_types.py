"""Pydantic report models emitted by the CLI suites.

Every report carries a `passed` verdict and a `to_text()` rendering for
`--format text`; `--format json` is `model_dump_json(indent=2)`.
"""

from pydantic import BaseModel, Field, computed_field


class Violation(BaseModel):
    """One failed identity instance."""
    relation: str
    instance: str
    expected: str = ""
    actual: str = ""

    def to_text(self) -> str:
        text = f"{self.relation}: {self.instance}"
        if self.expected or self.actual:
            text += f"\n    expected {self.expected}\n    actual   {self.actual}"
        return text


class SuiteResult(BaseModel):
    name: str
    checked: int = 0
    violations: list[Violation] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        mark = "OK" if self.passed else "FAIL"
        line = f"  [{mark:4s}] {self.name:34s} checked={self.checked} violations={len(self.violations)}"
        if self.violations:
            line += "\n    first: " + self.violations[0].to_text().replace("\n", "\n    ")
        return line


def _suites_text(suites: list[SuiteResult]) -> str:
    return "\n".join(s.to_text() for s in suites)


# --- check-algebra ---

class RootRow(BaseModel):
    vector: list[int]
    even_multiplicity: int
    odd_multiplicity: int


class AlgebraReport(BaseModel):
    command: str = "check-algebra"
    n: int
    suites: list[SuiteResult] = []
    cao_span_dimension: int = 0
    expected_span_dimension: int = 0
    roots: list[RootRow] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites) and self.cao_span_dimension == self.expected_span_dimension

    def first_violation(self) -> Violation | None:
        for s in self.suites:
            if s.violations:
                return s.violations[0]
        return None

    def to_text(self) -> str:
        lines = [
            f"q({self.n + 1}) structure checks",
            "=" * 60,
            _suites_text(self.suites),
            f"  CAO span dimension: {self.cao_span_dimension} (dim sq = {self.expected_span_dimension})",
            f"  roots: {len(self.roots)} (including the zero root)",
            "=" * 60,
            "PASSED" if self.passed else "FAILED",
        ]
        return "\n".join(lines)


# --- report ---

class WeightReport(BaseModel):
    weight: list[int]
    level: int
    dim_bar: int
    dim_vp: int
    representatives: list[str] = []
    gram_minors: list[str] = []
    positive_definite: bool | None = None
    full_gram_rank: int | None = None
    expected_full_gram_rank: int | None = None
    closed_form: bool | None = None
    quotient_dimension: int | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        if self.dim_vp and self.positive_definite is False:
            return False
        if self.full_gram_rank is not None and self.full_gram_rank != self.expected_full_gram_rank:
            return False
        if self.quotient_dimension is not None and self.quotient_dimension != self.dim_bar:
            return False
        return self.closed_form is not False

    def to_text(self) -> str:
        verdict = {True: "pos-def", False: "NOT pos-def", None: "-"}[self.positive_definite]
        extra = ""
        if self.full_gram_rank is not None:
            extra += f" full-rank={self.full_gram_rank}/{self.expected_full_gram_rank}"
        if self.closed_form is not None:
            extra += f" closed-form={'ok' if self.closed_form else 'MISMATCH'}"
        return (
            f"  {tuple(self.weight)!s:24s} level={self.level} dim_bar={self.dim_bar} "
            f"dim_vp={self.dim_vp} {verdict}{extra}"
        )


class CharTerm(BaseModel):
    exponents: list[int]
    coeff: str


class CharacterReport(BaseModel):
    from_weights: str
    formula: str
    hook_sum: str
    agree: bool
    value_at_ones: int
    terms: list[CharTerm] = []

    def to_text(self) -> str:
        return "\n".join([
            f"  character          : {self.from_weights}",
            f"  h.e formula agrees : {self.formula == self.from_weights}",
            f"  hook sum agrees    : {self.hook_sum == self.from_weights}",
            f"  value at ones      : {self.value_at_ones}",
        ])


class GenerationResult(BaseModel):
    level_cap: int
    closure_dimension: int
    matches: bool
    per_weight: dict[str, list[int]] = {}


class ModuleReport(BaseModel):
    command: str = "report"
    n: int
    p: int
    level_cap: int
    dim_vp: int
    dim_from_weights: int
    gl_decomposition: list[list[int]] = []
    gl_dimensions: list[int] = []
    character: CharacterReport | None = None
    singular_vector: str = ""
    singular_annihilated: bool = True
    generation: GenerationResult | None = None
    weights: list[WeightReport] = []
    suites: list[SuiteResult] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.dim_vp == self.dim_from_weights
            and (not self.gl_dimensions or sum(self.gl_dimensions) == self.dim_vp)
            and (self.character is None or self.character.agree)
            and self.singular_annihilated
            and (self.generation is None or self.generation.matches)
            and all(w.passed for w in self.weights)
            and all(s.passed for s in self.suites)
        )

    def to_text(self) -> str:
        decomposition = " + ".join(str(tuple(h)) for h in self.gl_decomposition)
        lines = [
            f"V_p for q({self.n + 1}), p={self.p} (level cap {self.level_cap})",
            "=" * 60,
            f"  dim V_p            : {self.dim_vp} (weights give {self.dim_from_weights})",
            f"  gl({self.n + 1}) decomposition : {decomposition} dims={self.gl_dimensions}",
        ]
        if self.character is not None:
            lines.append(self.character.to_text())
        if self.singular_vector:
            lines.append(f"  singular vector    : {self.singular_vector}")
            lines.append(f"  annihilated        : {self.singular_annihilated}")
        if self.generation is not None:
            lines.append(
                f"  CAO closure        : dim {self.generation.closure_dimension}, "
                f"matches M_p at level p: {self.generation.matches}"
            )
        if self.weights:
            lines.append("  weights:")
            lines.extend(w.to_text() for w in self.weights)
        if self.suites:
            lines.append(_suites_text(self.suites))
        lines += ["=" * 60, "PASSED" if self.passed else "FAILED"]
        return "\n".join(lines)


# --- lemma3 ---

class SampleRecord(BaseModel):
    s: str
    t: list[str]
    det: str
    expected: str

    @computed_field
    @property
    def passed(self) -> bool:
        return self.det == self.expected


class Lemma3Report(BaseModel):
    command: str = "lemma3"
    r: int
    symbolic_det: str | None = None
    expected_det: str | None = None
    det_matches: bool | None = None
    permutation_invariant: bool | None = None
    inverse_identity: bool | None = None
    s: str | None = None
    t: list[str] | None = None
    rank: int | None = None
    expected_rank: int | None = None
    samples: list[SampleRecord] = []

    @computed_field
    @property
    def passed(self) -> bool:
        flags = [self.det_matches, self.permutation_invariant, self.inverse_identity]
        if any(f is False for f in flags):
            return False
        if self.expected_rank is not None and self.rank != self.expected_rank:
            return False
        return all(s.passed for s in self.samples)

    def to_text(self) -> str:
        lines = [f"matrix A, r={self.r} (order {2 ** self.r})", "=" * 60]
        if self.symbolic_det is not None:
            lines.append(f"  det A              : {self.symbolic_det}")
            lines.append(f"  expected           : {self.expected_det} -> {self.det_matches}")
        if self.permutation_invariant is not None:
            lines.append(f"  t-permutation invariant : {self.permutation_invariant}")
        if self.s is not None:
            lines.append(f"  s={self.s} t={self.t}")
        if self.rank is not None:
            lines.append(f"  rank               : {self.rank} (expected {self.expected_rank})")
        if self.inverse_identity is not None:
            lines.append(f"  A(s)A(-s) = (sum t - s^2) I : {self.inverse_identity}")
        if self.samples:
            ok = sum(1 for s in self.samples if s.passed)
            lines.append(f"  sampled determinant identity: {ok}/{len(self.samples)} points")
        lines += ["=" * 60, "PASSED" if self.passed else "FAILED"]
        return "\n".join(lines)


# --- q2 ---

class Q2LevelRow(BaseModel):
    k: int
    vv: str
    ww: str | None = None
    vw: str | None = None
    gram_det: str | None = None
    expected_gram_det: str | None = None
    phi: list[str] | None = None
    psi: list[str] | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        return self.gram_det == self.expected_gram_det


class MatrixElementRow(BaseModel):
    op: str
    source: str
    target: str
    displayed: str
    transported: str
    residual: float


class Q2Report(BaseModel):
    command: str = "q2"
    p: int
    dim: int
    decomposition: list[list[int]] = []
    primitive: str = ""
    primitive_annihilated: bool = True
    primitive_unique: bool = True
    suites: list[SuiteResult] = []
    levels: list[Q2LevelRow] = []
    orthonormality_residual: float = 0.0
    matrix_elements: list[MatrixElementRow] = []
    max_matrix_residual: float = 0.0
    adjoint_residual: float = 0.0
    tolerance: float = Field(default=1e-10)

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.primitive_annihilated
            and self.primitive_unique
            and all(s.passed for s in self.suites)
            and all(row.passed for row in self.levels)
            and self.orthonormality_residual < self.tolerance
            and self.max_matrix_residual < self.tolerance
            and self.adjoint_residual < self.tolerance
        )

    def to_text(self) -> str:
        decomposition = " + ".join(str(tuple(h)) for h in self.decomposition)
        lines = [
            f"q(2), p={self.p}",
            "=" * 60,
            f"  dim V_p            : {self.dim}",
            f"  gl(2) decomposition: {decomposition}",
            f"  primitive vector   : {self.primitive} (annihilated: {self.primitive_annihilated}, "
            f"unique: {self.primitive_unique})",
            _suites_text(self.suites),
            "  k  <v|v>  <w|w>  <v|w>  det",
        ]
        for row in self.levels:
            lines.append(f"  {row.k}  {row.vv}  {row.ww or '-'}  {row.vw or '-'}  {row.gram_det or '-'}")
        lines += [
            f"  orthonormality residual : {self.orthonormality_residual:.3e}",
            f"  matrix-element residual : {self.max_matrix_residual:.3e} over {len(self.matrix_elements)} entries",
            f"  adjointness residual    : {self.adjoint_residual:.3e}",
            "=" * 60,
            "PASSED" if self.passed else "FAILED",
        ]
        return "\n".join(lines)
