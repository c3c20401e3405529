import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.superalgebra import (
    AlgebraElement,
    CaoId,
    CaoKind,
    CaoSign,
    GeneratorId,
    MixedParityError,
    Parity,
    antisymmetry_violations,
    bracket,
    bracket_elements,
    cao_embed,
    cao_span_dimension,
    center_element,
    defining_rep,
    defining_rep_violations,
    expected_sq_dimension,
    generators,
    parse_generator,
    positive_roots,
    roots,
    super_jacobi_violations,
    super_sign,
    verify_q_statistics,
)

EVEN, ODD = Parity.EVEN, Parity.ODD


def e(i, j, par):
    return GeneratorId(i, j, par)


def generator_pairs(n: int):
    gens = st.sampled_from(generators(n))
    return st.tuples(gens, gens)


class TestBracket:
    def test_even_pair(self):
        expected = AlgebraElement.of(e(0, 0, EVEN)) - AlgebraElement.of(e(1, 1, EVEN))
        assert bracket(e(0, 1, EVEN), e(1, 0, EVEN)) == expected

    def test_odd_square_of_diagonal(self):
        assert bracket(e(0, 0, ODD), e(0, 0, ODD)) == AlgebraElement.of(e(0, 0, EVEN), 2)

    def test_odd_pair_flips_sign(self):
        expected = AlgebraElement.of(e(0, 0, EVEN)) + AlgebraElement.of(e(1, 1, EVEN))
        assert bracket(e(0, 1, ODD), e(1, 0, ODD)) == expected

    def test_rank_check(self):
        with pytest.raises(ValueError):
            bracket(e(0, 2, EVEN), e(0, 0, EVEN), n=1)

    @given(generator_pairs(2))
    def test_super_antisymmetry(self, pair):
        x, y = pair
        assert bracket(x, y) == bracket(y, x).scale(-super_sign(x.parity, y.parity))

    def test_mixed_parity_rejected(self):
        mixed = AlgebraElement.of(e(0, 1, EVEN)) + AlgebraElement.of(e(0, 1, ODD))
        assert mixed.declared_parity == "mixed"
        with pytest.raises(MixedParityError):
            bracket_elements(mixed, AlgebraElement.of(e(1, 0, EVEN)))

    def test_center_commutes_with_everything(self):
        central = center_element(2)
        for g in generators(2):
            assert bracket_elements(central, AlgebraElement.of(g)).is_zero()


class TestGeneratorText:
    def test_render_and_parse(self):
        g = e(2, 0, ODD)
        assert g.render() == "e[2,0]^1"
        assert parse_generator("e[2,0]^1") == g

    @pytest.mark.parametrize("text", ["e[1,2]", "f[1,2]^0", "e[1,2]^2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_generator(text)


class TestDefiningRep:
    def test_even_diagonal(self):
        m = defining_rep(e(0, 0, EVEN), 1)
        assert m.nonzero() == {(0, 0): 1, (2, 2): 1}

    def test_odd_off_diagonal_blocks(self):
        m = defining_rep(e(0, 1, ODD), 1)
        assert m.nonzero() == {(0, 3): 1, (2, 1): 1}

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_homomorphism(self, n):
        assert defining_rep_violations(n) == []


class TestCaoEmbedding:
    @pytest.mark.parametrize(
        "cao, generator",
        [
            (CaoId(CaoKind.B, CaoSign.PLUS, 1), e(1, 0, EVEN)),
            (CaoId(CaoKind.F, CaoSign.MINUS, 3), e(0, 3, ODD)),
            (CaoId(CaoKind.F, CaoSign.PLUS, 2), e(2, 0, ODD)),
        ],
    )
    def test_embedding(self, cao, generator):
        assert cao_embed(cao) == generator

    def test_index_zero_rejected(self):
        with pytest.raises(ValueError):
            CaoId(CaoKind.B, CaoSign.PLUS, 0)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_span_is_sq(self, n):
        assert cao_span_dimension(n) == expected_sq_dimension(n)


class TestQStatistics:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_relations_hold(self, n):
        assert verify_q_statistics(n) == []

    def test_sign_fault_surfaces(self):
        violations = verify_q_statistics(1, sign_fault=True)
        assert violations
        assert {v.relation for v in violations} == {"triple-creation"}

    @pytest.mark.slow
    def test_relations_hold_n4(self):
        assert verify_q_statistics(4) == []


class TestAxioms:
    @pytest.mark.parametrize("n", [1, 2])
    def test_antisymmetry_and_jacobi(self, n):
        assert antisymmetry_violations(n) == []
        assert super_jacobi_violations(n) == []


class TestRoots:
    def test_n1(self):
        table = {r.vector: (r.even_multiplicity, r.odd_multiplicity) for r in roots(1)}
        assert table == {(1, -1): (1, 1), (-1, 1): (1, 1), (0, 0): (0, 2)}

    def test_n2_nonzero_count(self):
        assert sum(1 for r in roots(2) if any(r.vector)) == 6

    def test_positive_roots(self):
        vectors = {r.vector for r in positive_roots(2)}
        assert vectors == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}
