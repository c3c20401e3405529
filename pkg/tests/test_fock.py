import pytest

from src import fock
from src.fock import (
    BasisKey,
    FockState,
    apply_annihilate,
    apply_cao,
    apply_create,
    apply_word,
    center_violations,
    inner_product,
    inner_product_violations,
    key_inner,
    keys_at_level,
    keys_of_weight,
    level,
    oracle_apply,
    oracle_discrepancies,
    parse_key,
    x_vector_law_violations,
    representation_violations,
    vacuum_relation_violations,
    weight_of,
    x_annihilation_violations,
    x_vector,
)
from src.scalar import QuadScalar, sqrt_p
from src.superalgebra import CaoId, CaoKind, CaoSign, GeneratorId, Parity, annihilators, cao_embed

B_PLUS = CaoId(CaoKind.B, CaoSign.PLUS, 1)
B_MINUS = CaoId(CaoKind.B, CaoSign.MINUS, 1)
F_PLUS = CaoId(CaoKind.F, CaoSign.PLUS, 1)
F_MINUS = CaoId(CaoKind.F, CaoSign.MINUS, 1)


def key(k, l):
    return BasisKey(tuple(k), tuple(l))


def ket(k, l, p):
    return FockState.basis(key(k, l), p)


class TestKeys:
    @pytest.mark.parametrize(
        "k, l, p, weight",
        [
            ((1, 0), (1, 1), 5, (2, 2, 1)),
            ((0, 0), (0, 0), 4, (4, 0, 0)),
            ((2,), (1,), 3, (0, 3)),
        ],
    )
    def test_weight_of(self, k, l, p, weight):
        assert weight_of(key(k, l), p) == weight

    def test_level(self):
        assert level(key((0, 0), (0, 0))) == 0
        assert level(key((1, 0), (0, 1))) == 2
        assert level(key((3,), (1,))) == 4

    def test_odd_occupation_must_be_bit(self):
        with pytest.raises(ValueError):
            key((0,), (2,))

    def test_text_form(self):
        k = key((2, 0), (1, 1))
        assert k.render() == "2,1;0,1"
        assert parse_key("2,1;0,1") == k
        with pytest.raises(ValueError):
            parse_key("2,2")

    def test_keys_of_weight_reverse_binary(self):
        assert keys_of_weight((1, 1)) == [
            key((1, 1), (0, 0)),
            key((0, 1), (1, 0)),
            key((1, 0), (0, 1)),
            key((0, 0), (1, 1)),
        ]

    def test_keys_at_level_count(self):
        # n=1: every level >= 1 has v_k and w_k
        assert len(keys_at_level(1, 3)) == 2


class TestCreation:
    def test_b_plus_raises_k(self):
        assert apply_create(B_PLUS, FockState.vacuum(2, 3)) == ket((1, 0), (0, 0), 3)

    def test_f_plus_twice_vanishes(self):
        assert apply_word([F_PLUS, F_PLUS], FockState.vacuum(1, 2)).is_zero()

    def test_f_plus_sign_past_odd_occupation(self):
        f2 = CaoId(CaoKind.F, CaoSign.PLUS, 2)
        assert apply_create(f2, ket((0, 0), (1, 0), 4)) == -ket((0, 0), (1, 1), 4)

    def test_annihilator_rejected(self):
        with pytest.raises(ValueError):
            apply_create(B_MINUS, FockState.vacuum(1, 2))


class TestAnnihilation:
    @pytest.mark.parametrize("p", [1, 2, 3, 5])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_b_minus_on_bosonic_tower(self, p, k):
        expected = ket((k - 1,), (0,), p).scale(k * (p - k + 1))
        assert apply_annihilate(B_MINUS, ket((k,), (0,), p)) == expected

    def test_f_minus_on_first_level(self):
        p = 3
        assert apply_annihilate(F_MINUS, ket((1,), (0,), p)) == FockState.vacuum(1, p).scale(sqrt_p(p))

    def test_n2_nearest_neighbour_terms(self):
        p = 3
        f2 = CaoId(CaoKind.F, CaoSign.MINUS, 2)
        b2 = CaoId(CaoKind.B, CaoSign.MINUS, 2)
        one = QuadScalar.one(p)
        root = sqrt_p(p)
        assert apply_annihilate(f2, ket((0, 1), (1, 0), p)) == (
            ket((0, 0), (1, 0), p).scale(-root) + ket((1, 0), (0, 0), p).scale(one)
        )
        assert apply_annihilate(b2, ket((1, 0), (0, 1), p)) == (
            ket((1, 0), (0, 0), p).scale(root) - ket((0, 0), (1, 0), p)
        )

    def test_vacuum_killed(self):
        v0 = FockState.vacuum(3, 2)
        for c in annihilators(3):
            assert apply_annihilate(c, v0).is_zero()

    def test_matches_oracle_on_example(self):
        v = ket((1, 0), (0, 1), 3)
        f1 = CaoId(CaoKind.F, CaoSign.MINUS, 1)
        assert apply_annihilate(f1, v) == oracle_apply(cao_embed(f1), v)


class TestXVectors:
    def test_vacuum(self):
        assert x_vector(key((0,), (0,)), 3) == FockState.vacuum(1, 3).scale(sqrt_p(3))

    def test_single_odd(self):
        p = 3
        assert x_vector(key((0,), (1,)), p) == ket((1,), (0,), p) - ket((0,), (1,), p).scale(sqrt_p(p))

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_top_bosonic_key(self, p):
        expected = ket((p,), (0,), p).scale(sqrt_p(p)) - ket((p - 1,), (1,), p).scale(p)
        assert x_vector(key((p,), (0,)), p) == expected


class TestInnerProduct:
    def test_vacuum_norm(self):
        v0 = FockState.vacuum(2, 3)
        assert inner_product(v0, v0) == 1

    @pytest.mark.parametrize("p", [1, 2, 3, 5])
    def test_mixed_first_level(self, p):
        assert key_inner(key((1,), (0,)), key((0,), (1,)), p) == sqrt_p(p)

    def test_different_weights_vanish(self):
        assert key_inner(key((1, 0), (0, 0)), key((0, 1), (0, 0)), 3) == 0

    def test_module_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(FockState.vacuum(1, 2), FockState.vacuum(1, 3))


class TestCaches:
    def test_caches_are_bounded(self):
        assert fock._key_inner.cache_info().maxsize == fock.KEY_INNER_CACHE_SIZE
        assert fock._act_on_word.cache_info().maxsize == fock.ORACLE_CACHE_SIZE

    def test_clear_caches_empties_both(self):
        k = key((1, 0), (1, 0))
        key_inner(k, k, 3)
        oracle_apply(GeneratorId(0, 1, Parity.EVEN), ket((1, 0), (1, 0), 3))
        assert fock._key_inner.cache_info().currsize > 0
        assert fock._act_on_word.cache_info().currsize > 0
        fock.clear_caches()
        assert fock._key_inner.cache_info().currsize == 0
        assert fock._act_on_word.cache_info().currsize == 0

    def test_values_survive_clearing(self):
        k = key((2,), (1,))
        before = key_inner(k, k, 4)
        fock.clear_caches()
        assert key_inner(k, k, 4) == before


class TestOracle:
    def test_vacuum_seeds(self):
        v0 = FockState.vacuum(1, 5)
        assert oracle_apply(GeneratorId(0, 0, Parity.ODD), v0) == v0.scale(sqrt_p(5))
        assert oracle_apply(GeneratorId(1, 1, Parity.EVEN), v0).is_zero()

    @pytest.mark.parametrize("n, p", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_closed_forms_agree(self, n, p):
        assert oracle_discrepancies(n, p, 3) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("n, p", [(1, 2), (2, 3), (3, 2), (3, 3)])
    def test_closed_forms_agree_level_4(self, n, p):
        assert oracle_discrepancies(n, p, 4) == []


class TestSuites:
    @pytest.mark.parametrize("n, p", [(1, 1), (1, 3), (2, 2), (3, 2)])
    def test_vacuum_relations(self, n, p):
        assert vacuum_relation_violations(n, p) == []

    @pytest.mark.parametrize("n, p", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_x_vector_laws(self, n, p):
        assert x_vector_law_violations(n, p, p + 1) == []
        assert x_annihilation_violations(n, p) == []

    @pytest.mark.parametrize("n, p", [(1, 2), (2, 2)])
    def test_representation(self, n, p):
        assert representation_violations(n, p, p + 1) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("n, p", [(2, 3), (3, 2), (3, 3)])
    def test_representation_acceptance(self, n, p):
        assert representation_violations(n, p, p + 2) == []

    @pytest.mark.parametrize("n, p", [(1, 3), (2, 2)])
    def test_center_and_form(self, n, p):
        assert center_violations(n, p, 3) == []
        assert inner_product_violations(n, p, 3) == []

    def test_apply_cao_dispatch(self):
        v0 = FockState.vacuum(1, 2)
        assert apply_cao(B_PLUS, v0) == ket((1,), (0,), 2)
        assert apply_cao(B_MINUS, v0).is_zero()
