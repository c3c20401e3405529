import asyncio
import threading
import time
from fractions import Fraction

import pytest

from src import suites
from src.config import Bounds
from src.suites import (
    Command,
    RunConfig,
    UsageError,
    dispatch,
    fan_out,
    inner_product_count,
    mp_orthogonality_count,
    q2_closed_form_count,
    q_statistics_instance_count,
    vacuum_relation_count,
)


class TestFanOut:
    def test_preserves_order(self):
        assert asyncio.run(fan_out(lambda x: x * x, range(10), limit=3)) == [x * x for x in range(10)]

    def test_respects_limit(self):
        lock = threading.Lock()
        running = peak = 0

        def work(_):
            nonlocal running, peak
            with lock:
                running += 1
                peak = max(peak, running)
            time.sleep(0.01)
            with lock:
                running -= 1

        asyncio.run(fan_out(work, range(12), limit=2))
        assert peak <= 2

    def test_propagates_errors(self):
        def boom(x):
            raise ArithmeticError(x)

        with pytest.raises(ArithmeticError):
            asyncio.run(fan_out(boom, [1, 2]))


class TestValidation:
    def test_lemma3_r_follows_t(self):
        cfg = RunConfig(Command.LEMMA3, r=2, s=Fraction(1), t=(Fraction(1),) * 3)
        cfg.validate()
        assert cfg.r == 3

    def test_default_level_cap(self):
        assert RunConfig(Command.REPORT, p=3).effective_level_cap == 3 + suites.settings.bounds.level_cap_offset

    @pytest.mark.parametrize(
        "cfg",
        [
            RunConfig(Command.CHECK_ALGEBRA, n=0),
            RunConfig(Command.REPORT, n=1, p=3, level_cap=2),
            RunConfig(Command.LEMMA3, t=(Fraction(1),)),
            RunConfig(Command.LEMMA3, samples=-1),
            RunConfig(Command.Q2, p=0),
            RunConfig(Command.REPORT, n=4, p=2),
            RunConfig(Command.REPORT, n=2, p=5),
            RunConfig(Command.REPORT, n=4, p=6),
            RunConfig(Command.LEMMA3, r=4, samples=0),
        ],
    )
    def test_rejected(self, cfg):
        with pytest.raises(UsageError):
            cfg.validate()

    @pytest.mark.parametrize(
        "cfg",
        [
            RunConfig(Command.CHECK_ALGEBRA, n=4),
            RunConfig(Command.REPORT, n=3, p=4),
            RunConfig(Command.Q2, p=6),
            RunConfig(Command.LEMMA3, r=3, samples=0),
            RunConfig(Command.LEMMA3, s=Fraction(2), t=(Fraction(1),) * 4, samples=0),
        ],
    )
    def test_accepted_at_the_edges(self, cfg):
        cfg.validate()

    def test_report_bounds_follow_settings(self, monkeypatch):
        monkeypatch.setattr(suites.settings, "bounds", Bounds(report_max_n=4, report_max_p=6))
        RunConfig(Command.REPORT, n=4, p=6).validate()
        with pytest.raises(UsageError):
            RunConfig(Command.CHECK_ALGEBRA, n=5).validate()


class TestRunners:
    def test_instance_count(self):
        assert q_statistics_instance_count(1) == 24

    @pytest.mark.parametrize("n, expected", [(1, 12), (2, 34)])
    def test_vacuum_relation_count(self, n, expected):
        assert vacuum_relation_count(n) == expected

    def test_inner_product_count_sums_squared_weight_dimensions(self):
        # levels 0, 1, 2 for n=1 carry 1, 2, 2 keys
        assert inner_product_count(1, 2) == 1 + 4 + 4

    def test_q2_closed_form_count(self):
        # v_0..v_6 and w_1..w_6 under four operators, plus 13 x 13 inner products
        assert q2_closed_form_count(6) == 13 * 4 + 169

    def test_mp_orthogonality_count(self):
        assert mp_orthogonality_count(1, 2) == 2
        assert mp_orthogonality_count(2, 2) == 2 + 8 + 2

    def test_fock_suites_report_real_counts(self):
        specs = suites._fock_suite_specs(1, 2, 3)
        counts = {name: checked for name, checked, _ in specs}
        assert counts["vacuum-relations"] == 12
        assert counts["oracle-equivalence"] == len(suites.fock.keys_up_to(1, 3)) * 4
        assert counts["representation"] == len(suites.fock.keys_up_to(1, 3)) * 16
        assert counts["x-vectors-annihilated"] == 2 * 2
        assert all(checked > 1 for checked in counts.values())

    def test_weight_report_level_p(self):
        row = suites.weight_report((0, 1, 1), 2, 2)
        assert row.full_gram_rank == row.expected_full_gram_rank == 2
        assert row.representatives == ["1,0;0,1", "0,1;0,1"]
        assert row.passed

    def test_weight_report_above_p(self):
        row = suites.weight_report((-1, 3), 1, 2)
        assert row.dim_vp == 0
        assert row.representatives == []

    def test_dispatch_starts_with_empty_caches(self):
        k = suites.fock.BasisKey((1,), (1,))
        suites.fock.key_inner(k, k, 2)
        assert suites.fock._key_inner.cache_info().currsize > 0
        asyncio.run(dispatch(RunConfig(Command.LEMMA3, r=2, samples=1)))
        assert suites.fock._key_inner.cache_info().currsize == 0

    def test_dispatch_q2(self):
        report = asyncio.run(dispatch(RunConfig(Command.Q2, p=3)))
        assert report.passed
        assert report.dim == 6
        assert len(report.levels) == 4

    def test_dispatch_lemma3_seeded(self):
        cfg = RunConfig(Command.LEMMA3, r=4, samples=6, seed=7)
        first = asyncio.run(dispatch(cfg))
        second = asyncio.run(dispatch(RunConfig(Command.LEMMA3, r=4, samples=6, seed=7)))
        assert first.passed
        assert first.symbolic_det is None
        assert [s.s for s in first.samples] == [s.s for s in second.samples]

    @pytest.mark.slow
    @pytest.mark.parametrize("n, p", [(2, 2), (2, 3), (3, 2)])
    def test_dispatch_report(self, n, p):
        assert asyncio.run(dispatch(RunConfig(Command.REPORT, n=n, p=p))).passed
