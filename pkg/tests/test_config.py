import logging

from src.config import Bounds, NumericConfig


class TestDefaults:
    def test_no_file(self, fresh_settings):
        s = fresh_settings()
        assert s.bounds == Bounds()
        assert s.numeric == NumericConfig()
        assert s.max_concurrent == 4
        assert s.log_level == "INFO"

    def test_report_bounds_tighter_than_algebra_and_q2(self):
        b = Bounds()
        assert (b.report_max_n, b.report_max_p) == (3, 4)
        assert b.report_max_n < b.max_n and b.report_max_p < b.max_p

    def test_level_cap(self):
        assert Bounds().level_cap_for(3) == 5
        assert Bounds(level_cap_offset=0).level_cap_for(3) == 3


class TestYaml:
    def test_sections_override(self, fresh_settings):
        s = fresh_settings(
            "bounds:\n  max_p: 8\nnumeric:\n  precision: 60\n  seed: 3\nmax_concurrent: 2\nlog_level: debug\n"
        )
        assert s.bounds.max_p == 8
        assert s.bounds.max_n == Bounds.max_n
        assert s.numeric.precision == 60
        assert s.numeric.seed == 3
        assert s.max_concurrent == 2
        assert s.log_level == "DEBUG"

    def test_env_beats_yaml(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("QFOCK_MAX_P", "5")
        monkeypatch.setenv("MAX_CONCURRENT", "8")
        s = fresh_settings("bounds:\n  max_p: 8\nmax_concurrent: 2\n")
        assert s.bounds.max_p == 5
        assert s.max_concurrent == 8

    def test_blank_env_ignored(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("QFOCK_SAMPLES", "  ")
        assert fresh_settings("numeric:\n  samples: 12\n").numeric.samples == 12

    def test_unparseable_file(self, fresh_settings, caplog):
        with caplog.at_level(logging.WARNING, logger="src.config"):
            s = fresh_settings("bounds: [unclosed\n")
        assert s.bounds == Bounds()
        assert "could not be parsed" in caplog.text

    def test_not_a_mapping(self, fresh_settings, caplog):
        with caplog.at_level(logging.WARNING, logger="src.config"):
            s = fresh_settings("- just\n- a list\n")
        assert s.numeric == NumericConfig()
        assert "not a valid mapping" in caplog.text

    def test_bad_section(self, fresh_settings, caplog):
        with caplog.at_level(logging.WARNING, logger="src.config"):
            s = fresh_settings("bounds: 3\n")
        assert s.bounds == Bounds()
        assert "not a mapping" in caplog.text

    def test_bad_value_falls_back(self, fresh_settings, monkeypatch, caplog):
        monkeypatch.setenv("QFOCK_TOLERANCE", "tiny")
        with caplog.at_level(logging.WARNING, logger="src.config"):
            s = fresh_settings("numeric:\n  precision: lots\n")
        assert s.numeric.tolerance == NumericConfig.tolerance
        assert s.numeric.precision == NumericConfig.precision
        assert "QFOCK_TOLERANCE" in caplog.text

    def test_report_bounds_from_yaml_and_env(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("QFOCK_REPORT_MAX_P", "5")
        s = fresh_settings("bounds:\n  report_max_n: 4\n  report_max_p: 3\n")
        assert s.bounds.report_max_n == 4
        assert s.bounds.report_max_p == 5
        assert s.bounds.max_n == Bounds.max_n
