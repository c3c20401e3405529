"""Shared fixtures and hypothesis settings."""

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "qfock",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qfock")

# non-square radicands keep sqrt(p) irrational
RADICANDS = (2, 3, 5, 6, 7)

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def quad_scalars(draw, p: int | None = None):
    from src.scalar import QuadScalar

    radicand = p if p is not None else draw(st.sampled_from(RADICANDS))
    return QuadScalar(draw(small_fractions), draw(small_fractions), radicand)


@pytest.fixture
def fresh_settings(monkeypatch, tmp_path):
    """Build Settings against a scratch YAML path with QFOCK_* env cleared."""
    from src import config

    for name in list(config.os.environ):
        if name.startswith("QFOCK_") or name in ("MAX_CONCURRENT", "LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)

    def build(yaml_text: str | None = None):
        path = tmp_path / "qfock.yaml"
        if yaml_text is not None:
            path.write_text(yaml_text, encoding="utf-8")
        return config.Settings.from_yaml(path)

    return build
