"""Configuration & environment variable loading.

Precedence, highest first:
1. QFOCK_* / MAX_CONCURRENT / LOG_LEVEL environment variables (.env included)
2. qfock.yaml in project root
3. Built-in defaults
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load .env from project root
_project_root = Path(__file__).resolve().parent.parent
load_dotenv(_project_root / ".env")

CONFIG_FILENAME = "qfock.yaml"


# ---------------------------------------------------------------------------
# YAML loading helpers
# ---------------------------------------------------------------------------

def _load_qfock_yaml(path: Path | None = None) -> dict:
    """Load qfock.yaml. Returns {} if absent or unusable."""
    yaml_path = path or _project_root / CONFIG_FILENAME
    if not yaml_path.exists():
        return {}

    try:
        with open(yaml_path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        logger.warning("%s could not be parsed (%s). Using defaults.", yaml_path.name, e)
        return {}

    if data is None:
        return {}
    if not isinstance(data, dict):
        logger.warning("%s is not a valid mapping. Using defaults.", yaml_path.name)
        return {}

    return data


def _section(data: dict, name: str) -> dict:
    value = data.get(name) or {}
    if not isinstance(value, dict):
        logger.warning("Section '%s' in %s is not a mapping, ignoring it.", name, CONFIG_FILENAME)
        return {}
    return value


def _pick(env_var: str, section: dict, key: str, default: Any, cast: Callable[[Any], Any]) -> Any:
    """Env var beats YAML beats default; unparseable values fall back with a warning."""
    raw = os.getenv(env_var)
    source = env_var
    if raw is None or not raw.strip():
        if key not in section:
            return default
        raw = section[key]
        source = f"{CONFIG_FILENAME}:{key}"
    try:
        return cast(raw)
    except (TypeError, ValueError):
        logger.warning("Invalid value %r for %s, using default %r.", raw, source, default)
        return default


# ---------------------------------------------------------------------------
# Grouped settings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    """Upper limits accepted by the CLI before it refuses with a usage error."""
    max_n: int = 4
    max_p: int = 6
    max_r: int = 4
    # report builds every weight space of V_p, far heavier than check-algebra or q2
    report_max_n: int = 3
    report_max_p: int = 4
    level_cap_offset: int = 2   # default level_cap = p + offset

    def level_cap_for(self, p: int) -> int:
        return p + self.level_cap_offset


@dataclass(frozen=True)
class NumericConfig:
    """Floating-point and sampling parameters."""
    tolerance: float = 1e-10
    precision: int = 40         # mpmath decimal digits
    samples: int = 50
    seed: int = 7


def build_bounds(data: dict) -> Bounds:
    sec = _section(data, "bounds")
    return Bounds(
        max_n=_pick("QFOCK_MAX_N", sec, "max_n", Bounds.max_n, int),
        max_p=_pick("QFOCK_MAX_P", sec, "max_p", Bounds.max_p, int),
        max_r=_pick("QFOCK_MAX_R", sec, "max_r", Bounds.max_r, int),
        report_max_n=_pick("QFOCK_REPORT_MAX_N", sec, "report_max_n", Bounds.report_max_n, int),
        report_max_p=_pick("QFOCK_REPORT_MAX_P", sec, "report_max_p", Bounds.report_max_p, int),
        level_cap_offset=_pick(
            "QFOCK_LEVEL_CAP_OFFSET", sec, "level_cap_offset", Bounds.level_cap_offset, int,
        ),
    )


def build_numeric(data: dict) -> NumericConfig:
    sec = _section(data, "numeric")
    return NumericConfig(
        tolerance=_pick("QFOCK_TOLERANCE", sec, "tolerance", NumericConfig.tolerance, float),
        precision=_pick("QFOCK_PRECISION", sec, "precision", NumericConfig.precision, int),
        samples=_pick("QFOCK_SAMPLES", sec, "samples", NumericConfig.samples, int),
        seed=_pick("QFOCK_SEED", sec, "seed", NumericConfig.seed, int),
    )


_yaml_data = _load_qfock_yaml()


# ---------------------------------------------------------------------------
# Settings singleton
# ---------------------------------------------------------------------------

@dataclass
class Settings:
    bounds: Bounds = field(default_factory=lambda: build_bounds(_yaml_data))
    numeric: NumericConfig = field(default_factory=lambda: build_numeric(_yaml_data))
    max_concurrent: int = field(
        default_factory=lambda: _pick("MAX_CONCURRENT", _yaml_data, "max_concurrent", 4, int)
    )
    log_level: str = field(
        default_factory=lambda: str(_pick("LOG_LEVEL", _yaml_data, "log_level", "INFO", str)).upper()
    )

    @classmethod
    def from_yaml(cls, path: Path) -> "Settings":
        """Settings built from an explicit YAML file, env overrides still applied."""
        data = _load_qfock_yaml(path)
        return cls(
            bounds=build_bounds(data),
            numeric=build_numeric(data),
            max_concurrent=_pick("MAX_CONCURRENT", data, "max_concurrent", 4, int),
            log_level=str(_pick("LOG_LEVEL", data, "log_level", "INFO", str)).upper(),
        )


settings = Settings()
