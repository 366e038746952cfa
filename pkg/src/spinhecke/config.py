"""
Process configuration: .env loading, logging setup, environment defaults and the
shipped sign-convention document.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Malformed configuration value or convention document."""


def configure_logging(verbose: bool = False) -> None:
    load_dotenv(override=True)
    if verbose:
        level = logging.DEBUG
    elif os.getenv("RUNNING_IN_PRODUCTION"):
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def default_jobs() -> int:
    return _int_env("SPINHECKE_JOBS", 1)


def default_degree_cap() -> int:
    return _int_env("SPINHECKE_DEGREE_CAP", 12)


def default_height() -> int:
    return _int_env("SPINHECKE_HEIGHT", 3)


@dataclass(frozen=True)
class Conventions:
    tau_equal_even: int = 1
    tau_equal_odd: int = 1
    tau_unequal: int = 1
    braid_sign: int = -1
    demazure_even: int = -1
    demazure_odd: int = 1
    phi_exponent: str = "parity"
    divided_shift_unit: str = "q_i"

    def demazure_sign(self, parity: int) -> int:
        return self.demazure_odd if parity else self.demazure_even


def _sign(doc: dict, *path: str) -> int:
    node = doc
    for key in path:
        if not isinstance(node, dict) or key not in node:
            raise ConfigError(f"Convention document lacks {'.'.join(path)}")
        node = node[key]
    if node not in (1, -1):
        raise ConfigError(f"{'.'.join(path)} must be +1 or -1, got {node!r}")
    return node


def parse_conventions(text: str) -> Conventions:
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise ConfigError("Convention document must be a mapping")
    exponent = doc.get("automorphism_phi", {}).get("exponent", "parity")
    if exponent not in ("parity", "constant"):
        raise ConfigError(f"automorphism_phi.exponent must be 'parity' or 'constant', got {exponent!r}")
    unit = doc.get("divided_power_shift", {}).get("unit", "q_i")
    if unit not in ("q_i", "q"):
        raise ConfigError(f"divided_power_shift.unit must be 'q_i' or 'q', got {unit!r}")
    return Conventions(
        tau_equal_even=_sign(doc, "tau_action", "equal_even"),
        tau_equal_odd=_sign(doc, "tau_action", "equal_odd"),
        tau_unequal=_sign(doc, "tau_action", "unequal"),
        braid_sign=_sign(doc, "braid", "sign"),
        demazure_even=_sign(doc, "demazure", "even"),
        demazure_odd=_sign(doc, "demazure", "odd"),
        phi_exponent=exponent,
        divided_shift_unit=unit,
    )


@lru_cache(maxsize=None)
def load_conventions(path: str | None = None) -> Conventions:
    """The convention document at path, or the one shipped with the package."""
    if path is None:
        text = resources.files("spinhecke").joinpath("conventions.yaml").read_text()
    else:
        text = Path(path).read_text()
    conventions = parse_conventions(text)
    logger.debug(f"Loaded conventions {conventions}")
    return conventions
