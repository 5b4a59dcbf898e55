"""
Configuration
=============
Runtime settings read from the environment (optionally via a .env file).

JORDAN_GPT_SEED     RNG seed; overrides --seed on the command line
JORDAN_GPT_TOL      default numerical tolerance
JORDAN_GPT_SAMPLES  default number of random samples per property sweep
"""
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SEED = 0
DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 50
SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Raised when an environment variable holds an unusable value."""


def _read(name: str, cast, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not a valid {cast.__name__}")


def resolve_seed(cli_seed: Optional[int] = None) -> int:
    """Seed precedence: JORDAN_GPT_SEED, then --seed, then 0."""
    env_seed = _read("JORDAN_GPT_SEED", int, None)
    if env_seed is not None:
        seed = env_seed
    elif cli_seed is not None:
        seed = cli_seed
    else:
        seed = DEFAULT_SEED
    if seed < 0 or seed >= 2**64:
        raise ConfigError(f"seed {seed} is outside the unsigned 64-bit range")
    return seed


def default_tol() -> float:
    tol = _read("JORDAN_GPT_TOL", float, DEFAULT_TOL)
    if not tol > 0:
        raise ConfigError(f"JORDAN_GPT_TOL must be positive, got {tol}")
    return tol


def default_samples() -> int:
    samples = _read("JORDAN_GPT_SAMPLES", int, DEFAULT_SAMPLES)
    if samples < 1:
        raise ConfigError(f"JORDAN_GPT_SAMPLES must be at least 1, got {samples}")
    return samples
