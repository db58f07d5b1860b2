"""
Runtime configuration for the signed Laplacian toolkit.

Values come from the environment (optionally a .env file) with fixed defaults.
"""

import os
from dotenv import load_dotenv

from core.error_handler import ValidationError

load_dotenv()

TOOL_NAME = "signed-laplacian-bounds"
TOOL_VERSION = "1.0.0"


def _float_setting(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ValidationError(f"{name} must be a number, got '{raw}'", field=name, value=raw, original_error=e)


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValidationError(f"{name} must be an integer, got '{raw}'", field=name, value=raw, original_error=e)


# Numerical tolerances
TAU_EIG = _float_setting("SLB_TAU_EIG", 1e-10)
TAU_PROJ = _float_setting("SLB_TAU_PROJ", 1e-12)
POSITIVITY_TOL = 1e-12

# Eigensolver controls
JACOBI_MAX_SWEEPS = _int_setting("SLB_JACOBI_MAX_SWEEPS", 100)
JACOBI_CUTOFF = _int_setting("SLB_JACOBI_CUTOFF", 32)
POWER_ITERATION_THRESHOLD = _int_setting("SLB_POWER_ITERATION_THRESHOLD", 800)

# Experiments
DEFAULT_SEED = _int_setting("SLB_DEFAULT_SEED", 0)
WORKERS = _int_setting("SLB_WORKERS", 1)

# Logging
ERROR_LOG = os.getenv("SLB_ERROR_LOG", "signed_laplacian_errors.log")
LOG_LEVEL = os.getenv("SLB_LOG_LEVEL", "INFO").upper()
