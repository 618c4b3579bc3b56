"""
Base Django settings for effvol-lab.

Shared across all environments. Do not put secrets or environment-specific
values here; use dev.py or prod.py for those.

The project has no database and no HTTP surface. Django provides the settings
layer, the management-command CLI and the test runner.
"""

from pathlib import Path

import environ

# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

# settings/ → config/ → project root
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# ---------------------------------------------------------------------------
# Environment variables
# ---------------------------------------------------------------------------

env = environ.Env(
    DEBUG=(bool, False),
)
environ.Env.read_env(BASE_DIR / ".env")

INSTALLED_APPS = [
    # Local apps
    "apps.core",
    "apps.circuits",
    "apps.statevector",
    "apps.clifford",
    "apps.effvol",
    "apps.tncost",
    "apps.analysis",
    "apps.cli",
]

# ---------------------------------------------------------------------------
# Database
# ---------------------------------------------------------------------------

DATABASES = {}

# ---------------------------------------------------------------------------
# Internationalisation
# ---------------------------------------------------------------------------

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------

# Bytes available to dense state vectors and contraction intermediates.
# 8 GiB admits n ≤ 28 at complex128 and n ≤ 29 at complex64.
EFFVOL_MEMORY_BUDGET = env.int("EFFVOL_MEMORY_BUDGET", default=8 * 1024**3)

# "complex128" or "complex64"
EFFVOL_PRECISION = env("EFFVOL_PRECISION", default="complex128")

# Amplitudes processed per kernel chunk.
EFFVOL_CHUNK_SIZE = env.int("EFFVOL_CHUNK_SIZE", default=1 << 20)

# Merge evaluations the contraction-order search may spend.
EFFVOL_OPTIMIZER_BUDGET = env.int("EFFVOL_OPTIMIZER_BUDGET", default=10**6)

# Below this effective fidelity error mitigation is refused.
EFFVOL_MITIGATION_FLOOR = env.float("EFFVOL_MITIGATION_FLOOR", default=1e-6)

# |⟨Z⟩| threshold defining steps-to-decay.
EFFVOL_DECAY_THRESHOLD = env.float("EFFVOL_DECAY_THRESHOLD", default=0.05)

# Worker processes for sweeps; 1 runs in-process.
EFFVOL_WORKERS = env.int("EFFVOL_WORKERS", default=1)

EFFVOL_OUTPUT_DIR = Path(env("EFFVOL_OUTPUT_DIR", default=str(BASE_DIR / "output")))

# Tableau commutation/rank checks after every gate.
EFFVOL_CHECK_INVARIANTS = env.bool("EFFVOL_CHECK_INVARIANTS", default=False)

# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------

LOG_LEVEL = env("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
