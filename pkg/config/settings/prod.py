"""
Production settings.

Inherits from base. Used for long figure sweeps on a workstation or batch node.
All secrets MUST be provided via environment variables.
"""

from .base import *  # noqa: F401, F403
from .base import env

DEBUG = False

SECRET_KEY = env("SECRET_KEY")

EFFVOL_CHECK_INVARIANTS = env.bool("EFFVOL_CHECK_INVARIANTS", default=False)

# Sweeps run unattended; keep the console quieter.
LOGGING["loggers"]["apps"]["level"] = env("LOG_LEVEL", default="WARNING")  # noqa: F405
