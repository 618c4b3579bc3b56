"""
Development settings.

Inherits everything from base and enables debug-friendly defaults.
Never use for long production sweeps.
"""

from .base import *  # noqa: F401, F403
from .base import env

DEBUG = env.bool("DEBUG", default=True)

SECRET_KEY = env("SECRET_KEY", default="dev-only-not-a-secret")  # noqa: S105

# Tableau invariant checks are cheap at test sizes, so dev runs them.
EFFVOL_CHECK_INVARIANTS = env.bool("EFFVOL_CHECK_INVARIANTS", default=True)
