"""
Scaling estimates for chaotic circuits with ballistic operator spreading.

A local observable spreads with butterfly velocity v, so after t steps it
covers a disc of radius vt (square lattice) or an interval of width 2vt
(chain). With gate error ε the noisy signal carries the fidelity of the cone
it swept, which gives the precision horizon t_δ:

    ε·(π/3)·v²·t³ + (π/2)·(v·t)² = ln(1/δ)

Everything here is an order-of-magnitude estimate, not a calibrated
prediction.
"""

import enum
import logging
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from apps.core.exceptions import ValidationError

logger = logging.getLogger(__name__)


class Geometry(enum.StrEnum):
    SQUARE_2D = "square_2d"
    CHAIN_1D = "chain_1d"


class TDeltaBranch(enum.StrEnum):
    EXACT_ROOT = "exact_root"
    ZERO_ERROR_FORMULA = "zero_error_formula"
    LARGE_ERROR_ASYMPTOTE = "large_error_asymptote"


@dataclass(frozen=True)
class ChaoticModel:
    v: float
    epsilon: float = 0.0
    delta: float = 0.05
    geometry: Geometry = Geometry.SQUARE_2D
    # ln(1/δ); set it directly when δ underflows a float
    log_inv_delta: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        if self.log_inv_delta is not None:
            if not self.log_inv_delta > 0:
                raise ValidationError(
                    f"ln(1/delta) must be positive, got {self.log_inv_delta}"
                )
            object.__setattr__(self, "delta", math.exp(-self.log_inv_delta))
        elif 0 < self.delta < 1:
            object.__setattr__(self, "log_inv_delta", -math.log(self.delta))
        if not self.v > 0:
            raise ValidationError(f"butterfly velocity must be positive, got {self.v}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.log_inv_delta is None:
            raise ValidationError(
                f"delta must lie in (0, 1), got {self.delta}; "
                "no positive t_delta exists otherwise"
            )


@dataclass(frozen=True)
class TDelta:
    t_delta: float
    branch: TDeltaBranch
    residual: float
    zero_error: float
    large_error: float | None


@dataclass(frozen=True)
class ScalingEstimate:
    v_eff: float
    a_eff: float
    cost_log2: float


def predict_observable_decay(model: ChaoticModel, t: float) -> float:
    """2^{−(π/2)(vt)²} on the square lattice, 2^{−vt} on a chain."""
    if t < 0:
        raise ValidationError(f"t must be non-negative, got {t}")
    vt = model.v * t
    if model.geometry is Geometry.CHAIN_1D:
        return 2.0 ** (-vt)
    return 2.0 ** (-(math.pi / 2) * vt * vt)


def cone_volume(
    v: float, t: float, geometry: Geometry | str = Geometry.SQUARE_2D
) -> float:
    """Space-time volume swept by the cone: (π/3)v²t³, or v·t² on a chain."""
    if Geometry(geometry) is Geometry.CHAIN_1D:
        return v * t * t
    return (math.pi / 3) * v * v * t**3


def noisy_observable_decay(model: ChaoticModel, t: float) -> float:
    fidelity = math.exp(-model.epsilon * cone_volume(model.v, t, model.geometry))
    return fidelity * predict_observable_decay(model, t)


def _horizon(model: ChaoticModel, t: float) -> float:
    v, eps = model.v, model.epsilon
    return eps * (math.pi / 3) * v * v * t**3 + (math.pi / 2) * (v * t) ** 2


def solve_t_delta(model: ChaoticModel, *, asymptotic: bool = False) -> TDelta:
    """
    Positive root of ε(π/3)v²t³ + (π/2)(vt)² = ln(1/δ).

    ε = 0 uses the closed form √(2·ln(1/δ)/π)/v. Otherwise the root is found
    with Brent's method after growing the bracket geometrically; the cubic is
    monotone for t > 0 so a sign change always turns up. With *asymptotic* the
    large-error limit (3·ln(1/δ)/(π·ε·v²))^{1/3} is returned instead.
    """
    target = model.log_inv_delta
    v, eps = model.v, model.epsilon
    zero_error = math.sqrt(2.0 * target / math.pi) / v
    large_error = None
    if eps > 0:
        large_error = (3.0 * target / (math.pi * eps * v * v)) ** (1.0 / 3.0)

    if asymptotic:
        if large_error is None:
            raise ValidationError("the large-error asymptote needs epsilon > 0")
        t, branch = large_error, TDeltaBranch.LARGE_ERROR_ASYMPTOTE
    elif eps == 0:
        t, branch = zero_error, TDeltaBranch.ZERO_ERROR_FORMULA
    else:
        hi = 1.0 / v
        while _horizon(model, hi) < target:
            hi *= 2.0
        t = float(
            brentq(lambda x: _horizon(model, x) - target, 0.0, hi, xtol=1e-15)
        )
        branch = TDeltaBranch.EXACT_ROOT

    residual = abs(_horizon(model, t) - target)
    logger.debug("t_delta=%.6g via %s (residual %.3g)", t, branch, residual)
    return TDelta(t, branch, residual, zero_error, large_error)


def scaling_predictors(
    v: float,
    t: float,
    n: int,
    geometry: Geometry | str = Geometry.SQUARE_2D,
    *,
    beta: float = 1.0,
) -> ScalingEstimate:
    """
    Saturating scalings of effective volume, cut area and log2 cost:

        square_2d   A = min((vt)², n)      V = A·t
        chain_1d    A = min(2vt, n)        V = A·t
        cost_log2 = 2β·A

    β is the entangler-dependent cost exponent per unit area.
    """
    if v <= 0 or t < 0 or n < 1 or beta <= 0:
        raise ValidationError("v, n and beta must be positive and t non-negative")
    vt = v * t
    if Geometry(geometry) is Geometry.CHAIN_1D:
        area = min(2.0 * vt, float(n))
    else:
        area = min(vt * vt, float(n))
    return ScalingEstimate(v_eff=area * t, a_eff=area, cost_log2=2.0 * beta * area)


__all__ = [
    "ChaoticModel",
    "Geometry",
    "ScalingEstimate",
    "TDelta",
    "TDeltaBranch",
    "cone_volume",
    "noisy_observable_decay",
    "predict_observable_decay",
    "scaling_predictors",
    "solve_t_delta",
]
