"""
Exponential decay fits and steps-to-decay for observable time series.

A series is a list of (t, value) pairs in increasing t. Fits are least squares
on log2|value| against t, so the rate is a base-2 exponent per step.
"""

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
from django.conf import settings
from scipy import stats

from apps.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

NUMERICAL_FLOOR = 1e-12
WINDOW_CEILING = 0.9
# t = 0, 1 are the initial drop, not the asymptotic decay
TRANSIENT_STEPS = 2
MIN_POINTS = 3

Series = Sequence[tuple[float, float]]


@dataclass(frozen=True)
class DecayFit:
    rate: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    points: int

    def to_dict(self) -> dict[str, Any]:
        doc = asdict(self)
        doc["window"] = list(self.window)
        return doc


@dataclass(frozen=True)
class DecayScan:
    thetas: tuple[float, ...]
    steps: tuple[float, ...]
    nonincreasing_fraction: float
    spearman_rho: float
    spearman_pvalue: float


def _threshold(threshold: float | None) -> float:
    value = settings.EFFVOL_DECAY_THRESHOLD if threshold is None else threshold
    if not 0 < value < 1:
        raise ValidationError(f"decay threshold must lie in (0, 1), got {value}")
    return float(value)


def steps_to_decay(series: Series, threshold: float | None = None) -> float:
    """
    First t at which |value| drops below *threshold*, interpolated linearly
    between the two samples around the crossing; ``math.inf`` if it never does.
    """
    threshold = _threshold(threshold)
    prev: tuple[float, float] | None = None
    for t, value in series:
        mag = abs(value)
        if mag < threshold:
            if prev is None:
                return float(t)
            t0, m0 = prev
            return t0 + (m0 - threshold) / (m0 - mag) * (t - t0)
        prev = (float(t), mag)
    return math.inf


def fit_decay(
    series: Series,
    threshold: float | None = None,
    *,
    floor: float = NUMERICAL_FLOOR,
) -> tuple[DecayFit | None, float]:
    """
    Fit log2|value| = intercept + rate·t over the samples past the transient
    with floor < |value| < 0.9, and report steps-to-decay alongside.

    The fit is None when fewer than three samples fall in that window (a
    series that never leaves 1.0, say); steps-to-decay is still reported.
    """
    if not series:
        raise ValidationError("cannot fit an empty series")
    threshold = _threshold(threshold)
    if all(abs(v) <= floor for _, v in series):
        raise ValidationError(f"every value is below the numerical floor {floor}")
    steps = steps_to_decay(series, threshold)
    window = [
        (float(t), abs(v))
        for t, v in series
        if t >= TRANSIENT_STEPS and floor < abs(v) < WINDOW_CEILING
    ]
    if len(window) < MIN_POINTS:
        logger.debug(
            "no decay fit: %d point(s) in the window, need %d; steps-to-decay %.3f",
            len(window),
            MIN_POINTS,
            steps,
        )
        return None, steps
    ts = np.array([t for t, _ in window])
    logs = np.log2([m for _, m in window])
    result = stats.linregress(ts, logs)
    r_squared = 1.0 if np.ptp(logs) == 0 else float(np.clip(result.rvalue**2, 0, 1))
    fit = DecayFit(
        rate=float(result.slope),
        intercept=float(result.intercept),
        r_squared=r_squared,
        window=(float(ts[0]), float(ts[-1])),
        points=len(window),
    )
    logger.debug(
        "decay fit rate %.4f r2 %.4f over %s, steps-to-decay %.3f",
        fit.rate,
        fit.r_squared,
        fit.window,
        steps,
    )
    return fit, steps


def threshold_sensitivity(
    series: Series, thresholds: Iterable[float]
) -> list[tuple[float, float]]:
    return [(float(th), steps_to_decay(series, th)) for th in thresholds]


def steps_to_decay_scan(
    thetas: Sequence[float],
    provider: Callable[[float], Series],
    threshold: float | None = None,
) -> DecayScan:
    """
    Steps-to-decay per θ_h with two trend statistics: the fraction of adjacent
    pairs that do not increase, and Spearman's ρ between θ_h and the steps.
    """
    if len(thetas) < 2:
        raise ValidationError("a scan needs at least two theta values")
    ordered = sorted(float(x) for x in thetas)
    steps = [steps_to_decay(provider(theta), threshold) for theta in ordered]
    for theta, s in zip(ordered, steps, strict=True):
        logger.info("theta_h=%.4f steps-to-decay %.3f", theta, s)
    pairs = list(zip(steps, steps[1:], strict=False))
    fraction = sum(1 for a, b in pairs if b <= a) / len(pairs)
    if len(set(steps)) > 1:
        rho, pvalue = stats.spearmanr(ordered, steps)
    else:
        rho, pvalue = math.nan, math.nan
    return DecayScan(
        thetas=tuple(ordered),
        steps=tuple(steps),
        nonincreasing_fraction=fraction,
        spearman_rho=float(rho),
        spearman_pvalue=float(pvalue),
    )


__all__ = [
    "DecayFit",
    "DecayScan",
    "NUMERICAL_FLOOR",
    "fit_decay",
    "steps_to_decay",
    "steps_to_decay_scan",
    "threshold_sensitivity",
]
