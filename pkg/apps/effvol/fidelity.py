"""
Effective-fidelity arithmetic.

    F_eff        = exp(−ε · V_eff)
    mitigated    = raw / F_eff
    V_eff        = ln(1 / ratio) / ε
    V_max        = ln(|⟨O⟩_ideal| / δ) / ε
    χ            ≥ F / ⟨Tr ρ_A²⟩

Natural logarithms throughout; costs elsewhere are reported in log2.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from django.conf import settings

from apps.clifford.purity import PurityPoint
from apps.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

# cost exponent per unit cut area, set by the entangler's Schmidt spectrum
ENTANGLER_ALPHA = {"iswap": 2.0, "cz": 1.0}


@dataclass(frozen=True)
class FidelityModel:
    epsilon: float
    v_eff: float

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.v_eff < 0:
            raise ValidationError(f"V_eff must be non-negative, got {self.v_eff}")


@dataclass(frozen=True)
class VolumeEstimate:
    count: int
    raw: float


@dataclass(frozen=True)
class ChiBound:
    chi: float
    log2_chi: float
    gate_count: int | None = None


def effective_fidelity(model: FidelityModel) -> float:
    return math.exp(-model.epsilon * model.v_eff)


def mitigate(raw: float, f_eff: float, *, floor: float | None = None) -> float:
    """Divide out the effective fidelity; refused below the noise floor."""
    floor = settings.EFFVOL_MITIGATION_FLOOR if floor is None else floor
    if f_eff <= 0 or f_eff < floor:
        raise ValidationError(
            f"F_eff={f_eff:.3e} is below the mitigation floor {floor:.1e}"
        )
    return raw / f_eff


def veff_from_ratio(ratio: float, epsilon: float) -> VolumeEstimate:
    """Effective volume implied by an unmitigated/mitigated ratio."""
    if epsilon <= 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    if not 0 < ratio <= 1:
        raise ValidationError(f"ratio must lie in (0, 1], got {ratio}")
    raw = math.log(1.0 / ratio) / epsilon
    return VolumeEstimate(count=round(raw), raw=raw)


def max_feasible_volume(
    epsilon: float, ideal_magnitude: float, delta: float
) -> VolumeEstimate:
    """Largest volume whose attenuated signal still exceeds the error δ."""
    if epsilon <= 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < abs(ideal_magnitude):
        raise ValidationError(
            f"statistical error {delta} must lie in (0, |<O>|={abs(ideal_magnitude)})"
        )
    raw = math.log(abs(ideal_magnitude) / delta) / epsilon
    return VolumeEstimate(count=math.floor(raw + 1e-9), raw=raw)


def chi_lower_bound(fidelity: float, purity: float) -> ChiBound:
    """Bond dimension needed to reach *fidelity* given the mean reduced purity."""
    if not 0 < fidelity <= 1:
        raise ValidationError(f"fidelity must lie in (0, 1], got {fidelity}")
    if not 0 < purity <= 1:
        raise ValidationError(f"purity must lie in (0, 1], got {purity}")
    chi = fidelity / purity
    return ChiBound(chi=chi, log2_chi=math.log2(chi))


def peak_chi_bound(fidelity: float, curve: Sequence[PurityPoint]) -> ChiBound:
    """Largest χ bound along an ensemble purity curve."""
    if not curve:
        raise ValidationError("purity curve is empty")
    lowest = min(curve, key=lambda p: p.mean)
    bound = chi_lower_bound(fidelity, lowest.mean)
    return ChiBound(bound.chi, bound.log2_chi, gate_count=lowest.gate_count)


# ---------------------------------------------------------------------------
# Random circuit sampling
# ---------------------------------------------------------------------------


def rcs_fidelity(epsilon: float, volume: float) -> float:
    return effective_fidelity(FidelityModel(epsilon, volume))


def rcs_observable(fidelity: float, ideal: float, n: int, trace_o: float) -> float:
    """Global depolarizing model: F·⟨O⟩ + (1 − F)·tr(O)/2^n."""
    return fidelity * ideal + (1 - fidelity) * trace_o / 2.0**n


def rcs_cut_area(n: int, t: float) -> float:
    return min(math.sqrt(n) * t, float(n))


def rcs_cost_log2(n: int, t: float, alpha: float | str) -> float:
    if isinstance(alpha, str):
        try:
            alpha = ENTANGLER_ALPHA[alpha]
        except KeyError:
            raise ValidationError(
                f"no cost exponent for {alpha!r}; use one of {sorted(ENTANGLER_ALPHA)}"
            ) from None
    return alpha * rcs_cut_area(n, t)


# ---------------------------------------------------------------------------
# Reference experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceExperiment:
    name: str
    epsilon: float | None = None
    fidelity: float | None = None
    volume: int | None = None
    cost_log2: float | None = None
    ratio: float | None = None


REFERENCE_EXPERIMENTS = (
    ReferenceExperiment("rcs", epsilon=0.0067, fidelity=1.68e-3, volume=702),
    ReferenceExperiment("otoc", fidelity=0.06, volume=251, cost_log2=41.2),
    ReferenceExperiment(
        "otoc_largest", epsilon=0.009, fidelity=0.02, volume=292, cost_log2=49.3
    ),
    ReferenceExperiment("floquet", epsilon=0.01, ratio=0.37),
)


@dataclass(frozen=True)
class FeasibilityRow:
    name: str
    epsilon: float | None
    volume: float | None
    fidelity: float | None
    model_fidelity: float | None
    implied_volume: float | None
    implied_epsilon: float | None
    max_volume: float | None
    cost_log2: float | None


def feasibility_report(
    experiments: Iterable[ReferenceExperiment] = REFERENCE_EXPERIMENTS,
    *,
    stat_error: float | None = None,
) -> list[FeasibilityRow]:
    """
    Evaluate the fidelity relations for each experiment from whatever it
    reports. The feasible volume uses *stat_error* when given, else the
    experiment's own fidelity (the signal-to-noise-one point).
    """
    rows = []
    for exp in experiments:
        fidelity = exp.fidelity if exp.fidelity is not None else exp.ratio
        model = None
        if exp.epsilon is not None and exp.volume is not None:
            model = effective_fidelity(FidelityModel(exp.epsilon, exp.volume))
        implied_volume = None
        max_volume = None
        if exp.epsilon is not None and fidelity is not None:
            implied_volume = veff_from_ratio(fidelity, exp.epsilon).raw
            floor = stat_error if stat_error is not None else fidelity
            if floor < 1:
                max_volume = max_feasible_volume(exp.epsilon, 1.0, floor).raw
        implied_epsilon = None
        if exp.volume and fidelity is not None:
            implied_epsilon = math.log(1.0 / fidelity) / exp.volume
        rows.append(
            FeasibilityRow(
                name=exp.name,
                epsilon=exp.epsilon,
                volume=exp.volume,
                fidelity=fidelity,
                model_fidelity=model,
                implied_volume=implied_volume,
                implied_epsilon=implied_epsilon,
                max_volume=max_volume,
                cost_log2=exp.cost_log2,
            )
        )
    logger.info("Feasibility report over %d experiments", len(rows))
    return rows


__all__ = [
    "ENTANGLER_ALPHA",
    "REFERENCE_EXPERIMENTS",
    "ChiBound",
    "FeasibilityRow",
    "FidelityModel",
    "ReferenceExperiment",
    "VolumeEstimate",
    "chi_lower_bound",
    "effective_fidelity",
    "feasibility_report",
    "max_feasible_volume",
    "mitigate",
    "peak_chi_bound",
    "rcs_cost_log2",
    "rcs_cut_area",
    "rcs_fidelity",
    "rcs_observable",
    "veff_from_ratio",
]
