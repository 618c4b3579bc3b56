"""
Effective-fidelity arithmetic tests.

Covers:
- F_eff, mitigation and volume inversion
- feasible volume and bond-dimension bounds
- random-circuit-sampling calculators and the reference table
"""

import math
import os
import unittest

from django.test import SimpleTestCase, override_settings, tag

from apps.circuits.builders import build_floquet
from apps.circuits.devices import grid
from apps.circuits.pauli import single
from apps.clifford.purity import PurityPoint
from apps.core.exceptions import ValidationError
from apps.effvol.fidelity import (
    FidelityModel,
    chi_lower_bound,
    effective_fidelity,
    feasibility_report,
    max_feasible_volume,
    mitigate,
    peak_chi_bound,
    rcs_cost_log2,
    rcs_cut_area,
    rcs_fidelity,
    rcs_observable,
    veff_from_ratio,
)
from apps.effvol.lightcone import backward_lightcone
from apps.effvol.volume import refine_effective_volume
from apps.statevector.noise import NoiseSpec, noisy_expectation

RUN_HEAVY = os.environ.get("EFFVOL_RUN_HEAVY") == "1"


class EffectiveFidelityTest(SimpleTestCase):
    def test_values(self) -> None:
        self.assertEqual(effective_fidelity(FidelityModel(0.0, 500)), 1.0)
        self.assertAlmostEqual(
            effective_fidelity(FidelityModel(0.01, 100)), 0.3679, places=4
        )
        f = effective_fidelity(FidelityModel(0.01, 2780))
        self.assertAlmostEqual(math.log10(f), -12.07, places=2)

    def test_monotone(self) -> None:
        base = effective_fidelity(FidelityModel(0.01, 100))
        self.assertLess(effective_fidelity(FidelityModel(0.02, 100)), base)
        self.assertLess(effective_fidelity(FidelityModel(0.01, 200)), base)

    def test_model_validation(self) -> None:
        with self.assertRaises(ValidationError):
            FidelityModel(-0.1, 10)
        with self.assertRaises(ValidationError):
            FidelityModel(0.1, -10)


class MitigateTest(SimpleTestCase):
    def test_inverse_of_attenuation(self) -> None:
        for f in (1.0, 0.37, 1e-3):
            self.assertAlmostEqual(mitigate(f * 0.42, f), 0.42, places=12)

    def test_floor(self) -> None:
        with self.assertRaises(ValidationError):
            mitigate(0.1, 0.0)
        with self.assertRaises(ValidationError):
            mitigate(0.1, 1e-7)
        self.assertAlmostEqual(mitigate(1e-7, 1e-7, floor=1e-9), 1.0)

    @override_settings(EFFVOL_MITIGATION_FLOOR=0.5)
    def test_floor_from_settings(self) -> None:
        with self.assertRaises(ValidationError):
            mitigate(0.1, 0.37)


class VolumeInversionTest(SimpleTestCase):
    def test_ratio(self) -> None:
        estimate = veff_from_ratio(0.37, 0.01)
        self.assertEqual(estimate.count, 99)
        self.assertAlmostEqual(estimate.raw, 99.43, places=2)
        self.assertEqual(veff_from_ratio(1.0, 0.3).count, 0)
        self.assertEqual(veff_from_ratio(math.exp(-2), 0.01).count, 200)

    def test_round_trip(self) -> None:
        for volume in (0, 17, 100, 2780):
            f = effective_fidelity(FidelityModel(0.01, volume))
            self.assertEqual(veff_from_ratio(f, 0.01).count, volume)

    def test_ratio_errors(self) -> None:
        with self.assertRaises(ValidationError):
            veff_from_ratio(1.2, 0.01)
        with self.assertRaises(ValidationError):
            veff_from_ratio(0.0, 0.01)
        with self.assertRaises(ValidationError):
            veff_from_ratio(0.5, 0.0)

    def test_max_feasible_volume(self) -> None:
        self.assertEqual(max_feasible_volume(0.01, 1.0, math.exp(-1)).count, 100)
        self.assertEqual(max_feasible_volume(0.0067, 1.0, 1.68e-3).count, 953)
        self.assertLess(max_feasible_volume(0.01, 1.0, 0.999).raw, 0.2)
        with self.assertRaises(ValidationError):
            max_feasible_volume(0.01, 0.5, 0.5)


class ChiBoundTest(SimpleTestCase):
    def test_values(self) -> None:
        self.assertEqual(chi_lower_bound(1.0, 1.0).chi, 1.0)
        bound = chi_lower_bound(0.5, 2.0**-26)
        self.assertEqual(bound.chi, 2.0**25)
        self.assertEqual(bound.log2_chi, 25.0)
        self.assertEqual(chi_lower_bound(0.3, 0.3).chi, 1.0)
        with self.assertRaises(ValidationError):
            chi_lower_bound(0.5, 0.0)

    def test_peak_over_curve(self) -> None:
        curve = [
            PurityPoint(0, 1.0, 0.0),
            PurityPoint(1, 0.25, 0.0),
            PurityPoint(2, 0.5, 0.0),
        ]
        bound = peak_chi_bound(1.0, curve)
        self.assertEqual((bound.chi, bound.gate_count), (4.0, 1))
        with self.assertRaises(ValidationError):
            peak_chi_bound(1.0, [])


class RcsTest(SimpleTestCase):
    def test_calculators(self) -> None:
        self.assertAlmostEqual(rcs_fidelity(0.0067, 702), math.exp(-4.7034))
        self.assertEqual(rcs_observable(1.0, 0.3, 4, 16.0), 0.3)
        self.assertEqual(rcs_observable(0.0, 0.3, 4, 16.0), 1.0)
        self.assertEqual(rcs_cut_area(49, 2), 14.0)
        self.assertEqual(rcs_cut_area(53, 20), 53.0)
        self.assertEqual(rcs_cost_log2(49, 2, "iswap"), 28.0)
        self.assertEqual(rcs_cost_log2(49, 2, "cz"), 14.0)
        self.assertEqual(rcs_cost_log2(49, 2, 1.5), 21.0)
        with self.assertRaises(ValidationError):
            rcs_cost_log2(49, 2, "cnot")

    def test_feasibility_report(self) -> None:
        rows = {row.name: row for row in feasibility_report()}
        self.assertEqual(list(rows), ["rcs", "otoc", "otoc_largest", "floquet"])
        self.assertAlmostEqual(rows["rcs"].implied_volume, 953.6, delta=0.1)
        self.assertAlmostEqual(rows["rcs"].model_fidelity, 9.06e-3, delta=1e-5)
        self.assertAlmostEqual(rows["floquet"].implied_volume, 99.4, delta=0.1)
        self.assertAlmostEqual(rows["otoc"].implied_epsilon, 0.0112, delta=1e-4)
        self.assertIsNone(rows["otoc"].implied_volume)
        self.assertEqual(rows["otoc_largest"].cost_log2, 49.3)

    def test_feasibility_with_stat_error(self) -> None:
        rows = {row.name: row for row in feasibility_report(stat_error=0.01)}
        self.assertAlmostEqual(rows["floquet"].max_volume, 460.5, delta=0.1)


class NoisyAttenuationTest(SimpleTestCase):
    @tag("slow")
    @unittest.skipUnless(RUN_HEAVY, "set EFFVOL_RUN_HEAVY=1")
    def test_attenuation_follows_effective_volume(self) -> None:
        circuit = build_floquet(grid(4, 4), 4, 0.3)
        obs = single(5)
        epsilon = 0.01
        ideal, _ = noisy_expectation(circuit, obs, NoiseSpec(0.0))
        mean, stderr = noisy_expectation(
            circuit, obs, NoiseSpec(epsilon, seed=11, shots=20000)
        )
        sigma = stderr / abs(ideal)
        # removals below the sampling resolution are invisible in the mean
        refined = refine_effective_volume(circuit, obs, delta=3 * stderr)
        self.assertLessEqual(refined.count, backward_lightcone(circuit, obs).volume)
        model = effective_fidelity(FidelityModel(epsilon, refined.count))
        self.assertLess(abs(mean / ideal - model), 3 * sigma)
