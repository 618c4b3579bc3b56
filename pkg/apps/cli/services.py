"""
Service functions for the cli app.

All sweep and report logic lives here; management commands stay thin.
Each function takes cleaned values (no option dicts, no stdout) and returns a
Report whose header carries the run configuration it was given.

Sweeps fan their points out over a fork pool when more than one worker is
allowed. Every point carries its own derived seed and its results are
collected in submission order, so the report does not depend on the pool.
"""

import logging
import multiprocessing
from collections.abc import Callable, Mapping, Sequence
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, TypeVar

from django.conf import settings

from apps.analysis.chaos import ChaoticModel, Geometry, solve_t_delta
from apps.analysis.decay import (
    fit_decay,
    steps_to_decay,
    steps_to_decay_scan,
    threshold_sensitivity,
)
from apps.circuits import serialization
from apps.circuits.builders import build_floquet
from apps.circuits.circuit import Circuit
from apps.circuits.devices import DeviceGraph, build_device
from apps.circuits.observables import ObservableSpec
from apps.circuits.pauli import PauliString
from apps.circuits.subsets import BoundaryMode, select_subgraph
from apps.clifford.propagation import derive_stabilizer_observable
from apps.clifford.purity import haar_purity, purity_curve
from apps.clifford.spreading import (
    default_origin,
    estimate_butterfly_velocity,
    spread_samples,
    support_profile,
)
from apps.core import resources
from apps.core.exceptions import ValidationError
from apps.core.reporting import Report
from apps.core.seeds import derived_seed
from apps.effvol import fidelity
from apps.effvol.lightcone import backward_lightcone, prune_to_lightcone
from apps.statevector import simulator
from apps.statevector.cost import sv_cost
from apps.statevector.noise import NoiseSpec, noisy_expectation
from apps.statevector.series import evolve_series
from apps.tncost.network import network_from_circuit
from apps.tncost.planner import optimize_order

logger = logging.getLogger(__name__)

P = TypeVar("P")
R = TypeVar("R")

# any θ_h without a diagonal RX; light-cone shapes do not depend on it otherwise
GENERIC_THETA = 1.0

SWEEP_COLUMNS = (
    "theta_h",
    "n_qubits",
    "steps",
    "observable",
    "value",
    "stderr",
    "delta_vs_previous",
    "delta_vs_largest",
)


def _blank(value: Any) -> Any:
    return "" if value is None else value


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------


def load_device(spec: str) -> DeviceGraph:
    """A layout name such as "grid(3,3)" or the path of a device JSON document."""
    if spec.endswith(".json"):
        path = Path(spec)
        if not path.is_file():
            raise ValidationError(f"device file {spec} does not exist")
        doc = serialization.load(path)
        if not isinstance(doc, DeviceGraph):
            raise ValidationError(f"{spec} holds a circuit, not a device")
        return doc
    return build_device(spec)


def observable_for(spec: ObservableSpec, graph: DeviceGraph) -> PauliString | None:
    """
    The Pauli string *spec* stands for on *graph*. Stabilizer specs are derived
    on the whole device; magnetization specs give None.
    """
    if spec.kind == "magnetization":
        return None
    if spec.kind == "stabilizer":
        if not spec.authoritative:
            logger.warning(
                "Observable %s is not an authoritative choice: %s",
                spec.name,
                spec.note or "start qubit picked by hand",
            )
        return derive_stabilizer_observable(graph, spec.steps, spec.start)
    missing = [q for q in spec.pauli.support if q not in graph]
    if missing:
        raise ValidationError(f"observable {spec.name} acts on {missing}, off device")
    return spec.pauli


def region_for(
    graph: DeviceGraph,
    spec: ObservableSpec,
    n: int,
    mode: BoundaryMode | str,
    obs: PauliString | None,
) -> DeviceGraph:
    """The n-qubit subset around the observable's centre; it must hold the support."""
    region = select_subgraph(graph, spec.center, n, mode)
    if obs is not None:
        missing = [q for q in obs.support if q not in region]
        if missing:
            raise ValidationError(
                f"{n}-qubit region around {spec.center} misses observable "
                f"qubits {missing}"
            )
    return region


# ---------------------------------------------------------------------------
# Worker pool
# ---------------------------------------------------------------------------


def plan_workers(
    requested: int, largest: int, precision: str, budget: int
) -> tuple[int, int]:
    """
    Pool size and per-worker budget. Raises ResourceError when even one
    *largest*-qubit state does not fit; otherwise trims the pool until every
    worker can hold one.
    """
    dtype = resources.resolve_dtype(precision)
    resources.check_state_budget(largest, dtype, budget)
    per_state = resources.STATE_HEADROOM * resources.state_bytes(largest, dtype)
    workers = max(1, min(requested, budget // per_state))
    if workers < requested:
        logger.warning(
            "Memory budget admits %d of %d requested workers", workers, requested
        )
    return workers, budget // workers


def run_points(func: Callable[[P], R], points: Sequence[P], workers: int) -> list[R]:
    """func over *points* in order, in-process or on a fork pool."""
    if workers <= 1 or len(points) <= 1:
        return [func(p) for p in points]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(workers, len(points))) as pool:
        return pool.map(func, points, chunksize=1)


# ---------------------------------------------------------------------------
# Sweep points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensePoint:
    """One dense Floquet evaluation; obs None means average magnetization."""

    graph: DeviceGraph
    steps: int
    theta_h: float
    obs: PauliString | None
    precision: str
    budget: int
    epsilon: float = 0.0
    shots: int = 1
    seed: int = 0
    # restrict to the commutation-aware light cone first (exact reference)
    pruned: bool = False


def evaluate_point(point: DensePoint) -> tuple[float, float]:
    """(value, stderr) of one sweep point."""
    circuit = build_floquet(point.graph, point.steps, point.theta_h)
    kwargs = {"precision": point.precision, "budget": point.budget}
    if point.obs is None:
        state = simulator.simulate(circuit, **kwargs)
        return simulator.average_magnetization(state, circuit.labels), 0.0
    if point.pruned:
        cone = backward_lightcone(circuit, point.obs, commutation_aware=True)
        circuit = prune_to_lightcone(circuit, cone)
    if point.epsilon > 0:
        noise = NoiseSpec(point.epsilon, point.seed, point.shots)
        return noisy_expectation(circuit, point.obs, noise, **kwargs)
    state = simulator.simulate(circuit, **kwargs)
    return simulator.expectation(state, point.obs), 0.0


@dataclass(frozen=True)
class SeriesPoint:
    graph: DeviceGraph
    steps: int
    theta_h: float
    obs: PauliString | None
    precision: str
    budget: int


def evaluate_series(point: SeriesPoint) -> list[tuple[int, float]]:
    target = point.graph.nodes if point.obs is None else point.obs
    return evolve_series(
        point.graph,
        point.steps,
        point.theta_h,
        target,
        precision=point.precision,
        budget=point.budget,
    )


# ---------------------------------------------------------------------------
# Floquet sweeps
# ---------------------------------------------------------------------------


def _floquet_sweep(
    command: str,
    regions: Sequence[DeviceGraph],
    thetas: Sequence[float],
    steps: int,
    obs: PauliString | None,
    label: str,
    *,
    precision: str,
    budget: int,
    workers: int,
    epsilon: float,
    shots: int,
    seed: int,
    config: Mapping[str, Any] | None,
) -> Report:
    """Value per (θ_h, region) with deltas against the next smaller and largest."""
    regions = sorted(regions, key=len)
    workers, share = plan_workers(workers, len(regions[-1]), precision, budget)
    points = [
        DensePoint(
            region,
            steps,
            theta,
            obs,
            precision,
            share,
            epsilon=epsilon,
            shots=shots,
            seed=derived_seed(seed, i, j),
        )
        for i, theta in enumerate(thetas)
        for j, region in enumerate(regions)
    ]
    logger.info(
        "%s: %d points over %d regions, %d worker(s)",
        command,
        len(points),
        len(regions),
        workers,
    )
    results = iter(run_points(evaluate_point, points, workers))
    report = Report(command, SWEEP_COLUMNS, config or {})
    for theta in thetas:
        row = [next(results) for _ in regions]
        largest = row[-1][0]
        previous = None
        for region, (value, stderr) in zip(regions, row, strict=True):
            logger.info("theta_h=%.4f n=%d: %.6f", theta, len(region), value)
            report.add(
                theta,
                len(region),
                steps,
                label,
                value,
                stderr,
                "" if previous is None else value - previous,
                value - largest,
            )
            previous = value
    return report


def fig4b(
    graph: DeviceGraph,
    *,
    thetas: Sequence[float],
    sizes: Sequence[int],
    steps: int,
    observable: ObservableSpec,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
    precision: str,
    budget: int,
    workers: int = 1,
    epsilon: float = 0.0,
    shots: int = 1000,
    seed: int = 0,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """Observable after `steps` Floquet steps over θ_h × subset sizes."""
    obs = observable_for(observable, graph)
    regions = [
        region_for(graph, observable, n, boundary_mode, obs) for n in sorted(set(sizes))
    ]
    return _floquet_sweep(
        "fig4b",
        regions,
        thetas,
        steps,
        obs,
        observable.name,
        precision=precision,
        budget=budget,
        workers=workers,
        epsilon=epsilon,
        shots=shots,
        seed=seed,
        config=config,
    )


def lightcone_region(
    graph: DeviceGraph, steps: int, obs: PauliString
) -> DeviceGraph:
    """Qubits of the commutation-aware light cone of *obs* after `steps` steps."""
    circuit = build_floquet(graph, steps, GENERIC_THETA)
    cone = backward_lightcone(circuit, obs, commutation_aware=True)
    return graph.subgraph(cone.qubits)


def fig4a(
    graph: DeviceGraph,
    *,
    thetas: Sequence[float],
    sizes: Sequence[int] = (),
    steps: int,
    observable: ObservableSpec,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
    precision: str,
    budget: int,
    workers: int = 1,
    epsilon: float = 0.0,
    shots: int = 1000,
    seed: int = 0,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """
    Stabilizer-observable sweep. Without *sizes* the single region is the
    observable's light cone, which makes every value exact.
    """
    obs = observable_for(observable, graph)
    if obs is None:
        raise ValidationError("fig4a needs a Pauli or stabilizer observable")
    logger.info("fig4a observable %s has weight %d", observable.name, obs.weight)
    if sizes:
        regions = [
            region_for(graph, observable, n, boundary_mode, obs)
            for n in sorted(set(sizes))
        ]
    else:
        regions = [lightcone_region(graph, steps, obs)]
        logger.info("Light-cone region holds %d qubits", len(regions[0]))
    return _floquet_sweep(
        "fig4a",
        regions,
        thetas,
        steps,
        obs,
        observable.name,
        precision=precision,
        budget=budget,
        workers=workers,
        epsilon=epsilon,
        shots=shots,
        seed=seed,
        config=config,
    )


def magnetization(
    graph: DeviceGraph,
    *,
    thetas: Sequence[float],
    sizes: Sequence[int],
    steps: int,
    observable: ObservableSpec,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
    precision: str,
    budget: int,
    workers: int = 1,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """Mean ⟨Z⟩ over every qubit of each region, against θ_h."""
    if observable.kind != "magnetization":
        raise ValidationError(
            f"{observable.name} is not a magnetization observable; use fig4b"
        )
    regions = [
        region_for(graph, observable, n, boundary_mode, None)
        for n in sorted(set(sizes))
    ]
    return _floquet_sweep(
        "magnetization",
        regions,
        thetas,
        steps,
        None,
        observable.name,
        precision=precision,
        budget=budget,
        workers=workers,
        epsilon=0.0,
        shots=1,
        seed=0,
        config=config,
    )


def convergence(
    graph: DeviceGraph,
    *,
    thetas: Sequence[float],
    sizes: Sequence[int],
    steps: int,
    observable: ObservableSpec,
    boundary_mode: BoundaryMode | str = BoundaryMode.OPEN,
    precision: str,
    budget: int,
    workers: int = 1,
    tolerance: float = 0.01,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """
    Observable on growing subsets against the exact value, which comes from
    the commutation-aware light cone on the whole device.
    """
    obs = observable_for(observable, graph)
    if obs is None:
        raise ValidationError("convergence needs a Pauli or stabilizer observable")
    regions = [
        region_for(graph, observable, n, boundary_mode, obs) for n in sorted(set(sizes))
    ]
    cone_n = len(lightcone_region(graph, steps, obs))
    largest = max(cone_n, len(regions[-1]))
    workers, share = plan_workers(workers, largest, precision, budget)

    points = [
        DensePoint(graph, steps, theta, obs, precision, share, pruned=True)
        for theta in thetas
    ]
    points += [
        DensePoint(region, steps, theta, obs, precision, share)
        for theta in thetas
        for region in regions
    ]
    logger.info(
        "convergence: %d regions, %d-qubit exact cone, %d worker(s)",
        len(regions),
        cone_n,
        workers,
    )
    results = run_points(evaluate_point, points, workers)
    exact = [value for value, _ in results[: len(thetas)]]
    values = iter(value for value, _ in results[len(thetas) :])

    report = Report(
        "convergence",
        ("theta_h", "n_qubits", "value", "exact", "abs_error"),
        config or {},
    )
    for theta, reference in zip(thetas, exact, strict=True):
        converged = None
        for region in regions:
            value = next(values)
            error = abs(value - reference)
            if converged is None and error <= tolerance:
                converged = len(region)
            report.add(theta, len(region), value, reference, error)
        logger.info(
            "theta_h=%.4f exact %.6f, within %.2g from n=%s",
            theta,
            reference,
            tolerance,
            converged,
        )
    return report


# ---------------------------------------------------------------------------
# Decay
# ---------------------------------------------------------------------------


def decay(
    graph: DeviceGraph,
    *,
    thetas: Sequence[float],
    qubits: int,
    steps: int,
    observable: ObservableSpec,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
    threshold: float | None = None,
    thresholds: Sequence[float] = (),
    precision: str,
    budget: int,
    workers: int = 1,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """
    Exponential fit and steps-to-decay of the observable series per θ_h, with
    steps-to-decay at each extra threshold. The θ_h trend is logged.
    """
    obs = observable_for(observable, graph)
    region = region_for(graph, observable, qubits, boundary_mode, obs)
    workers, share = plan_workers(workers, len(region), precision, budget)
    points = [
        SeriesPoint(region, steps, theta, obs, precision, share) for theta in thetas
    ]
    all_series = run_points(evaluate_series, points, workers)

    columns = [
        "theta_h",
        "n_qubits",
        "rate",
        "intercept",
        "r_squared",
        "window_start",
        "window_end",
        "points",
        "steps_to_decay",
    ]
    columns += [f"steps_at_{th:g}" for th in thresholds]
    report = Report("decay", columns, config or {})
    for theta, series in zip(thetas, all_series, strict=True):
        reason = "too few points in the fit window"
        try:
            fit, reached = fit_decay(series, threshold)
        except ValidationError as exc:
            fit, reached, reason = None, steps_to_decay(series, threshold), str(exc)
        if fit is None:
            logger.warning("theta_h=%.4f: no decay fit (%s)", theta, reason)
            cells = [""] * 6
        else:
            cells = [
                fit.rate,
                fit.intercept,
                fit.r_squared,
                fit.window[0],
                fit.window[1],
                fit.points,
            ]
        extra = [s for _, s in threshold_sensitivity(series, thresholds)]
        report.add(theta, len(region), *cells, reached, *extra)

    if len(set(thetas)) >= 2:
        lookup = dict(zip(thetas, all_series, strict=True))
        scan = steps_to_decay_scan(list(lookup), lookup.__getitem__, threshold)
        logger.info(
            "Steps-to-decay trend: %.0f%% non-increasing, Spearman rho %.3f (p=%.3g)",
            100 * scan.nonincreasing_fraction,
            scan.spearman_rho,
            scan.spearman_pvalue,
        )
    return report


# ---------------------------------------------------------------------------
# Contraction cost
# ---------------------------------------------------------------------------


def cost(
    graph: DeviceGraph,
    *,
    steps: int,
    theta: float,
    observable: ObservableSpec,
    qubits: int | None = None,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
    fuse: bool = False,
    commutation_aware: bool = False,
    optimizer_budget: int | None = None,
    seed: int = 0,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """
    Light cone, pruning, then open and closed contraction orders, next to the
    state-vector costs of the unpruned circuit (sv_full) and of the pruned
    one (sv_cone), two-qubit gates only.
    """
    obs = observable_for(observable, graph)
    if obs is None:
        raise ValidationError("cost needs a Pauli or stabilizer observable")
    region = graph
    if qubits is not None:
        region = region_for(graph, observable, qubits, boundary_mode, obs)
    circuit = build_floquet(region, steps, theta)
    cone = backward_lightcone(circuit, obs, commutation_aware=commutation_aware)
    pruned = prune_to_lightcone(circuit, cone)
    circuit_id = circuit.fingerprint[:12]

    report = Report(
        "cost",
        (
            "circuit_id",
            "mode",
            "n_qubits",
            "n_tensors",
            "log2_cost",
            "peak_rank",
            "budget",
            "seed",
        ),
        config or {},
    )
    for mode in ("open", "closed"):
        network = network_from_circuit(
            pruned, mode, obs=obs if mode == "open" else None, fuse=fuse
        )
        plan = optimize_order(network, budget=optimizer_budget, seed=seed)
        report.add(
            circuit_id,
            mode,
            len(pruned.labels),
            len(network),
            plan.cost_log2,
            plan.peak_rank,
            _blank(optimizer_budget),
            seed,
        )
    for mode, target in (("sv_full", circuit), ("sv_cone", pruned)):
        n = len(target.labels)
        log2_cost = sv_cost(target, include_one_qubit=False)
        report.add(circuit_id, mode, n, "", log2_cost, n, "", "")
    return report


# ---------------------------------------------------------------------------
# Clifford ensembles
# ---------------------------------------------------------------------------


def purity(
    graph: DeviceGraph,
    *,
    gates: int,
    butterfly: tuple[int, str] | None = None,
    cut: Sequence[int] = (),
    samples: int,
    seed: int = 0,
    entangler: str = "iswap",
    mirrored: bool = False,
    fidelity_target: float | None = None,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """
    Ensemble-averaged reduced purity of *cut* per entangling gate, the Haar
    value for that cut and, with a target fidelity, the bond-dimension bound.
    Defaults: X butterfly on the device centre, cut = lower half of the labels.
    """
    butterfly = butterfly or (default_origin(graph), "X")
    region = sorted(cut) if cut else list(graph.nodes[: len(graph) // 2])
    curve = purity_curve(
        graph,
        gates,
        butterfly,
        region,
        samples,
        seed,
        entangler=entangler,
        mirrored=mirrored,
    )
    haar = haar_purity(2 ** len(region), 2 ** (len(graph) - len(region)))
    report = Report(
        "purity",
        ("gate_count", "mean", "stderr", "haar", "log2_chi_bound"),
        config or {},
    )
    for point in curve:
        bound = ""
        if fidelity_target is not None:
            bound = fidelity.chi_lower_bound(fidelity_target, point.mean).log2_chi
        report.add(point.gate_count, point.mean, point.stderr, haar, bound)
    if fidelity_target is not None:
        peak = fidelity.peak_chi_bound(fidelity_target, curve)
        logger.info(
            "Peak bond-dimension bound 2^%.2f at gate %d",
            peak.log2_chi,
            peak.gate_count,
        )
    return report


def spread(
    graph: DeviceGraph,
    *,
    family: str = "iswap",
    samples: int,
    steps: int | None = None,
    origin: int | None = None,
    seed: int = 0,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """Mean radius and support per step, with the fitted butterfly velocity."""
    origin = default_origin(graph) if origin is None else origin
    if steps is None:
        steps = max(graph.distances_from(origin).values())
    estimate = estimate_butterfly_velocity(
        graph, family, samples, seed, steps=steps, origin=origin
    )
    data = spread_samples(graph, family, steps, samples, seed, origin=origin)
    support = dict(support_profile(data))
    start, stop = estimate.window
    report = Report(
        "spread",
        ("t", "mean_radius", "mean_support", "in_window", "velocity"),
        config or {},
    )
    for t, radius in estimate.profile:
        report.add(t, radius, support[t], int(start <= t <= stop), estimate.velocity)
    return report


# ---------------------------------------------------------------------------
# Arithmetic reports
# ---------------------------------------------------------------------------


def tdelta(
    *,
    v: float,
    epsilons: Sequence[float],
    delta: float | None = None,
    log_inv_delta: float | None = None,
    geometry: Geometry | str = Geometry.SQUARE_2D,
    asymptotic: bool = False,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """Precision horizon t_δ for each gate error."""
    report = Report(
        "tdelta",
        (
            "v",
            "epsilon",
            "delta",
            "geometry",
            "t_delta",
            "branch",
            "residual",
            "zero_error",
            "large_error",
        ),
        config or {},
    )
    extra = {} if delta is None else {"delta": delta}
    for eps in epsilons:
        model = ChaoticModel(
            v=v, epsilon=eps, geometry=geometry, log_inv_delta=log_inv_delta, **extra
        )
        result = solve_t_delta(model, asymptotic=asymptotic)
        report.add(
            model.v,
            model.epsilon,
            model.delta,
            str(model.geometry),
            result.t_delta,
            str(result.branch),
            result.residual,
            result.zero_error,
            _blank(result.large_error),
        )
    return report


def mitigate(
    *,
    raw: float,
    f_eff: float | None = None,
    epsilon: float | None = None,
    volume: float | None = None,
    floor: float | None = None,
    config: Mapping[str, Any] | None = None,
) -> Report:
    """Mitigated value from a given F_eff, or from F_eff = exp(−ε·V)."""
    if f_eff is None:
        if epsilon is None or volume is None:
            raise ValidationError("mitigation needs F_eff or both epsilon and volume")
        f_eff = fidelity.effective_fidelity(fidelity.FidelityModel(epsilon, volume))
    floor = settings.EFFVOL_MITIGATION_FLOOR if floor is None else floor
    value = fidelity.mitigate(raw, f_eff, floor=floor)
    report = Report(
        "mitigate",
        ("raw", "epsilon", "volume", "f_eff", "floor", "mitigated"),
        config or {},
    )
    report.add(raw, _blank(epsilon), _blank(volume), f_eff, floor, value)
    return report


def feasibility(
    *, stat_error: float | None = None, config: Mapping[str, Any] | None = None
) -> Report:
    """The fidelity relations evaluated for every reference experiment."""
    rows = fidelity.feasibility_report(stat_error=stat_error)
    columns = [f.name for f in fields(fidelity.FeasibilityRow)]
    report = Report("feasibility", columns, config or {})
    for row in rows:
        doc = asdict(row)
        report.add(*(_blank(doc[c]) for c in columns))
    return report


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def export_document(
    graph: DeviceGraph,
    *,
    circuit: str = "",
    steps: int | None = None,
    theta: float | None = None,
) -> DeviceGraph | Circuit:
    """The device itself, or the Floquet circuit on it."""
    if circuit == "floquet":
        if steps is None or theta is None:
            raise ValidationError("a floquet circuit needs steps and theta")
        return build_floquet(graph, steps, theta)
    if circuit:
        raise ValidationError(f"unknown circuit kind {circuit!r}")
    return graph


def document_text(doc: DeviceGraph | Circuit) -> str:
    if isinstance(doc, DeviceGraph):
        return serialization.device_to_json(doc)
    return serialization.circuit_to_json(doc)


__all__ = [
    "DensePoint",
    "SeriesPoint",
    "convergence",
    "cost",
    "decay",
    "document_text",
    "evaluate_point",
    "evaluate_series",
    "export_document",
    "feasibility",
    "fig4a",
    "fig4b",
    "lightcone_region",
    "load_device",
    "magnetization",
    "mitigate",
    "observable_for",
    "plan_workers",
    "purity",
    "region_for",
    "run_points",
    "spread",
    "tdelta",
]
