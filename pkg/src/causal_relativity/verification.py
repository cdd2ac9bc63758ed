#!/usr/bin/env python3
"""
Frame-equality, no-signalling and pure-state checks, and the seeded batch harness
"""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .config import DEFAULT_TOLERANCES, BatchConfig, Tolerances
from .core import (
    apply_channel,
    bipartite_state,
    build_scenario,
    channel_output,
    choi_identity_check,
    ensemble_decompose,
    lifted_operator,
    max_deviation,
    partial_trace,
    projector,
    random_scenario,
    transpose,
    validate_povm,
    validate_state,
    verify_star_equalities,
)
from .errors import (
    CausalRelativityError,
    DimensionError,
    InternalInvariantError,
    MissingAltPovmError,
    RankError,
)
from .models import (
    BatchReport,
    FrameReport,
    NoSignallingReport,
    PureFallbackReport,
    Scenario,
    TimingStats,
    TrialOutcome,
)
from .observers import (
    NEGATIVE_CONTROLS,
    AlphaObserver,
    BaseObserver,
    BetaObserver,
    GammaObserver,
    conditional_distribution,
)

logger = logging.getLogger(__name__)

GridPoint = Tuple[int, int, int, int]


class FrameVerifier:
    """Runs the three observers on a scenario and cross-checks everything they rely on"""

    def __init__(self, tol: Optional[float] = None, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.tol = tolerances.frame_equality if tol is None else tol
        self.tolerances = tolerances
        self.observers: List[BaseObserver] = [
            AlphaObserver(tolerances),
            BetaObserver(tolerances),
            GammaObserver(tolerances),
        ]

    def verify(self, scenario: Scenario) -> FrameReport:
        start = time.perf_counter()
        rho, channel = scenario.rho, scenario.channel
        lifted = lifted_operator(rho, channel, self.tolerances)
        tau = bipartite_state(lifted, self.tolerances)

        alpha, beta, gamma = (obs.joint_distribution(scenario, lifted) for obs in self.observers)
        joints = (alpha, beta, gamma)

        weights = ensemble_decompose(rho, scenario.povm_a, self.tolerances).weights
        evolved = apply_channel(channel, rho, self.tolerances)
        expected_b = [float(np.trace(b @ evolved.mat).real) for b in scenario.povm_b.effects]

        star = verify_star_equalities(rho, channel, self.tol, lifted, tau, self.tolerances)
        deviations = {
            "alpha_beta_deviation": max_deviation(alpha.matrix, beta.matrix),
            "alpha_gamma_deviation": max_deviation(alpha.matrix, gamma.matrix),
            "beta_gamma_deviation": max_deviation(beta.matrix, gamma.matrix),
            "a_marginal_deviation": max(max_deviation(j.marginal_a(), weights) for j in joints),
            "b_marginal_deviation": max(max_deviation(j.marginal_b(), expected_b) for j in joints),
            "lifting_deviation": max_deviation(partial_trace(lifted.mat, lifted.dims, 1), evolved.mat),
            "reduced_state_deviation": max_deviation(partial_trace(tau.mat, lifted.dims, 2), transpose(rho.mat)),
            "choi_deviation": choi_identity_check(rho, channel, self.tol, lifted, self.tolerances).max_deviation,
        }
        passed = star.passed and all(value <= self.tol for value in deviations.values())

        report = FrameReport(
            scenario_name=scenario.name,
            alpha=alpha,
            beta=beta,
            gamma=gamma,
            star=star,
            tolerance=self.tol,
            passed=passed,
            wall_time_seconds=time.perf_counter() - start,
            **deviations,
        )
        if not passed:
            failing = {k: v for k, v in report.deviations().items() if v > self.tol}
            logger.warning("Scenario %s fails frame equality: %s", scenario.name, failing)
        return report


def verify_frame_equality(
    scenario: Scenario,
    tol: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FrameReport:
    return FrameVerifier(tol, tolerances).verify(scenario)


def verify_no_signalling(
    scenario: Scenario,
    tol: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> NoSignallingReport:
    """
    Compare the B-marginals under POVM A and POVM A' in the space-like frame

    Both must equal Tr[b_j T(rho)].
    """
    tol = tolerances.frame_equality if tol is None else tol
    if scenario.povm_a_alt is None:
        raise MissingAltPovmError(f"scenario {scenario.name!r} has no alternative POVM on S1", field="povm_a_alt")

    observer = GammaObserver(tolerances)
    lifted = lifted_operator(scenario.rho, scenario.channel, tolerances)
    under_a = observer.joint_distribution(scenario, lifted).marginal_b()
    alt_scenario = scenario.model_copy(update={"povm_a": scenario.povm_a_alt})
    under_alt = observer.joint_distribution(alt_scenario, lifted).marginal_b()

    evolved = apply_channel(scenario.channel, scenario.rho, tolerances)
    expected = np.array([np.trace(b @ evolved.mat).real for b in scenario.povm_b.effects])

    deviation = max(
        max_deviation(under_a, expected),
        max_deviation(under_alt, expected),
        max_deviation(under_a, under_alt),
    )
    return NoSignallingReport(
        scenario_name=scenario.name,
        marginal_under_a=under_a.tolist(),
        marginal_under_a_alt=under_alt.tolist(),
        expected_marginal=expected.tolist(),
        labels_b=list(scenario.povm_b.labels),
        max_deviation=deviation,
        tolerance=tol,
        passed=deviation <= tol,
    )


def verify_pure_fallback(
    scenario: Scenario,
    tol: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PureFallbackReport:
    """
    Conditional route for a pure state rho = |a><a|

    The observers work on a full-rank surrogate: prior I/d1 measured with
    {|a><a|, I - |a><a|}. Conditioning each frame's joint on the first outcome
    must reproduce Tr[b_j T(|a><a|)].
    """
    tol = tolerances.frame_equality if tol is None else tol
    rho = scenario.rho
    if not rho.is_pure:
        raise RankError(f"scenario {scenario.name!r} does not have a pure state", field="rho")

    d1 = scenario.dims.d1
    _, eigenvectors = np.linalg.eigh(rho.mat)
    pure = projector(eigenvectors[:, -1])
    surrogate = build_scenario(
        name=f"{scenario.name}-surrogate",
        rho=validate_state(np.eye(d1) / d1, tolerances),
        channel=scenario.channel,
        povm_a=validate_povm([pure, np.eye(d1) - pure], labels=["a", "not-a"], tolerances=tolerances),
        povm_b=scenario.povm_b,
    )

    evolved = channel_output(scenario.channel, pure)
    direct = np.array([np.trace(b @ evolved).real for b in scenario.povm_b.effects])

    lifted = lifted_operator(surrogate.rho, surrogate.channel, tolerances)
    conditionals: Dict[str, List[float]] = {}
    worst = 0.0
    for observer in (AlphaObserver(tolerances), BetaObserver(tolerances), GammaObserver(tolerances)):
        joint = observer.joint_distribution(surrogate, lifted)
        conditional = conditional_distribution(joint, 0, tolerances)
        conditionals[observer.frame.value] = conditional.tolist()
        worst = max(worst, max_deviation(conditional, direct))

    return PureFallbackReport(
        scenario_name=scenario.name,
        direct=direct.tolist(),
        conditionals=conditionals,
        max_deviation=worst,
        tolerance=tol,
        passed=worst <= tol,
    )


def negative_control_deviation(
    scenario: Scenario,
    observer: Union[str, BaseObserver],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Largest |p_control - p_alpha| over all outcome pairs, on unchecked probabilities"""
    if isinstance(observer, str):
        observer = NEGATIVE_CONTROLS[observer](tolerances)
    lifted = lifted_operator(scenario.rho, scenario.channel, tolerances)
    reference = AlphaObserver(tolerances).raw_probabilities(scenario, lifted)
    control = observer.raw_probabilities(scenario, lifted)
    return max_deviation(control, reference)


def build_grid(config: BatchConfig) -> List[GridPoint]:
    """(d1, d2, n_kraus, n_outcomes) combinations a random channel can realise"""
    grid = [
        (d1, d2, k, n)
        for d1, d2, k, n in itertools.product(
            config.d1_values, config.d2_values, config.kraus_counts, config.outcome_counts
        )
        if k * d2 >= d1
    ]
    if not grid:
        raise DimensionError("no (d1, d2, kraus) combination satisfies kraus * d2 >= d1")
    return grid


def run_trial(
    config: BatchConfig,
    index: int,
    grid: Optional[List[GridPoint]] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> TrialOutcome:
    """Trial ``index`` of a batch; reproducible on its own from (config, index)"""
    grid = grid or build_grid(config)
    d1, d2, n_kraus, n_outcomes = grid[index % len(grid)]
    seed = config.base_seed + index
    outcome = dict(index=index, seed=seed, d1=d1, d2=d2, n_kraus=n_kraus, n_outcomes=n_outcomes)
    start = time.perf_counter()

    try:
        scenario = random_scenario(
            seed, d1, d2, n_kraus, n_outcomes, n_outcomes,
            with_alt=config.check_no_signalling, tolerances=tolerances,
        )
    except CausalRelativityError as e:
        return TrialOutcome(**outcome, status="error", error_class="generation", error=str(e),
                            wall_time_seconds=time.perf_counter() - start)

    try:
        report = verify_frame_equality(scenario, config.tol, tolerances)
        no_signalling = verify_no_signalling(scenario, config.tol, tolerances) if config.check_no_signalling else None
    except InternalInvariantError as e:
        return TrialOutcome(**outcome, status="error", error_class="internal", error=str(e),
                            wall_time_seconds=time.perf_counter() - start)
    except CausalRelativityError as e:
        return TrialOutcome(**outcome, status="error", error_class="validation", error=str(e),
                            wall_time_seconds=time.perf_counter() - start)

    passed = report.passed and (no_signalling is None or no_signalling.passed)
    return TrialOutcome(
        **outcome,
        status="passed" if passed else "failed",
        worst_deviation=report.worst_deviation,
        no_signalling_deviation=no_signalling.max_deviation if no_signalling else None,
        wall_time_seconds=time.perf_counter() - start,
    )


def batch_verify(config: BatchConfig, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BatchReport:
    """
    Run ``config.n_trials`` seeded random trials and aggregate them

    Trials run on a thread pool when ``max_workers > 1``; aggregation is in
    trial-index order so the report does not depend on scheduling.
    """
    grid = build_grid(config)
    indices = range(config.n_trials)
    logger.info("Batch of %d trials over %d grid points, base seed %d", config.n_trials, len(grid), config.base_seed)

    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            trials = list(pool.map(lambda i: run_trial(config, i, grid, tolerances), indices))
    else:
        trials = [run_trial(config, i, grid, tolerances) for i in indices]

    error_counts: Dict[str, int] = {}
    failures = []
    for trial in trials:
        if trial.status == "passed":
            continue
        failures.append(trial)
        logger.warning("Trial %d (seed %d) %s: %s", trial.index, trial.seed, trial.status, trial.error or "deviation above tolerance")
        if trial.error_class:
            error_counts[trial.error_class] = error_counts.get(trial.error_class, 0) + 1

    measured = [t for t in trials if t.worst_deviation is not None]
    worst_trial = max(measured, key=lambda t: t.worst_deviation, default=None)
    ns_values = [t.no_signalling_deviation for t in trials if t.no_signalling_deviation is not None]
    times = [t.wall_time_seconds for t in trials]

    report = BatchReport(
        config=config,
        n_trials=len(trials),
        passed=sum(t.status == "passed" for t in trials),
        failed=sum(t.status == "failed" for t in trials),
        errored=sum(t.status == "error" for t in trials),
        error_counts=error_counts,
        worst_deviation=worst_trial.worst_deviation if worst_trial else None,
        worst_trial=worst_trial,
        worst_no_signalling_deviation=max(ns_values) if ns_values else None,
        failures=failures,
        timing=TimingStats(total_seconds=sum(times), mean_seconds=sum(times) / len(times), max_seconds=max(times)),
    )
    logger.info("Batch done: %d/%d passed, worst deviation %s", report.passed, report.n_trials, report.worst_deviation)
    return report
