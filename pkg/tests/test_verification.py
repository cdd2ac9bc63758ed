#!/usr/bin/env python3
"""
Tests for frame-equality, no-signalling and pure-state checks and the batch harness
"""

import logging

import numpy as np
import pytest

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from causal_relativity import verification
from causal_relativity.config import DEFAULT_TOLERANCES, BatchConfig, Tolerances
from causal_relativity.errors import DimensionError, InternalInvariantError, MissingAltPovmError, RankError
from causal_relativity.observers import (
    NEGATIVE_CONTROLS,
    DaggerBetaObserver,
    conditional_distribution,
    prob_alpha,
    prob_beta,
    prob_gamma,
)
from causal_relativity.verification import (
    FrameVerifier,
    batch_verify,
    build_grid,
    negative_control_deviation,
    run_trial,
    verify_frame_equality,
    verify_no_signalling,
    verify_pure_fallback,
)


class TestFrameEquality:
    """Test the frame-equality report"""

    def test_stern_gerlach_passes(self, stern_gerlach):
        """Test the identity-channel preset agrees in every frame"""
        report = verify_frame_equality(stern_gerlach)
        assert report.passed
        assert report.scenario_name == "stern-gerlach"
        assert report.alpha.probabilities == pytest.approx([[0.5, 0.0], [0.0, 0.5]], abs=1e-15)
        assert report.worst_deviation <= 1e-14

    def test_random_scenarios_pass(self, scenario_factory):
        """Test random scenarios agree to tolerance with every cross-check"""
        for seed in range(25):
            report = verify_frame_equality(scenario_factory(seed, d1=2 + seed % 3, d2=2 + seed % 2, n_outcomes=3))
            assert report.passed, report.deviations()
            assert set(report.deviations()) >= {"alpha_beta", "choi", "star_causal", "reduced_state"}

    def test_zero_tolerance_fails_and_warns(self, scenario_factory, caplog):
        """Test a failing comparison is reported, logged and not raised"""
        with caplog.at_level(logging.WARNING, logger="causal_relativity"):
            report = FrameVerifier(tol=0.0).verify(scenario_factory(11, d1=4, d2=3, n_kraus=2, n_outcomes=3))
        assert not report.passed
        assert "fails frame equality" in caplog.text

    def test_default_tolerance_from_config(self, stern_gerlach, scenario_factory):
        """Test the frame-equality tolerance defaults to the configured value"""
        assert verify_frame_equality(stern_gerlach).tolerance == DEFAULT_TOLERANCES.frame_equality
        strict = Tolerances(frame_equality=0.0)
        report = verify_frame_equality(scenario_factory(11, d1=4, d2=3, n_kraus=2, n_outcomes=3), tolerances=strict)
        assert report.tolerance == 0.0
        assert not report.passed

    def test_no_signalling_tolerance_from_config(self, bell_scenario):
        """Test the no-signalling tolerance defaults to the configured value"""
        report = verify_no_signalling(bell_scenario, tolerances=Tolerances(frame_equality=1e-9))
        assert report.tolerance == 1e-9

    def test_rank_deficient_state_raises(self):
        """Test a pure-fallback scenario cannot go through the direct route"""
        from causal_relativity.presets import preset

        with pytest.raises(RankError):
            verify_frame_equality(preset("pure-spin-up"))


class TestNoSignalling:
    """Test the B-marginal independence check"""

    def test_bell_preset(self, bell_scenario):
        """Test the X-basis alternative leaves S2 statistics unchanged"""
        report = verify_no_signalling(bell_scenario)
        assert report.passed
        assert report.marginal_under_a == pytest.approx([0.5, 0.5])
        assert report.marginal_under_a_alt == pytest.approx([0.5, 0.5])
        assert report.labels_b == ["Z2↑", "Z2↓"]

    def test_random_scenarios(self, scenario_factory):
        """Test random scenarios are non-signalling"""
        for seed in range(25):
            assert verify_no_signalling(scenario_factory(seed, d1=3, d2=3, n_outcomes=3)).passed

    def test_missing_alternative(self, stern_gerlach):
        """Test the check needs a second POVM"""
        with pytest.raises(MissingAltPovmError) as exc_info:
            verify_no_signalling(stern_gerlach)
        assert exc_info.value.field == "povm_a_alt"


class TestPureFallback:
    """Test the conditional route for pure states"""

    def test_pure_spin_up(self):
        """Test the Hadamard-evolved spin gives even odds in every frame"""
        from causal_relativity.presets import preset

        report = verify_pure_fallback(preset("pure-spin-up"))
        assert report.passed
        assert report.direct == pytest.approx([0.5, 0.5])
        assert set(report.conditionals) == {"alpha", "beta", "gamma"}
        for conditional in report.conditionals.values():
            assert conditional == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_random_pure_states(self, close):
        """Test random pure states through random channels"""
        from causal_relativity.core import build_scenario, projector, random_channel, random_povm, validate_state

        for seed in range(20):
            rng = np.random.default_rng(seed)
            vec = rng.normal(size=3) + 1j * rng.normal(size=3)
            scenario = build_scenario(
                name=f"pure-{seed}",
                rho=validate_state(projector(vec / np.linalg.norm(vec))),
                channel=random_channel(3, 2, 2, seed),
                povm_a=random_povm(3, 2, seed + 100),
                povm_b=random_povm(2, 3, seed + 200, label_prefix="b"),
                pure_fallback=True,
            )
            report = verify_pure_fallback(scenario)
            assert report.passed, report.max_deviation

    def test_mixed_state_rejected(self, stern_gerlach):
        """Test the route needs a pure state"""
        with pytest.raises(RankError):
            verify_pure_fallback(stern_gerlach)


class TestConditionalConsistency:
    """Test conditional probabilities agree across frames on full-rank scenarios"""

    def test_conditionals_agree_in_all_frames(self, scenario_factory, close):
        """Test p(b|a) from the forward, reverse and space-like frames for every likely outcome of A"""
        compared = 0
        for seed in range(200):
            d1, d2 = 2 + seed % 3, 2 + (seed // 3) % 3
            scenario = scenario_factory(seed, d1=d1, d2=d2, n_kraus=2, n_outcomes=2 + seed % 2)
            alpha, beta, gamma = prob_alpha(scenario), prob_beta(scenario), prob_gamma(scenario)
            for i, weight in enumerate(alpha.marginal_a()):
                if weight <= 1e-6:
                    continue
                reference = conditional_distribution(alpha, i)
                close(conditional_distribution(beta, i), reference, atol=1e-11)
                close(conditional_distribution(gamma, i), reference, atol=1e-11)
                compared += 1
        assert compared > 400


class TestNegativeControls:
    """Test the wrong conventions are caught"""

    @pytest.mark.parametrize("name", sorted(NEGATIVE_CONTROLS))
    def test_controls_disagree_on_random_scenarios(self, name, scenario_factory):
        """Test each wrong observer deviates on most complex scenarios"""
        deviating = sum(
            negative_control_deviation(scenario_factory(seed, d1=3, d2=3, n_kraus=2), name) > 1e-3
            for seed in range(40)
        )
        assert deviating >= 30

    def test_accepts_observer_instance(self, stern_gerlach):
        """Test an observer instance is accepted and agrees on a real symmetric scenario"""
        assert negative_control_deviation(stern_gerlach, DaggerBetaObserver()) < 1e-14


class TestBatchGrid:
    """Test trial grids"""

    def test_infeasible_points_filtered(self):
        """Test (d1, d2, kraus) points that cannot preserve trace are skipped"""
        grid = build_grid(BatchConfig(d1_values=[4], d2_values=[2], kraus_counts=[1, 2], outcome_counts=[2]))
        assert grid == [(4, 2, 2, 2)]

    def test_empty_grid(self):
        """Test a grid with no feasible point raises"""
        with pytest.raises(DimensionError):
            build_grid(BatchConfig(d1_values=[4], d2_values=[2], kraus_counts=[1]))


class TestBatchVerify:
    """Test the seeded batch harness"""

    def test_small_batch_passes(self, caplog):
        """Test every trial of a small batch passes"""
        config = BatchConfig(n_trials=20, base_seed=5)
        with caplog.at_level(logging.INFO, logger="causal_relativity"):
            report = batch_verify(config)
        assert report.all_passed
        assert report.n_trials == 20
        assert report.failures == []
        assert report.worst_deviation <= 1e-10
        assert report.worst_no_signalling_deviation <= 1e-10
        assert report.worst_trial.seed == 5 + report.worst_trial.index
        assert "Batch done" in caplog.text

    def test_deterministic(self):
        """Test two runs with one seed give identical reports apart from timing"""
        config = BatchConfig(n_trials=12, base_seed=3)
        assert batch_verify(config).fingerprint() == batch_verify(config).fingerprint()

    def test_independent_of_worker_count(self):
        """Test thread-pool execution gives the same report"""
        serial = batch_verify(BatchConfig(n_trials=16, base_seed=9))
        parallel = batch_verify(BatchConfig(n_trials=16, base_seed=9, max_workers=4))
        assert serial.fingerprint() == parallel.fingerprint()

    def test_run_trial_reproduces_worst_trial(self):
        """Test the worst trial can be re-run on its own"""
        config = BatchConfig(n_trials=10, base_seed=2, check_no_signalling=False)
        report = batch_verify(config)
        again = run_trial(config, report.worst_trial.index)
        assert again.worst_deviation == report.worst_trial.worst_deviation
        assert again.no_signalling_deviation is None

    def test_failed_trials_listed(self):
        """Test zero tolerance turns every trial into a failure"""
        report = batch_verify(BatchConfig(n_trials=5, tol=0.0, check_no_signalling=False))
        assert report.failed == 5
        assert not report.all_passed
        assert [t.index for t in report.failures] == [0, 1, 2, 3, 4]

    def test_internal_errors_classified(self, monkeypatch):
        """Test an invariant failure is recorded, not raised"""
        def broken(scenario, tol, tolerances):
            raise InternalInvariantError("broken")

        monkeypatch.setattr(verification, "verify_frame_equality", broken)
        report = batch_verify(BatchConfig(n_trials=4))
        assert report.errored == 4
        assert report.error_counts == {"internal": 4}
        assert report.worst_trial is None
        assert report.failures[0].error == "broken"

    def test_generation_errors_classified(self, monkeypatch):
        """Test a generator failure is classified separately"""
        def broken(*args, **kwargs):
            raise RankError("no luck")

        monkeypatch.setattr(verification, "random_scenario", broken)
        report = batch_verify(BatchConfig(n_trials=3))
        assert report.error_counts == {"generation": 3}

    def test_validation_errors_classified(self, monkeypatch):
        """Test other package errors count as validation errors"""
        def broken(scenario, tol, tolerances):
            raise DimensionError("mismatch")

        monkeypatch.setattr(verification, "verify_no_signalling", broken)
        report = batch_verify(BatchConfig(n_trials=2))
        assert report.error_counts == {"validation": 2}
