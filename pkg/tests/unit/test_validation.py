#!/usr/bin/env python3
"""
Unit tests for state, POVM, channel and scenario validators
"""

import numpy as np
import pytest

from causal_relativity.config import Tolerances
from causal_relativity.core import build_scenario, validate_channel, validate_povm, validate_state
from causal_relativity.errors import (
    CompletenessError,
    DimensionError,
    HermiticityError,
    NegativityError,
    NonFiniteError,
    OutcomeCountError,
    RankError,
    TraceError,
    TracePreservationError,
)


class TestValidateState:
    """Test density matrix validation"""

    def test_maximally_mixed(self):
        state = validate_state(np.eye(3) / 3)
        assert state.dim == 3
        assert state.is_full_rank
        assert not state.is_pure
        assert state.min_eigenvalue == pytest.approx(1 / 3)
        assert not state.mat.flags.writeable

    def test_pure_state_is_flagged(self):
        state = validate_state(np.diag([1.0, 0.0]))
        assert state.is_pure
        assert not state.is_full_rank

    def test_not_hermitian(self):
        with pytest.raises(HermiticityError):
            validate_state(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_wrong_trace(self):
        with pytest.raises(TraceError):
            validate_state(np.eye(2))

    def test_negative_eigenvalue(self):
        with pytest.raises(NegativityError):
            validate_state(np.diag([1.5, -0.5]))

    def test_hermiticity_checked_before_trace(self):
        with pytest.raises(HermiticityError):
            validate_state(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_not_square(self):
        with pytest.raises(DimensionError):
            validate_state(np.ones((2, 3)) / 2)

    def test_infinite_entry(self):
        with pytest.raises(NonFiniteError):
            validate_state(np.array([[np.inf, 0.0], [0.0, 0.0]]))

    def test_trace_within_tolerance_accepted(self):
        validate_state(np.diag([0.5, 0.5 + 5e-11]))

    def test_custom_rank_tolerance(self):
        state = validate_state(np.diag([0.99, 0.01]), Tolerances(rank=0.1))
        assert not state.is_full_rank


class TestValidatePovm:
    """Test POVM validation"""

    def test_projective_measurement(self, z_povm):
        assert z_povm.n_outcomes == 2
        assert z_povm.labels == ["a0", "a1"]

    def test_explicit_labels(self):
        povm = validate_povm([np.eye(2) / 2, np.eye(2) / 2], labels=["left", "right"])
        assert povm.labels == ["left", "right"]

    def test_label_prefix(self):
        povm = validate_povm([np.eye(2) / 3] * 3, label_prefix="b")
        assert povm.labels == ["b0", "b1", "b2"]

    def test_single_effect_rejected(self):
        with pytest.raises(OutcomeCountError) as exc_info:
            validate_povm([np.eye(2)])
        assert exc_info.value.field == "effects"

    def test_label_count_mismatch(self):
        with pytest.raises(OutcomeCountError) as exc_info:
            validate_povm([np.eye(2) / 2, np.eye(2) / 2], labels=["only"])
        assert exc_info.value.field == "labels"

    def test_incomplete_effects(self):
        with pytest.raises(CompletenessError) as exc_info:
            validate_povm([np.diag([1.0, 0.0]), np.diag([0.0, 0.9])])
        assert exc_info.value.field == "effects"

    def test_negative_effect_located(self):
        with pytest.raises(NegativityError) as exc_info:
            validate_povm([np.diag([1.5, 0.0]), np.diag([-0.5, 1.0])])
        assert exc_info.value.field == "effects[1]"
        assert str(exc_info.value).startswith("effects[1]: ")

    def test_non_hermitian_effect_located(self):
        with pytest.raises(HermiticityError) as exc_info:
            validate_povm([np.array([[0.5, 0.2], [0.0, 0.5]]), np.eye(2) / 2])
        assert exc_info.value.field == "effects[0]"

    def test_mixed_effect_shapes(self):
        with pytest.raises(DimensionError) as exc_info:
            validate_povm([np.eye(2) / 2, np.eye(3) / 2])
        assert exc_info.value.field == "effects[1]"


class TestValidateChannel:
    """Test Kraus channel validation"""

    def test_identity_channel(self, identity_qubit_channel):
        assert identity_qubit_channel.dim_in == 2
        assert identity_qubit_channel.dim_out == 2
        assert identity_qubit_channel.stacked.shape == (1, 2, 2)

    def test_rectangular_kraus(self):
        channel = validate_channel([np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])], 2, 3)
        assert channel.kraus[0].shape == (3, 2)

    def test_not_trace_preserving(self):
        with pytest.raises(TracePreservationError):
            validate_channel([0.9 * np.eye(2)], 2, 2)

    def test_wrong_shape_located(self):
        with pytest.raises(DimensionError) as exc_info:
            validate_channel([np.eye(2) / np.sqrt(2), np.eye(3)], 2, 2)
        assert exc_info.value.field == "kraus[1]"

    def test_no_kraus_operators(self):
        with pytest.raises(DimensionError):
            validate_channel([], 2, 2)

    def test_depolarizing_channel(self, depolarizing_factory):
        channel = depolarizing_factory(3)
        assert len(channel.kraus) == 9


class TestBuildScenario:
    """Test scenario assembly"""

    def test_consistent_parts(self, mixed_qubit, identity_qubit_channel, z_povm):
        scenario = build_scenario("ok", mixed_qubit, identity_qubit_channel, z_povm, z_povm)
        assert scenario.dims.d1 == 2
        assert scenario.dims.d2 == 2
        assert scenario.povm_a_alt is None
        assert not scenario.pure_fallback

    def test_povm_b_dimension_mismatch(self, mixed_qubit, z_povm):
        channel = validate_channel([np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])], 2, 3)
        with pytest.raises(DimensionError) as exc_info:
            build_scenario("bad", mixed_qubit, channel, z_povm, z_povm)
        assert exc_info.value.field == "povm_b"

    def test_alternative_povm_dimension_mismatch(self, mixed_qubit, identity_qubit_channel, z_povm):
        alt = validate_povm([np.eye(3) / 2, np.eye(3) / 2])
        with pytest.raises(DimensionError) as exc_info:
            build_scenario("bad", mixed_qubit, identity_qubit_channel, z_povm, z_povm, povm_a_alt=alt)
        assert exc_info.value.field == "povm_a_alt"

    def test_rank_deficient_state(self, identity_qubit_channel, z_povm):
        rho = validate_state(np.diag([1.0, 0.0]))
        with pytest.raises(RankError) as exc_info:
            build_scenario("bad", rho, identity_qubit_channel, z_povm, z_povm)
        assert exc_info.value.field == "rho"

    def test_pure_fallback_accepts_pure_state(self, identity_qubit_channel, z_povm):
        rho = validate_state(np.diag([1.0, 0.0]))
        scenario = build_scenario("pure", rho, identity_qubit_channel, z_povm, z_povm, pure_fallback=True)
        assert scenario.pure_fallback

    def test_pure_fallback_rejects_mixed_state(self, mixed_qubit, identity_qubit_channel, z_povm):
        with pytest.raises(RankError):
            build_scenario("bad", mixed_qubit, identity_qubit_channel, z_povm, z_povm, pure_fallback=True)
