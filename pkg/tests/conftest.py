#!/usr/bin/env python3
"""
Shared pytest fixtures and configuration for causal-relativity tests.
"""

import os
import sys
import tempfile
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

# Add src to Python path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from causal_relativity.core import (
    build_scenario,
    random_scenario,
    validate_channel,
    validate_povm,
    validate_state,
)
from causal_relativity.models import JointDistribution, Scenario
from causal_relativity.presets import preset


# ===== BASIC FIXTURES =====

@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def temp_file(temp_dir):
    """Create a temporary file for testing."""
    def _create_file(content: str, filename: str = "scenario.json") -> Path:
        file_path = temp_dir / filename
        file_path.write_text(content, encoding="utf-8")
        return file_path
    return _create_file


# ===== MATRIX FIXTURES =====

@pytest.fixture
def paulis():
    """Pauli matrices I, X, Y, Z."""
    return {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }


@pytest.fixture
def swap_2x2():
    """SWAP on two qubits."""
    swap = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for c in range(2):
            swap[c * 2 + a, a * 2 + c] = 1.0
    return swap


@pytest.fixture
def phi_plus_projector():
    """|Phi+><Phi+| for two qubits."""
    vec = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return np.outer(vec, vec.conj())


@pytest.fixture
def z_povm():
    """Z-basis projective measurement on a qubit."""
    return validate_povm([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])


@pytest.fixture
def x_povm():
    """X-basis projective measurement on a qubit."""
    plus = np.array([[0.5, 0.5], [0.5, 0.5]])
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    return validate_povm([plus, minus])


@pytest.fixture
def mixed_qubit():
    """Maximally mixed qubit I/2."""
    return validate_state(np.eye(2) / 2)


@pytest.fixture
def identity_qubit_channel():
    return validate_channel([np.eye(2)], 2, 2)


@pytest.fixture
def depolarizing_factory():
    """Completely depolarizing channel with Kraus operators |a><b| / sqrt(d)."""
    def _make(dim: int = 2):
        kraus = []
        for a in range(dim):
            for b in range(dim):
                op = np.zeros((dim, dim), dtype=complex)
                op[a, b] = 1.0 / np.sqrt(dim)
                kraus.append(op)
        return validate_channel(kraus, dim, dim)
    return _make


# ===== SCENARIO FIXTURES =====

@pytest.fixture
def stern_gerlach():
    return preset("stern-gerlach")


@pytest.fixture
def depolarizing_scenario():
    return preset("depolarizing")


@pytest.fixture
def bell_scenario():
    return preset("bell")


@pytest.fixture
def qubit_scenario_factory(mixed_qubit, z_povm):
    """Build qubit scenarios from a channel and optional POVMs."""
    def _make(channel, povm_a=None, povm_b=None, povm_a_alt=None, name: str = "qubit") -> Scenario:
        return build_scenario(
            name=name,
            rho=mixed_qubit,
            channel=channel,
            povm_a=povm_a or z_povm,
            povm_b=povm_b or validate_povm(list(z_povm.effects), label_prefix="b"),
            povm_a_alt=povm_a_alt,
        )
    return _make


@pytest.fixture
def scenario_factory() -> Callable[..., Scenario]:
    """Seeded random scenarios, cycling through small dimensions."""
    def _make(seed: int, d1: int = 3, d2: int = 2, n_kraus: int = 2, n_outcomes: int = 2,
              with_alt: bool = True) -> Scenario:
        return random_scenario(seed, d1, d2, n_kraus, n_outcomes, n_outcomes, with_alt=with_alt)
    return _make


@pytest.fixture(params=[(2, 2, 1), (2, 3, 2), (3, 2, 2), (3, 3, 4), (4, 2, 2), (2, 4, 1), (4, 4, 4)])
def dims_and_kraus(request):
    """Parametrized (d1, d2, n_kraus) combinations a random channel can realise."""
    return request.param


# ===== ASSERTION HELPERS =====

@pytest.fixture
def close():
    """Assert two arrays agree entrywise within an absolute tolerance."""
    def _close(actual, expected, atol: float = 1e-12) -> None:
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        assert actual.shape == expected.shape, f"shape {actual.shape} != {expected.shape}"
        deviation = float(np.max(np.abs(actual - expected))) if actual.size else 0.0
        assert deviation <= atol, f"max deviation {deviation:.3e} > {atol:.1e}"
    return _close


@pytest.fixture
def distribution_validator():
    """Helper for validating JointDistribution objects."""
    def validate(joint: JointDistribution) -> None:
        table = joint.matrix
        assert table.shape == (len(joint.labels_a), len(joint.labels_b))
        assert np.all(table >= 0.0)
        assert np.all(table <= 1.0)
        assert abs(table.sum() - 1.0) <= 1e-10

        joint_dict = joint.to_dict()
        assert joint_dict["frame"] == joint.frame.value
        assert joint_dict["probabilities"] == joint.probabilities
    return validate


@pytest.fixture
def performance_timer():
    """Helper for timing operations."""
    import time

    class Timer:
        def __init__(self):
            self.start_time = None
            self.end_time = None

        def __enter__(self):
            self.start_time = time.perf_counter()
            return self

        def __exit__(self, *args):
            self.end_time = time.perf_counter()

        @property
        def elapsed(self) -> float:
            if self.start_time and self.end_time:
                return self.end_time - self.start_time
            return 0.0

    return Timer


# ===== PYTEST MARKERS AUTO-ASSIGNMENT =====

def pytest_collection_modifyitems(config, items):
    """Automatically assign markers based on test location."""
    for item in items:
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)
        if "functional" in str(item.fspath):
            item.add_marker(pytest.mark.functional)
