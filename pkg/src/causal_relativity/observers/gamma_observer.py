#!/usr/bin/env python3
"""
Observer assuming neither event causes the other (space-like)
"""

from typing import Optional

import numpy as np

from .base import BaseObserver
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..core import bipartite_state, kron, transpose
from ..models import CausalFrame, JointDistribution, LiftedOperator, Scenario


class GammaObserver(BaseObserver):
    """p(a_i, b_j) = Tr[(a_i^T (x) b_j) tau_12] with tau_12 = T_rho^{T_1}"""

    frame = CausalFrame.GAMMA_SPACELIKE

    def _spacelike_state(self, lifted: LiftedOperator) -> np.ndarray:
        return bipartite_state(lifted, self.tolerances).mat

    def _effect_b(self, b: np.ndarray) -> np.ndarray:
        return b

    def raw_probabilities(self, scenario: Scenario, lifted: LiftedOperator) -> np.ndarray:
        tau = self._spacelike_state(lifted)
        probs = np.empty((scenario.povm_a.n_outcomes, scenario.povm_b.n_outcomes), dtype=np.complex128)
        for i, a in enumerate(scenario.povm_a.effects):
            a_t = transpose(a)
            for j, b in enumerate(scenario.povm_b.effects):
                probs[i, j] = np.trace(kron(a_t, self._effect_b(b)) @ tau)
        return probs


def prob_gamma(
    scenario: Scenario,
    lifted: Optional[LiftedOperator] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> JointDistribution:
    return GammaObserver(tolerances).joint_distribution(scenario, lifted)
