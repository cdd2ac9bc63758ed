#!/usr/bin/env python3
"""
Observer assuming chi_b causes chi_a

Every operator this observer uses is the transpose of the one the forward
observer uses: T_rho^T (both factors) and the transposed effects.
"""

from typing import Optional

import numpy as np

from .base import BaseObserver
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..core import identity, kron, partial_trace, transpose
from ..models import CausalFrame, JointDistribution, LiftedOperator, Scenario


class BetaObserver(BaseObserver):
    """p(a_i, b_j) = Tr_1[a_i^T Tr_2[T_rho^T (I_1 (x) b_j^T)]]"""

    frame = CausalFrame.BETA_REVERSE

    def _reverse_operator(self, lifted: LiftedOperator) -> np.ndarray:
        return transpose(lifted.mat)

    def raw_probabilities(self, scenario: Scenario, lifted: LiftedOperator) -> np.ndarray:
        dims = lifted.dims
        eye1 = identity(dims.d1)
        reverse = self._reverse_operator(lifted)
        probs = np.empty((scenario.povm_a.n_outcomes, scenario.povm_b.n_outcomes), dtype=np.complex128)
        for j, b in enumerate(scenario.povm_b.effects):
            retrodicted = partial_trace(reverse @ kron(eye1, transpose(b)), dims, 2)
            for i, a in enumerate(scenario.povm_a.effects):
                probs[i, j] = np.trace(transpose(a) @ retrodicted)
        return probs


def prob_beta(
    scenario: Scenario,
    lifted: Optional[LiftedOperator] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> JointDistribution:
    return BetaObserver(tolerances).joint_distribution(scenario, lifted)
