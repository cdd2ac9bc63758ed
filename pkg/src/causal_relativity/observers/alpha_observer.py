#!/usr/bin/env python3
"""
Observer assuming chi_a causes chi_b
"""

from typing import Optional

import numpy as np

from .base import BaseObserver
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..core import identity, kron, partial_trace
from ..models import CausalFrame, JointDistribution, LiftedOperator, Scenario


class AlphaObserver(BaseObserver):
    """p(a_i, b_j) = Tr_2[b_j Tr_1[T_rho (a_i (x) I_2)]]"""

    frame = CausalFrame.ALPHA_FORWARD

    def raw_probabilities(self, scenario: Scenario, lifted: LiftedOperator) -> np.ndarray:
        dims = lifted.dims
        eye2 = identity(dims.d2)
        probs = np.empty((scenario.povm_a.n_outcomes, scenario.povm_b.n_outcomes), dtype=np.complex128)
        for i, a in enumerate(scenario.povm_a.effects):
            # state of S2 prepared by outcome a_i, weighted by its probability
            prepared = partial_trace(lifted.mat @ kron(a, eye2), dims, 1)
            for j, b in enumerate(scenario.povm_b.effects):
                probs[i, j] = np.trace(b @ prepared)
        return probs


def prob_alpha(
    scenario: Scenario,
    lifted: Optional[LiftedOperator] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> JointDistribution:
    return AlphaObserver(tolerances).joint_distribution(scenario, lifted)
