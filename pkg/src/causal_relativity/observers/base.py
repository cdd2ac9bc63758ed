#!/usr/bin/env python3
"""
Base observer class for computing joint outcome probabilities in one causal frame
"""

import logging
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..core import lifted_operator
from ..errors import InternalInvariantError
from ..models import CausalFrame, JointDistribution, LiftedOperator, Scenario

logger = logging.getLogger(__name__)


class BaseObserver(ABC):
    """Base class for all observers"""

    frame: CausalFrame

    def __init__(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.name = self.__class__.__name__
        self.tolerances = tolerances

    @abstractmethod
    def raw_probabilities(self, scenario: Scenario, lifted: LiftedOperator) -> np.ndarray:
        """
        Compute p(a_i, b_j) before any checks

        Args:
            scenario: Validated full-rank scenario
            lifted: T_rho of the scenario's state and channel

        Returns:
            Complex array of shape (outcomes of A, outcomes of B)
        """

    def joint_distribution(
        self,
        scenario: Scenario,
        lifted: Optional[LiftedOperator] = None,
    ) -> JointDistribution:
        """
        Compute, check and package the joint distribution

        Raises:
            RankError: the scenario's state is not full rank
            InternalInvariantError: the result is not a probability distribution
        """
        if lifted is None:
            lifted = lifted_operator(scenario.rho, scenario.channel, self.tolerances)
        raw = self.raw_probabilities(scenario, lifted)
        return self._finalize(raw, scenario)

    def _finalize(self, raw: np.ndarray, scenario: Scenario) -> JointDistribution:
        tol = self.tolerances
        imaginary = float(np.max(np.abs(raw.imag)))
        if imaginary > tol.probability_failure:
            raise InternalInvariantError(f"{self.name}: probabilities have imaginary part {imaginary:.3e}")

        probs = raw.real
        lowest = float(probs.min())
        if lowest < -tol.probability_failure:
            raise InternalInvariantError(f"{self.name}: negative probability {lowest:.3e}")
        if lowest < -tol.probability_clamp:
            logger.debug("%s: clamping negative probability %.3e to 0", self.name, lowest)
        probs = np.clip(probs, 0.0, 1.0)

        total = float(probs.sum())
        if abs(total - 1.0) > tol.normalization:
            raise InternalInvariantError(f"{self.name}: probabilities sum to {total:.12g}")

        return JointDistribution(
            frame=self.frame,
            probabilities=probs.tolist(),
            labels_a=list(scenario.povm_a.labels),
            labels_b=list(scenario.povm_b.labels),
        )
