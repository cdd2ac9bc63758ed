#!/usr/bin/env python3
"""
Conditional outcome probabilities p(b_j | a_i)
"""

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import DimensionError, ZeroMarginalError
from ..models import JointDistribution


def conditional_distribution(
    joint: JointDistribution,
    fixed_a_index: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """
    p(b_j | a) = p(a, b_j) / sum_j p(a, b_j) for the outcome ``fixed_a_index`` of A

    Raises:
        DimensionError: index out of range
        ZeroMarginalError: the outcome has probability below the zero tolerance
    """
    table = joint.matrix
    if not 0 <= fixed_a_index < table.shape[0]:
        raise DimensionError(f"outcome index {fixed_a_index} out of range for {table.shape[0]} outcomes of A")
    row = table[fixed_a_index]
    marginal = float(row.sum())
    if marginal < tolerances.zero:
        raise ZeroMarginalError(
            f"outcome {joint.labels_a[fixed_a_index]!r} has probability {marginal:.3e}"
        )
    return row / marginal
