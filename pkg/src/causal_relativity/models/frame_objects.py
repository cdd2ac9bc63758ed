#!/usr/bin/env python3
"""
Objects produced by the observer pipelines: ensembles, T_rho, joint
distributions, conditional states and matrix comparisons
"""

from enum import Enum
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .quantum_objects import ArrayModel, BipartiteDims, CausalFrame, DensityMatrix, Povm


class MatrixComparison(BaseModel):
    """Verdict of an entrywise comparison with the location of the worst entry"""

    equal: bool = Field(..., description="max deviation <= tolerance")
    max_deviation: float = Field(..., description="Largest entrywise absolute difference", ge=0.0)
    index: Tuple[int, ...] = Field(..., description="Index of the largest difference")
    tolerance: float = Field(..., description="Tolerance used", ge=0.0)

    def __bool__(self) -> bool:
        return self.equal


class Ensemble(ArrayModel):
    """Preparation ensemble rho = sum_i p_i sigma_i induced by a POVM on a full-rank rho"""

    weights: List[float] = Field(..., description="p_i = Tr[a_i rho] for every outcome")
    members: List[DensityMatrix] = Field(..., description="sigma_i for outcomes with p_i >= zero tolerance")
    member_indices: List[int] = Field(..., description="Outcome index of each member")
    degenerate_outcomes: List[int] = Field(default_factory=list, description="Outcomes with p_i below zero tolerance")
    source_state: DensityMatrix = Field(..., description="The decomposed state")
    source_povm: Povm = Field(..., description="The POVM inducing the decomposition")

    @model_validator(mode="after")
    def validate_members(self):
        if len(self.members) != len(self.member_indices):
            raise ValueError("every member needs an outcome index")
        return self

    def reconstruct(self) -> np.ndarray:
        """sum_i p_i sigma_i over non-degenerate outcomes"""
        total = np.zeros_like(self.source_state.mat)
        for idx, member in zip(self.member_indices, self.members):
            total = total + self.weights[idx] * member.mat
        return total


class LiftedOperator(ArrayModel):
    """The bipartite operator T_rho on S1 (x) S2 encoding a state-and-channel pair"""

    dims: BipartiteDims = Field(..., description="Dimensions of S1 and S2")
    mat: np.ndarray = Field(..., description="(d1 d2) x (d1 d2) matrix")

    @model_validator(mode="after")
    def validate_shape(self):
        n = self.dims.total
        if self.mat.shape != (n, n):
            raise ValueError(f"lifted operator has shape {self.mat.shape}, expected {(n, n)}")
        return self


class JointDistribution(BaseModel):
    """Joint outcome probabilities p(a_i, b_j) as computed in one causal frame"""

    frame: CausalFrame = Field(..., description="Causal frame of the observer that computed it")
    probabilities: List[List[float]] = Field(..., description="Row i, column j holds p(a_i, b_j)")
    labels_a: List[str] = Field(..., description="Outcome labels of A")
    labels_b: List[str] = Field(..., description="Outcome labels of B")

    @model_validator(mode="after")
    def validate_table(self):
        if len(self.probabilities) != len(self.labels_a):
            raise ValueError("one row per outcome of A")
        if any(len(row) != len(self.labels_b) for row in self.probabilities):
            raise ValueError("one column per outcome of B")
        return self

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.probabilities, dtype=float)

    def marginal_a(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    def marginal_b(self) -> np.ndarray:
        return self.matrix.sum(axis=0)

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump(mode="json")


class ConditionalKind(str, Enum):
    """Acausal (Choi) or causal (Jamiolkowski) conditional state"""

    ACAUSAL = "acausal"
    CAUSAL = "causal"


class ConditionalState(ArrayModel):
    """Quantum conditional state rho_{A|B} of a channel from region A to region B"""

    dims: BipartiteDims = Field(..., description="d_A = d1, d_B = d2")
    mat: np.ndarray = Field(..., description="(d_A d_B) x (d_A d_B) matrix")
    kind: ConditionalKind = Field(..., description="Acausal or causal")

    @model_validator(mode="after")
    def validate_shape(self):
        n = self.dims.total
        if self.mat.shape != (n, n):
            raise ValueError(f"conditional state has shape {self.mat.shape}, expected {(n, n)}")
        return self
