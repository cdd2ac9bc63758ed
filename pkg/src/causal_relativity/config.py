#!/usr/bin/env python3
"""
Numeric tolerances and batch configuration using Pydantic
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Tolerances(BaseModel):
    """Every numeric threshold used by validators, pipelines and checks"""

    model_config = ConfigDict(frozen=True)

    hermiticity: float = Field(default=1e-10, description="Max |M - M^dagger| entry for Hermitian operators", ge=0.0)
    psd_relative: float = Field(default=1e-10, description="Relative PSD slack: eps = psd_relative * (1 + max |eigenvalue|)", ge=0.0)
    trace: float = Field(default=1e-10, description="Max |trace - 1| for density matrices", ge=0.0)
    completeness: float = Field(default=1e-10, description="Max Frobenius norm of sum(effects) - I", ge=0.0)
    trace_preservation: float = Field(default=1e-10, description="Max entry of sum K^dagger K - I", ge=0.0)
    rank: float = Field(default=1e-9, description="Smallest eigenvalue a full-rank state may have", ge=0.0)
    purity: float = Field(default=1e-10, description="A state is pure when its top eigenvalue >= 1 - purity", ge=0.0)
    zero: float = Field(default=1e-12, description="Probability below which an outcome never happens", ge=0.0)
    full_rank_mix: float = Field(default=1e-3, description="Mixing weight of I/d used to repair rank-deficient draws", ge=0.0, le=1.0)
    probability_clamp: float = Field(default=1e-12, description="Negative probabilities down to -clamp are rounding noise and clamped silently", ge=0.0)
    probability_failure: float = Field(default=1e-10, description="Probabilities below -failure signal a bug", ge=0.0)
    normalization: float = Field(default=1e-10, description="Max |sum p - 1| of a joint distribution", ge=0.0)
    frame_equality: float = Field(default=1e-10, description="Default tolerance for frame equality checks", ge=0.0)
    lifting: float = Field(default=1e-10, description="Max deviation of Tr_1[T_rho] from T(rho)", ge=0.0)

    def psd_slack(self, largest_magnitude: float) -> float:
        """Negative-eigenvalue slack for an operator with the given spectral radius"""
        return self.psd_relative * (1.0 + largest_magnitude)


DEFAULT_TOLERANCES = Tolerances()


class BatchConfig(BaseModel):
    """Configuration of a seeded batch of random frame-equality trials"""

    d1_values: List[int] = Field(default_factory=lambda: [2, 3, 4], description="Dimensions sampled for system S1")
    d2_values: List[int] = Field(default_factory=lambda: [2, 3, 4], description="Dimensions sampled for system S2")
    kraus_counts: List[int] = Field(default_factory=lambda: [1, 2, 4], description="Kraus operator counts sampled")
    outcome_counts: List[int] = Field(default_factory=lambda: [2, 3], description="POVM outcome counts sampled")
    n_trials: int = Field(default=1000, description="Number of trials", gt=0)
    base_seed: int = Field(default=0, description="Trial i uses seed base_seed + i", ge=0)
    tol: float = Field(default=DEFAULT_TOLERANCES.frame_equality, description="Pass tolerance for every deviation", ge=0.0)
    check_no_signalling: bool = Field(default=True, description="Also run the no-signalling check per trial")
    max_workers: int = Field(default=1, description="Worker threads; results do not depend on it", ge=1)

    @field_validator("d1_values", "d2_values")
    @classmethod
    def validate_dims(cls, values: List[int]) -> List[int]:
        if not values or any(v < 2 for v in values):
            raise ValueError("dimensions must be a non-empty list of integers >= 2")
        return values

    @field_validator("kraus_counts")
    @classmethod
    def validate_kraus_counts(cls, values: List[int]) -> List[int]:
        if not values or any(v < 1 for v in values):
            raise ValueError("kraus counts must be a non-empty list of integers >= 1")
        return values

    @field_validator("outcome_counts")
    @classmethod
    def validate_outcome_counts(cls, values: List[int]) -> List[int]:
        if not values or any(v < 2 for v in values):
            raise ValueError("outcome counts must be a non-empty list of integers >= 2")
        return values

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump()
