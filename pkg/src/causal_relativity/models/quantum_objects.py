#!/usr/bin/env python3
"""
Validated quantum objects: states, POVMs, channels and experiment scenarios.

Instances are built by the validators in ``causal_relativity.core.validation``;
the models themselves only enforce structural consistency. Matrix fields are
read-only ``complex128`` numpy arrays.
"""

from enum import Enum
from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


def _values_equal(left: Any, right: Any) -> bool:
    if isinstance(left, np.ndarray) or isinstance(right, np.ndarray):
        return np.array_equal(np.asarray(left), np.asarray(right))
    if isinstance(left, (list, tuple)) and isinstance(right, (list, tuple)):
        return len(left) == len(right) and all(_values_equal(a, b) for a, b in zip(left, right))
    return left == right


class ArrayModel(BaseModel):
    """Frozen model whose equality compares numpy fields entrywise"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return all(
            _values_equal(getattr(self, name), getattr(other, name))
            for name in type(self).model_fields
        )

    __hash__ = None  # type: ignore[assignment]


class BipartiteDims(BaseModel):
    """Tensor factorisation S1 (x) S2; S1 is the slow (left) index"""

    model_config = ConfigDict(frozen=True)

    d1: int = Field(..., description="Dimension of system S1", ge=2)
    d2: int = Field(..., description="Dimension of system S2", ge=2)

    @property
    def total(self) -> int:
        return self.d1 * self.d2


class DensityMatrix(ArrayModel):
    """Hermitian, positive semidefinite, unit-trace state with cached spectral facts"""

    dim: int = Field(..., description="Hilbert space dimension", gt=0)
    mat: np.ndarray = Field(..., description="dim x dim complex matrix")
    min_eigenvalue: float = Field(..., description="Smallest eigenvalue")
    max_eigenvalue: float = Field(..., description="Largest eigenvalue")
    is_full_rank: bool = Field(..., description="min_eigenvalue >= rank tolerance")
    is_pure: bool = Field(..., description="max_eigenvalue >= 1 - purity tolerance")

    @model_validator(mode="after")
    def validate_shape(self):
        if self.mat.shape != (self.dim, self.dim):
            raise ValueError(f"state matrix has shape {self.mat.shape}, expected {(self.dim, self.dim)}")
        return self


class Povm(ArrayModel):
    """Finite POVM on one system: PSD effects summing to the identity"""

    dim: int = Field(..., description="Dimension of the measured system", gt=0)
    effects: Tuple[np.ndarray, ...] = Field(..., description="Effect operators in outcome order")
    labels: List[str] = Field(..., description="Outcome names, one per effect")

    @model_validator(mode="after")
    def validate_outcomes(self):
        if len(self.effects) < 2:
            raise ValueError("a POVM needs at least two effects")
        if len(self.labels) != len(self.effects):
            raise ValueError("labels and effects must have the same length")
        for effect in self.effects:
            if effect.shape != (self.dim, self.dim):
                raise ValueError(f"effect has shape {effect.shape}, expected {(self.dim, self.dim)}")
        return self

    @property
    def n_outcomes(self) -> int:
        return len(self.effects)


class KrausChannel(ArrayModel):
    """CPTP map S1 -> S2 given by Kraus operators of shape dim_out x dim_in"""

    dim_in: int = Field(..., description="Input dimension (S1)", gt=0)
    dim_out: int = Field(..., description="Output dimension (S2)", gt=0)
    kraus: Tuple[np.ndarray, ...] = Field(..., description="Kraus operators")

    @model_validator(mode="after")
    def validate_kraus_shapes(self):
        if not self.kraus:
            raise ValueError("a channel needs at least one Kraus operator")
        for op in self.kraus:
            if op.shape != (self.dim_out, self.dim_in):
                raise ValueError(f"Kraus operator has shape {op.shape}, expected {(self.dim_out, self.dim_in)}")
        return self

    @property
    def stacked(self) -> np.ndarray:
        """Kraus operators as one (n_kraus, dim_out, dim_in) array"""
        return np.stack(self.kraus)


class CausalFrame(str, Enum):
    """The three causal structures an observer may assume for (chi_a, chi_b)"""

    ALPHA_FORWARD = "alpha"
    BETA_REVERSE = "beta"
    GAMMA_SPACELIKE = "gamma"

    @property
    def description(self) -> str:
        return {
            CausalFrame.ALPHA_FORWARD: "chi_a causes chi_b",
            CausalFrame.BETA_REVERSE: "chi_b causes chi_a",
            CausalFrame.GAMMA_SPACELIKE: "neither causes the other (space-like)",
        }[self]


class Scenario(ArrayModel):
    """One two-device experiment: state on S1, channel S1 -> S2, POVMs A and B"""

    name: str = Field(..., description="Scenario name")
    dims: BipartiteDims = Field(..., description="Dimensions of S1 and S2")
    rho: DensityMatrix = Field(..., description="State on S1")
    channel: KrausChannel = Field(..., description="Evolution S1 -> S2")
    povm_a: Povm = Field(..., description="Measurement A on S1")
    povm_b: Povm = Field(..., description="Measurement B on S2")
    povm_a_alt: Optional[Povm] = Field(default=None, description="Alternative measurement A' on S1")
    pure_fallback: bool = Field(default=False, description="rho is pure; use the conditional-probability route")
    description: Optional[str] = Field(default=None, description="Free-form metadata")

    @model_validator(mode="after")
    def validate_dimensions(self):
        d1, d2 = self.dims.d1, self.dims.d2
        checks = [
            (self.rho.dim == d1, "rho"),
            (self.channel.dim_in == d1 and self.channel.dim_out == d2, "channel"),
            (self.povm_a.dim == d1, "povm_a"),
            (self.povm_b.dim == d2, "povm_b"),
            (self.povm_a_alt is None or self.povm_a_alt.dim == d1, "povm_a_alt"),
        ]
        for ok, name in checks:
            if not ok:
                raise ValueError(f"{name} is inconsistent with dims ({d1}, {d2})")
        return self
