#!/usr/bin/env python3
"""
Exception hierarchy for quantum object validation and frame verification
"""

from typing import Optional


class CausalRelativityError(Exception):
    """Base class for every error raised by the package.

    ``field`` locates the offending input (for example ``"rho"`` or
    ``"povm_a.effects[1]"``) when the error comes from a scenario document.
    """

    def __init__(self, reason: str, field: Optional[str] = None):
        super().__init__(reason)
        self.reason = reason
        self.field = field

    def with_field(self, prefix: str) -> "CausalRelativityError":
        """Prepend ``prefix`` to the field path and return self"""
        if not self.field:
            self.field = prefix
            return self
        sep = "" if self.field.startswith("[") else "."
        self.field = f"{prefix}{sep}{self.field}"
        return self

    def __str__(self) -> str:
        if self.field:
            return f"{self.field}: {self.reason}"
        return self.reason


class DimensionError(CausalRelativityError, ValueError):
    """Shapes or declared dimensions disagree"""


class NonFiniteError(CausalRelativityError, ValueError):
    """A matrix contains NaN or infinite entries"""


class HermiticityError(CausalRelativityError, ValueError):
    """An operator that must be Hermitian is not"""


class NegativityError(CausalRelativityError, ValueError):
    """An operator that must be positive semidefinite has a negative eigenvalue"""


class TraceError(CausalRelativityError, ValueError):
    """A state does not have unit trace"""


class CompletenessError(CausalRelativityError, ValueError):
    """POVM effects do not sum to the identity"""


class OutcomeCountError(CausalRelativityError, ValueError):
    """A POVM has fewer than two outcomes or labels do not match effects"""


class TracePreservationError(CausalRelativityError, ValueError):
    """Kraus operators violate sum K^dagger K = I"""


class RankError(CausalRelativityError, ValueError):
    """A state (or random draw) is not of full rank where full rank is required"""


class SingularityError(CausalRelativityError, ValueError):
    """A matrix that must be inverted is numerically singular"""


class ZeroMarginalError(CausalRelativityError, ValueError):
    """Conditioning on an event whose probability is numerically zero"""


class MissingAltPovmError(CausalRelativityError, ValueError):
    """No-signalling needs a second POVM on system 1"""


class ParseError(CausalRelativityError, ValueError):
    """A scenario document is malformed"""


class UnknownPresetError(CausalRelativityError, ValueError):
    """No preset with the requested name"""


class InternalInvariantError(CausalRelativityError, RuntimeError):
    """An identity that holds for every valid input failed: a bug signal"""


__all__ = [
    "CausalRelativityError",
    "DimensionError",
    "NonFiniteError",
    "HermiticityError",
    "NegativityError",
    "TraceError",
    "CompletenessError",
    "OutcomeCountError",
    "TracePreservationError",
    "RankError",
    "SingularityError",
    "ZeroMarginalError",
    "MissingAltPovmError",
    "ParseError",
    "UnknownPresetError",
    "InternalInvariantError",
]
