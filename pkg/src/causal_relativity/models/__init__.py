"""
Data models for quantum objects, observer outputs and verification reports
"""

from .quantum_objects import (
    ArrayModel,
    BipartiteDims,
    CausalFrame,
    DensityMatrix,
    KrausChannel,
    Povm,
    Scenario,
)
from .frame_objects import (
    ConditionalKind,
    ConditionalState,
    Ensemble,
    JointDistribution,
    LiftedOperator,
    MatrixComparison,
)
from .reports import (
    BatchReport,
    FrameReport,
    NoSignallingReport,
    PureFallbackReport,
    RunReport,
    StarEqualityReport,
    TimingStats,
    TrialOutcome,
)

__all__ = [
    "ArrayModel",
    "BipartiteDims",
    "CausalFrame",
    "DensityMatrix",
    "KrausChannel",
    "Povm",
    "Scenario",
    "ConditionalKind",
    "ConditionalState",
    "Ensemble",
    "JointDistribution",
    "LiftedOperator",
    "MatrixComparison",
    "BatchReport",
    "FrameReport",
    "NoSignallingReport",
    "PureFallbackReport",
    "RunReport",
    "StarEqualityReport",
    "TimingStats",
    "TrialOutcome",
]
