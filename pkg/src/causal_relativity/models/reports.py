#!/usr/bin/env python3
"""
Verification report models using Pydantic.

Deviations are serialised to JSON as scientific-notation strings with 17
significant digits, which parse back to the identical double.
"""

from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, PlainSerializer

from .frame_objects import JointDistribution
from ..config import BatchConfig

Deviation = Annotated[
    float,
    PlainSerializer(lambda value: f"{value:.16e}", return_type=str, when_used="json"),
]


class StarEqualityReport(BaseModel):
    """Star-product equalities rho^T * rho^s = tau_12 and rho * rho^t = T_rho"""

    acausal_deviation: Deviation = Field(..., description="max |rho^T * rho^s - tau_12|")
    causal_deviation: Deviation = Field(..., description="max |rho * rho^t - T_rho|")
    prior_deviation: Deviation = Field(..., description="max |Tr_B[tau_12] - rho^T| (the acausal prior)")
    tolerance: float = Field(..., description="Tolerance used")
    passed: bool = Field(..., description="Every deviation within tolerance")


class FrameReport(BaseModel):
    """Executable relativity-of-causal-structure check for one scenario"""

    scenario_name: str = Field(..., description="Scenario name")
    alpha: JointDistribution = Field(..., description="Distribution computed by the A-causes-B observer")
    beta: JointDistribution = Field(..., description="Distribution computed by the B-causes-A observer")
    gamma: JointDistribution = Field(..., description="Distribution computed by the space-like observer")
    alpha_beta_deviation: Deviation = Field(..., description="max |p_alpha - p_beta|")
    alpha_gamma_deviation: Deviation = Field(..., description="max |p_alpha - p_gamma|")
    beta_gamma_deviation: Deviation = Field(..., description="max |p_beta - p_gamma|")
    a_marginal_deviation: Deviation = Field(..., description="max |sum_j p(a_i,b_j) - Tr[a_i rho]| over all frames")
    b_marginal_deviation: Deviation = Field(..., description="max |sum_i p(a_i,b_j) - Tr[b_j T(rho)]| over all frames")
    lifting_deviation: Deviation = Field(..., description="max |Tr_1[T_rho] - T(rho)|")
    reduced_state_deviation: Deviation = Field(..., description="max |Tr_2[tau_12] - rho^T|")
    choi_deviation: Deviation = Field(..., description="max |(I x T)(|Phi><Phi|) - tau_12|")
    star: StarEqualityReport = Field(..., description="Star-product equalities")
    tolerance: float = Field(..., description="Tolerance applied to every deviation")
    passed: bool = Field(..., description="Every deviation within tolerance")
    wall_time_seconds: float = Field(..., description="Time spent on this scenario", ge=0.0)

    def deviations(self) -> Dict[str, float]:
        """Every checked deviation by name"""
        return {
            "alpha_beta": self.alpha_beta_deviation,
            "alpha_gamma": self.alpha_gamma_deviation,
            "beta_gamma": self.beta_gamma_deviation,
            "a_marginal": self.a_marginal_deviation,
            "b_marginal": self.b_marginal_deviation,
            "lifting": self.lifting_deviation,
            "reduced_state": self.reduced_state_deviation,
            "choi": self.choi_deviation,
            "star_acausal": self.star.acausal_deviation,
            "star_causal": self.star.causal_deviation,
            "star_prior": self.star.prior_deviation,
        }

    @property
    def worst_deviation(self) -> float:
        return max(self.deviations().values())

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump(mode="json")


class NoSignallingReport(BaseModel):
    """B-marginals under two different measurements on S1"""

    scenario_name: str = Field(..., description="Scenario name")
    marginal_under_a: List[float] = Field(..., description="sum_i p(a_i, b_j) for every b_j")
    marginal_under_a_alt: List[float] = Field(..., description="sum_i p(a'_i, b_j) for every b_j")
    expected_marginal: List[float] = Field(..., description="Tr[b_j T(rho)] for every b_j")
    labels_b: List[str] = Field(..., description="Outcome labels of B")
    max_deviation: Deviation = Field(..., description="Largest disagreement among the three vectors")
    tolerance: float = Field(..., description="Tolerance used")
    passed: bool = Field(..., description="max_deviation within tolerance")

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump(mode="json")


class PureFallbackReport(BaseModel):
    """Conditional probabilities p(b_j | a) for a pure rho = |a><a| in all three frames"""

    scenario_name: str = Field(..., description="Scenario name")
    direct: List[float] = Field(..., description="Tr[b_j T(|a><a|)] as the forward observer computes it")
    conditionals: Dict[str, List[float]] = Field(..., description="Conditional vector per frame")
    max_deviation: Deviation = Field(..., description="Largest deviation from the direct vector")
    tolerance: float = Field(..., description="Tolerance used")
    passed: bool = Field(..., description="max_deviation within tolerance")

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump(mode="json")


class TrialOutcome(BaseModel):
    """One batch trial, enough to reproduce it"""

    index: int = Field(..., description="Trial index", ge=0)
    seed: int = Field(..., description="Scenario seed", ge=0)
    d1: int = Field(..., description="Dimension of S1")
    d2: int = Field(..., description="Dimension of S2")
    n_kraus: int = Field(..., description="Number of Kraus operators")
    n_outcomes: int = Field(..., description="Outcomes of each POVM")
    status: Literal["passed", "failed", "error"] = Field(..., description="Trial verdict")
    worst_deviation: Optional[Deviation] = Field(default=None, description="Largest deviation of the trial")
    no_signalling_deviation: Optional[Deviation] = Field(default=None, description="No-signalling deviation")
    error_class: Optional[Literal["generation", "validation", "internal"]] = Field(default=None, description="Classification of a trial error")
    error: Optional[str] = Field(default=None, description="Error message")
    wall_time_seconds: float = Field(default=0.0, description="Trial duration", ge=0.0)


class TimingStats(BaseModel):
    """Wall-clock statistics; excluded from determinism comparisons"""

    total_seconds: float = Field(..., ge=0.0)
    mean_seconds: float = Field(..., ge=0.0)
    max_seconds: float = Field(..., ge=0.0)


class BatchReport(BaseModel):
    """Aggregate of a seeded batch of random scenarios"""

    config: BatchConfig = Field(..., description="Configuration echo")
    n_trials: int = Field(..., description="Trials run", ge=0)
    passed: int = Field(..., description="Trials with every deviation within tolerance", ge=0)
    failed: int = Field(..., description="Trials with a deviation above tolerance", ge=0)
    errored: int = Field(..., description="Trials that raised", ge=0)
    error_counts: Dict[str, int] = Field(default_factory=dict, description="Errors by classification")
    worst_deviation: Optional[Deviation] = Field(default=None, description="Largest deviation over all trials")
    worst_trial: Optional[TrialOutcome] = Field(default=None, description="Trial holding the worst deviation")
    worst_no_signalling_deviation: Optional[Deviation] = Field(default=None, description="Largest no-signalling deviation")
    failures: List[TrialOutcome] = Field(default_factory=list, description="Failed or errored trials in index order")
    timing: TimingStats = Field(..., description="Timing statistics")

    @property
    def all_passed(self) -> bool:
        return self.passed == self.n_trials

    def fingerprint(self) -> dict:
        """Report content without timings or worker count, for determinism checks"""
        data = self.model_dump(mode="json", exclude={"timing"})
        data["config"].pop("max_workers", None)
        for trial in [data.get("worst_trial")] + data.get("failures", []):
            if trial:
                trial.pop("wall_time_seconds", None)
        return data

    def to_dict(self) -> dict:
        """Convert to dictionary with proper serialization"""
        return self.model_dump(mode="json")


class RunReport(BaseModel):
    """Machine-readable document written by the CLI's --json option"""

    tool: str = Field(default="causal-relativity", description="Tool name")
    tool_version: str = Field(..., description="Package version")
    command: str = Field(..., description="Subcommand that produced the report")
    config: Dict[str, Any] = Field(default_factory=dict, description="Echo of the effective options")
    frames: Optional[FrameReport] = Field(default=None)
    no_signalling: Optional[NoSignallingReport] = Field(default=None)
    pure_fallback: Optional[PureFallbackReport] = Field(default=None)
    batch: Optional[BatchReport] = Field(default=None)
    passed: bool = Field(..., description="Overall verdict")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
