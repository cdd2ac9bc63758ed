"""
Observers computing joint outcome probabilities, one per causal frame
"""

from .base import BaseObserver
from .alpha_observer import AlphaObserver, prob_alpha
from .beta_observer import BetaObserver, prob_beta
from .gamma_observer import GammaObserver, prob_gamma
from .controls import (
    NEGATIVE_CONTROLS,
    DaggerBetaObserver,
    TransposedEffectGammaObserver,
    UntransposedGammaObserver,
)
from .conditional import conditional_distribution

__all__ = [
    "BaseObserver",
    "AlphaObserver",
    "BetaObserver",
    "GammaObserver",
    "DaggerBetaObserver",
    "UntransposedGammaObserver",
    "TransposedEffectGammaObserver",
    "NEGATIVE_CONTROLS",
    "prob_alpha",
    "prob_beta",
    "prob_gamma",
    "conditional_distribution",
]
