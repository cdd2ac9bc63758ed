#!/usr/bin/env python3
"""
Observers with a deliberately wrong frame-change convention

Their outputs are expected to disagree with the forward observer on generic
complex scenarios; ``negative_control_deviation`` in ``verification`` uses
them to show the frame checks can fail.
"""

import numpy as np

from .beta_observer import BetaObserver
from .gamma_observer import GammaObserver
from ..core import dagger, transpose
from ..models import LiftedOperator


class DaggerBetaObserver(BetaObserver):
    """Reverse frame using T_rho^dagger where T_rho^T belongs"""

    def _reverse_operator(self, lifted: LiftedOperator) -> np.ndarray:
        return dagger(lifted.mat)


class UntransposedGammaObserver(GammaObserver):
    """Space-like frame using T_rho itself instead of its partial transpose"""

    def _spacelike_state(self, lifted: LiftedOperator) -> np.ndarray:
        return lifted.mat


class TransposedEffectGammaObserver(GammaObserver):
    """Space-like frame with b_j^T on S2"""

    def _effect_b(self, b: np.ndarray) -> np.ndarray:
        return transpose(b)


NEGATIVE_CONTROLS = {
    "dagger-beta": DaggerBetaObserver,
    "untransposed-gamma": UntransposedGammaObserver,
    "transposed-effect-gamma": TransposedEffectGammaObserver,
}
