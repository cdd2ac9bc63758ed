"""Causal Relativity Verification Engine

Checks numerically that observers assuming A-causes-B, B-causes-A or
space-like causal structure assign identical joint probabilities to the
same two-device quantum experiment.
"""

__version__ = "0.1.0"
__author__ = "slamer59"
__email__ = "your.email@example.com"
