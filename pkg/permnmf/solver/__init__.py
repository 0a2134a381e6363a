"""Alternating NMF solvers (multiplicative updates, projected gradient)."""

from .config import Algorithm, Initialization, SolverConfig
from .initialization import init_factors
from .nmf_solver import FitReport, fit, update_step
