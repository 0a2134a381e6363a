"""Baseline alternating NMF solver with a pluggable post-iteration hook.

The module has one main routine:

Fit Routine:
    :func:`fit` initializes the factors and repeats outer iterations until
    the relative change of the Frobenius error drops below the tolerance or
    the iteration cap is reached. After every outer iteration an optional
    hook may transform the model (e.g. the permutation step of
    :mod:`permnmf.permute`). As a hook can increase the error, the
    iteration cap always terminates the loop.
"""

import logging
from dataclasses import dataclass
from typing import Tuple
import numpy as np
from permnmf.factor_model import (FactorModel, ScalingScheme, check_matrix,
                                  frobenius_error, rescale)
from permnmf.monitors import MonitorNotifier
from .config import Algorithm, SolverConfig
from .initialization import init_factors
from .update_rules import multiplicative_update, projected_gradient_update

logger = logging.getLogger(__name__)

# Errors below this fraction of ||X|| are considered an exact fit
EXACT_FIT = 1e-14


@dataclass(frozen=True)
class FitReport:
    """Holds the outcome of a fit.

    Attributes:
        model (FactorModel): The final model, rescaled to MaxWeight.
        iterations_run (int): Number of outer iterations performed.
        error_trace (tuple): Frobenius error after every outer iteration.
        converged (bool): Whether the tolerance criterion was met.
        sweep_trace (tuple): Number of permutation sweeps for every
            application of the permutation step (empty without it).
        stabilized_trace (tuple): Whether W stabilized for every application
            of the permutation step (empty without it).

    """

    model: FactorModel
    iterations_run: int
    error_trace: Tuple[float, ...]
    converged: bool
    sweep_trace: Tuple[int, ...] = ()
    stabilized_trace: Tuple[bool, ...] = ()

    @property
    def final_error(self):
        """Return the last recorded error (or NaN if nothing was run)."""
        return self.error_trace[-1] if self.error_trace else float('nan')


def update_step(x, model, config):
    """Perform one outer iteration (W update, then H update).

    Args:
        x (numpy.ndarray): The data matrix (n x p).
        model (FactorModel): The current model.
        config (SolverConfig): Provides the update rule.

    Returns:
        FactorModel: The updated (non-negative) model.

    Raises:
        ValueError: If the data shape does not match the model.

    """
    if x.shape != model.shape:
        raise ValueError("Data shape {} does not match model shape "
                         "{}".format(x.shape, model.shape))

    if config.algorithm is Algorithm.PROJECTED_GRADIENT_ALS:
        w, h = projected_gradient_update(x, model.w, model.h,
                                         config.inner_iterations)
    else:
        w, h = multiplicative_update(x, model.w, model.h)

    return FactorModel(w, h)


def _has_converged(previous, error, norm_x, tolerance):
    """Check the relative change criterion (and exact fits)."""
    if error <= EXACT_FIT * norm_x:
        return True
    return abs(previous - error) <= tolerance * previous


def fit(x, rank, config=None, hook=None, monitor=None):
    """Fit a rank k factorization of ``X``.

    Args:
        x (array-like): The non-negative data matrix (n x p).
        rank (int): The number of archetypes k.
        config (SolverConfig): The solver settings. Defaults to
            ``SolverConfig()``.
        hook (callable): Optional transform ``FactorModel -> FactorModel``
            applied after every outer iteration. Defaults to None.
        monitor (BaseMonitor): Optional monitor that is notified about the
            progress of the fit. Defaults to None.

    Returns:
        FitReport: The report holding the final model (MaxWeight scaling).

    Raises:
        ValueError: If the rank is out of range or ``x`` is invalid.
        FloatingPointError: If the error becomes non-finite.

    """
    if config is None:
        config = SolverConfig()

    x = check_matrix(x, "X")
    model = init_factors(x, rank, config)

    notifier = MonitorNotifier([monitor] if monitor is not None else [])
    notifier.fit_started(x, rank, config)

    norm_x = float(np.linalg.norm(x))
    previous = frobenius_error(x, model)
    error_trace = list()
    converged = False

    for iteration in range(1, config.max_outer_iterations + 1):
        model = update_step(x, model, config)
        if hook is not None:
            model = hook(model)

        error = frobenius_error(x, model)
        if not np.isfinite(error):
            raise FloatingPointError("Error became non-finite in iteration "
                                     "{}".format(iteration))
        error_trace.append(error)
        notifier.iteration_completed(iteration, model, error)
        logger.debug("Iteration %d: error %.6g", iteration, error)

        if _has_converged(previous, error, norm_x, config.tolerance):
            converged = True
            break
        previous = error

    if converged:
        logger.info("Rank %d fit converged after %d iterations (error "
                    "%.6g)", rank, len(error_trace), error_trace[-1])
    else:
        logger.warning("Rank %d fit stopped at the iteration cap (%d) "
                       "without converging", rank, len(error_trace))

    report = FitReport(
        model=rescale(model, ScalingScheme.MAX_WEIGHT),
        iterations_run=len(error_trace),
        error_trace=tuple(error_trace),
        converged=converged)
    notifier.fit_ended(report)

    return report
