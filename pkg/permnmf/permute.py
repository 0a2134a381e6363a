"""Permutation step reconciling weight ranks and elastic distance ranks.

For every component u, the weights of column u of W are reassigned so that
the sample with the largest elastic distance to archetype u receives the
smallest weight on u, the sample with the second largest distance the
second smallest weight and so on. Permuting one column changes the elastic
distances of all components, therefore the components are processed one
after the other (a sweep) and sweeps are repeated until W does not change
anymore or the maximal number of sweeps has been reached.

Applied after every iteration of a standard solver (see
:class:`PermutationHook` and :func:`permuted_fit`), the step keeps the
clustering by largest weight consistent with the clustering by smallest
elastic distance, which indirectly reduces the volume of W.

.. note::

    No convergence guarantee exists for more than two components: the
    permutations of different components can undo each other. The sweep
    cap bounds the work in that case.
"""

import dataclasses
import logging
from collections import namedtuple
from dataclasses import dataclass
import numpy as np
from permnmf.elastic import elastic_distances
from permnmf.factor_model import ScalingScheme, check_matrix, rescale
from permnmf.monitors import MonitorNotifier
from permnmf.solver import fit

logger = logging.getLogger(__name__)

SweepResult = namedtuple('SweepResult', ['w', 'changed'])

StabilizeResult = namedtuple('StabilizeResult',
                             ['w', 'sweeps_run', 'stabilized'])


@dataclass(frozen=True)
class PermuteConfig:
    """Holds the settings of the permutation step.

    Args:
        max_sweeps (int): Maximal number of sweeps per stabilization.
            Defaults to 50.
        applied_per_solver_iteration (bool): If True, W is stabilized after
            every (``every``-th) solver iteration. If False, the fit runs
            without permutations and W is stabilized once at the end.
            Defaults to True.
        every (int): Apply the stabilization every ``every`` solver
            iterations. Defaults to 1.

    Raises:
        ValueError: If one of the counts is smaller than 1.

    """

    max_sweeps: int = 50
    applied_per_solver_iteration: bool = True
    every: int = 1

    def __post_init__(self):
        """Check the configured values."""
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1, got {}".format(
                self.max_sweeps))
        if self.every < 1:
            raise ValueError("every must be >= 1, got {}".format(self.every))


def reconcile_column(column, distances):
    """Reassign the weights of one column against its elastic distances.

    The weights sorted in ascending order are assigned to the samples
    sorted by descending distance. Equal distances are ordered by ascending
    current weight (then by index), so tied samples keep their weights.

    Args:
        column (numpy.ndarray): The n weights of one component.
        distances (numpy.ndarray): The n elastic distances to the same
            component.

    Returns:
        numpy.ndarray: A permutation of ``column``.

    """
    column = np.asarray(column, dtype=np.float64)
    distances = np.asarray(distances, dtype=np.float64)
    if column.shape != distances.shape or column.ndim != 1:
        raise ValueError("Column and distances must be vectors of equal "
                         "length, got {} and {}".format(
                             column.shape, distances.shape))

    ascending_weights = np.sort(column, kind='stable')

    # lexsort uses the last key as primary key and is stable
    descending_distance = np.lexsort(
        (np.arange(column.size), column, -distances))

    permuted = np.empty_like(column)
    permuted[descending_distance] = ascending_weights
    return permuted


def permute_component(w, component):
    """Permute column ``component`` of W against its elastic distances.

    Args:
        w (array-like): The non-negative score matrix (n x k).
        component (int): The archetype index u.

    Returns:
        numpy.ndarray: A copy of W where only column u was permuted.

    Raises:
        ValueError: If the component index is out of range.

    """
    w = check_matrix(w, "W")
    if not 0 <= component < w.shape[1]:
        raise ValueError("Component {} out of range for rank {}".format(
            component, w.shape[1]))

    distances = elastic_distances(w).values[:, component]

    permuted = w.copy()
    permuted[:, component] = reconcile_column(w[:, component], distances)
    return permuted


def permutation_sweep(w):
    """Permute all components once, in ascending order.

    The elastic distances are recomputed after every component.

    Args:
        w (array-like): The non-negative score matrix (n x k).

    Returns:
        SweepResult: The permuted matrix and whether any entry moved.

    """
    original = check_matrix(w, "W")

    permuted = original
    for component in range(original.shape[1]):
        permuted = permute_component(permuted, component)

    return SweepResult(
        w=permuted, changed=not np.array_equal(permuted, original))


def stabilize(w, config=None):
    """Repeat permutation sweeps until W does not change anymore.

    Args:
        w (array-like): The non-negative score matrix (n x k).
        config (PermuteConfig): Provides the sweep cap. Defaults to
            ``PermuteConfig()``.

    Returns:
        StabilizeResult: The matrix, the number of sweeps run and whether
        a sweep without changes occurred.

    """
    if config is None:
        config = PermuteConfig()

    current = check_matrix(w, "W")
    for sweep in range(1, config.max_sweeps + 1):
        current, changed = permutation_sweep(current)
        if not changed:
            return StabilizeResult(current, sweep, True)

    logger.debug("W not stabilized after %d sweeps", config.max_sweeps)
    return StabilizeResult(current, config.max_sweeps, False)


class PermutationHook:
    """Solver hook applying :func:`stabilize` to W.

    H is never modified. Every application is recorded in
    ``sweep_trace`` and ``stabilized_trace``.

    Args:
        config (PermuteConfig): The permutation settings. Defaults to
            ``PermuteConfig()``.
        monitor (BaseMonitor): Optional monitor notified after every
            application. Defaults to None.

    """

    def __init__(self, config=None, monitor=None):
        self.config = config if config is not None else PermuteConfig()
        self.notifier = MonitorNotifier(
            [monitor] if monitor is not None else [])
        self.calls = 0
        self.sweep_trace = list()
        self.stabilized_trace = list()

    def __call__(self, model):
        """Stabilize W on every ``config.every``-th call."""
        self.calls += 1
        if self.calls % self.config.every != 0:
            return model
        return self.apply(model)

    def apply(self, model):
        """Return the model with a stabilized score matrix."""
        result = stabilize(model.w, self.config)
        self.sweep_trace.append(result.sweeps_run)
        self.stabilized_trace.append(result.stabilized)
        self.notifier.permutation_applied(result.sweeps_run,
                                          result.stabilized)

        return model.with_w(result.w)


def permuted_fit(x, rank, solver_config=None, permute_config=None,
                 monitor=None):
    """Fit a factorization with the permutation step applied to W.

    Args:
        x (array-like): The non-negative data matrix (n x p).
        rank (int): The number of archetypes k.
        solver_config (SolverConfig): The solver settings. Defaults to
            ``SolverConfig()``.
        permute_config (PermuteConfig): The permutation settings. Defaults
            to ``PermuteConfig()``.
        monitor (BaseMonitor): Optional monitor of the fit. Defaults to
            None.

    Returns:
        FitReport: The report (final model in MaxWeight scaling) including
        the sweep counts of every permutation step.

    """
    hook = PermutationHook(permute_config, monitor)

    if hook.config.applied_per_solver_iteration:
        report = fit(x, rank, solver_config, hook=hook, monitor=monitor)
        model = report.model
    else:
        # Plain fit, then one stabilization of the converged W
        report = fit(x, rank, solver_config, monitor=monitor)
        model = hook.apply(report.model)

    stabilized = all(hook.stabilized_trace)
    logger.info("Permuted rank %d fit: %d permutation steps, %s", rank,
                len(hook.sweep_trace),
                "all stabilized" if stabilized else "sweep cap reached")

    return dataclasses.replace(
        report,
        model=rescale(model, ScalingScheme.MAX_WEIGHT),
        sweep_trace=tuple(hook.sweep_trace),
        stabilized_trace=tuple(hook.stabilized_trace))
