"""Volume-based estimation of the factorization rank.

For a factorization of rank k, the matrix Z has one column per component:
the rank-one part ``W[:, u] H[u, :]``, reshaped into a vector and
normalized. The volume is the determinant of the Gram matrix ``Z^T Z``; it
lies in [0, 1] and approaches 0 when components become collinear.

The volume remains stable while the rank is below the true number of
archetypes and drops sharply once it exceeds it. :func:`scan` fits one
model per candidate rank and suggests the rank preceding the first sharp
drop (scree criterion).

On noisy data a surplus component does not vanish, it fits a small share
of the noise with an arbitrary support and leaves the volume high. The scan
therefore treats a component whose rank-one part holds less than
``min_share`` of the Frobenius norm of X as dead, which gives the rank a
volume of 0 like an identically zero component.

.. note::

    The columns of Z are the rank-one parts of a single factorization, not
    the approximations obtained with 1..k components. The latter cannot be
    selected here.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import Tuple
import numpy as np
from tqdm import tqdm
from permnmf.factor_model import check_matrix
from permnmf.permute import permuted_fit
from permnmf.solver import SolverConfig, fit

logger = logging.getLogger(__name__)

# A drop ratio below this value flags the first over-fitted rank
DEFAULT_DROP_THRESHOLD = 0.1

# Volumes below this value are considered 0
VOLUME_FLOOR = 1e-14

# Components holding a smaller share of ||X|| are surplus in a scan
DEFAULT_MIN_SHARE = 0.05


class Output(Enum):
    """Enum to specify the output of a scan run."""

    NO_OUTPUT = 0
    TQDM = 1
    TEXTUAL = 2


class DegenerateComponentError(ArithmeticError):
    """A rank-one part of a factorization is identically zero.

    Args:
        component (int): Index of the dead component.
        message (str): Overrides the default message. Defaults to None.

    """

    def __init__(self, component, message=None):
        if message is None:
            message = ("Component {} of the factorization is identically "
                       "zero, its volume is undefined".format(component))
        super().__init__(message)
        self.component = component


class SurplusComponentError(DegenerateComponentError):
    """A rank-one part holds a negligible share of the data.

    Args:
        component (int): Index of the surplus component.
        share (float): ``||W[:, u] H[u, :]|| / ||X||`` of the component.

    """

    def __init__(self, component, share):
        super().__init__(
            component, "Component {} holds only {:.3g} of ||X||, it is "
            "surplus".format(component, share))
        self.share = share


@dataclass(frozen=True)
class VolumeReport:
    """Holds the result of a rank scan.

    Attributes:
        ranks (tuple): The candidate ranks in ascending order.
        volumes (tuple): ``det(Z^T Z)`` for every rank (0 if degenerate).
        drop_ratios (tuple): ``volumes[r] / volumes[r - 1]`` for every rank
            but the first.
        suggested_rank (int): The rank preceding the first sharp drop.
        errors (tuple): Final Frobenius error of the fit of every rank.
        drop_threshold (float): The threshold used for the suggestion.
        min_share (float): The share below which a component was surplus.

    """

    ranks: Tuple[int, ...]
    volumes: Tuple[float, ...]
    drop_ratios: Tuple[float, ...]
    suggested_rank: int
    errors: Tuple[float, ...]
    drop_threshold: float = DEFAULT_DROP_THRESHOLD
    min_share: float = DEFAULT_MIN_SHARE


def component_volume(model):
    """Compute the volume ``det(Z^T Z)`` of a factorization.

    The Gram matrix is assembled from the factors directly, as the inner
    product of two vectorized rank-one parts equals
    ``(w_u . w_v) (h_u . h_v)``.

    Args:
        model (FactorModel): The factorization.

    Returns:
        float: The volume in [0, 1].

    Raises:
        DegenerateComponentError: If a rank-one part is identically zero.

    """
    part_norms = (np.linalg.norm(model.w, axis=0) *
                  np.linalg.norm(model.h, axis=1))
    for component, part_norm in enumerate(part_norms):
        if part_norm == 0:
            raise DegenerateComponentError(component)

    gram = (model.w.T @ model.w) * (model.h @ model.h.T)
    gram = gram / np.outer(part_norms, part_norms)
    # Unit-norm columns by construction
    np.fill_diagonal(gram, 1.0)

    sign, logdet = np.linalg.slogdet(gram)
    if sign <= 0:
        return 0.0
    volume = float(np.exp(logdet))
    if volume < VOLUME_FLOOR:
        return 0.0
    return min(volume, 1.0)


def component_shares(x, model):
    """Return ``||W[:, u] H[u, :]||_F / ||X||_F`` for every component.

    The shares do not depend on how the columns of W are scaled.
    """
    x_norm = np.linalg.norm(x)
    part_norms = (np.linalg.norm(model.w, axis=0) *
                  np.linalg.norm(model.h, axis=1))
    if x_norm == 0:
        return np.zeros_like(part_norms)
    return part_norms / x_norm


def scan_volume(x, model, min_share=DEFAULT_MIN_SHARE):
    """Compute the volume of a fit, rejecting surplus components.

    Args:
        x (np.ndarray): The data matrix the model was fitted to.
        model (FactorModel): The factorization.
        min_share (float): Components below this share of ``||X||`` are
            surplus. 0 disables the check.

    Returns:
        float: The volume in [0, 1].

    Raises:
        DegenerateComponentError: If a rank-one part is identically zero
            or surplus (:class:`SurplusComponentError`).

    """
    if min_share > 0:
        for component, share in enumerate(component_shares(x, model)):
            if 0 < share < min_share:
                raise SurplusComponentError(component, share)
    return component_volume(model)


def drop_ratios(volumes):
    """Return ``volumes[r] / volumes[r - 1]`` for all but the first rank.

    A ratio following a zero volume is reported as 0.
    """
    ratios = list()
    for previous, current in zip(volumes[:-1], volumes[1:]):
        ratios.append(current / previous if previous > 0 else 0.0)
    return ratios


def suggest_rank(ranks, volumes, drop_threshold=DEFAULT_DROP_THRESHOLD):
    """Suggest the largest rank before the first sharp volume drop.

    Args:
        ranks (list): The candidate ranks in ascending order.
        volumes (list): The matching volumes.
        drop_threshold (float): Ratios below this value flag an over-fitted
            rank. Defaults to 0.1.

    Returns:
        int: The rank preceding the first flagged rank, or the largest rank
        if no rank is flagged.

    """
    for index, ratio in enumerate(drop_ratios(volumes)):
        if ratio < drop_threshold:
            return ranks[index]
    return ranks[-1]


def _fit_rank(task):
    """Fit one candidate rank and compute its volume (Pool worker)."""
    x, rank, solver_config, permute_config, min_share = task

    if permute_config is not None:
        report = permuted_fit(x, rank, solver_config, permute_config)
    else:
        report = fit(x, rank, solver_config)

    try:
        volume = scan_volume(x, report.model, min_share)
    except DegenerateComponentError as error:
        logger.warning("Rank %d: %s, volume recorded as 0", rank, error)
        volume = 0.0

    return rank, volume, report.final_error


def scan(x,
         rank_min,
         rank_max,
         solver_config=None,
         permute_config=None,
         drop_threshold=DEFAULT_DROP_THRESHOLD,
         processes=None,
         output=Output.NO_OUTPUT,
         min_share=DEFAULT_MIN_SHARE):
    """Fit every rank in ``[rank_min, rank_max]`` and compute its volume.

    A rank whose fit has a dead or surplus component (see
    :func:`scan_volume`) is recorded with volume 0.

    Args:
        x (array-like): The non-negative data matrix (n x p).
        rank_min (int): The smallest candidate rank.
        rank_max (int): The largest candidate rank.
        solver_config (SolverConfig): The settings used for every rank
            (same seed for every rank). Defaults to ``SolverConfig()``.
        permute_config (PermuteConfig): If provided, permuted fits are used.
            Defaults to None.
        drop_threshold (float): Threshold of the rank suggestion. Defaults
            to 0.1.
        processes (int): Number of worker processes. The ranks are fitted
            in the calling process if None or 1. Defaults to None.
        output (Output): Specify if and how the progress of the scan should
            be presented to the user. Defaults to no output.
        min_share (float): Share of ``||X||`` below which a component is
            surplus. 0 disables the check. Defaults to 0.05.

    Returns:
        VolumeReport: The volumes (in rank order) and the suggested rank.

    Raises:
        ValueError: If the rank range or ``min_share`` is invalid.

    """
    x = check_matrix(x, "X")
    if solver_config is None:
        solver_config = SolverConfig()

    if not 1 <= rank_min <= rank_max <= min(x.shape):
        raise ValueError("Invalid rank range [{}, {}], must satisfy 1 <= "
                         "rank_min <= rank_max <= {}".format(
                             rank_min, rank_max, min(x.shape)))
    if not 0 <= min_share < 1:
        raise ValueError("min_share must lie in [0, 1), got {}".format(
            min_share))

    tasks = [(x, rank, solver_config, permute_config, min_share)
             for rank in range(rank_min, rank_max + 1)]

    if processes is not None and processes > 1:
        with Pool(processes) as pool:
            # imap keeps the rank order regardless of completion order
            results = list(_track(pool.imap(_fit_rank, tasks), len(tasks),
                                  output))
    else:
        results = list(_track(map(_fit_rank, tasks), len(tasks), output))

    ranks = [rank for rank, _, _ in results]
    volumes = [volume for _, volume, _ in results]
    errors = [error for _, _, error in results]

    report = VolumeReport(
        ranks=tuple(ranks),
        volumes=tuple(volumes),
        drop_ratios=tuple(drop_ratios(volumes)),
        suggested_rank=suggest_rank(ranks, volumes, drop_threshold),
        errors=tuple(errors),
        drop_threshold=drop_threshold,
        min_share=min_share)

    logger.info("Rank scan [%d, %d] suggests rank %d", rank_min, rank_max,
                report.suggested_rank)
    return report


def _track(results, total, output):
    """Present the progress of the scan according to ``output``."""
    if output == Output.TQDM:
        yield from tqdm(results, total=total, desc="rank scan")
    elif output == Output.TEXTUAL:
        for done, result in enumerate(results, start=1):
            print("Rank {} done ({}/{})".format(result[0], done, total))
            yield result
    else:
        yield from results
