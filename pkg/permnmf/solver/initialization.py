"""Algorithms for the initialization of the factors W and H.

Two methods are provided:

Random uniform:
    Entries are drawn from (0, 1] and scaled with ``sqrt(mean(X) / k)`` so
    that ``W H`` has the magnitude of the data.

NNDSVD:
    Non-negative double singular value decomposition. The leading singular
    triplet is used as is (in absolute value), every further triplet is
    split into its positive and negative parts and the dominating part is
    kept. Entries below 1e-6 are truncated to zero.

    .. seealso::

        C. Boutsidis, E. Gallopoulos: SVD based initialization: A head start
        for nonnegative matrix factorization - Pattern Recognition, 2008
"""

import logging
import numpy as np
from permnmf.factor_model import FactorModel, check_matrix
from .config import Initialization

logger = logging.getLogger(__name__)

# Entries of the NNDSVD factors below this value are set to zero
NNDSVD_TRUNCATION = 1e-6


def check_rank(x, rank):
    """Verify that ``1 <= rank <= min(n, p)``.

    Raises:
        ValueError: If the rank is out of range.

    """
    n_samples, n_responses = x.shape
    if isinstance(rank, bool) or int(rank) != rank:
        raise ValueError("rank must be an integer, got {!r}".format(rank))
    if not 1 <= rank <= min(n_samples, n_responses):
        raise ValueError("rank must be between 1 and min(n, p) = {}, got "
                         "{}".format(min(n_samples, n_responses), rank))


def _random_uniform(x, rank, seed):
    """Draw strictly positive factors from a seeded generator."""
    n_samples, n_responses = x.shape
    rng = np.random.default_rng(seed)

    mean = x.mean()
    scale = np.sqrt(mean / rank) if mean > 0 else 1.0

    # 1 - U[0, 1) lies in (0, 1], thus no entry is locked at zero
    w = scale * (1.0 - rng.random((n_samples, rank)))
    h = scale * (1.0 - rng.random((rank, n_responses)))
    return w, h


def _nndsvd(x, rank):
    """Compute the NNDSVD factors (deterministic, zeros are kept)."""
    u_mat, sigma, v_mat = np.linalg.svd(x, full_matrices=False)
    w = np.zeros((x.shape[0], rank))
    h = np.zeros((rank, x.shape[1]))

    # The leading singular triplet is non-negative (up to its sign)
    w[:, 0] = np.sqrt(sigma[0]) * np.abs(u_mat[:, 0])
    h[0, :] = np.sqrt(sigma[0]) * np.abs(v_mat[0, :])

    for j in range(1, rank):
        left, right = u_mat[:, j], v_mat[j, :]

        # Extract positive and negative parts of the singular vectors
        left_p, right_p = np.maximum(left, 0), np.maximum(right, 0)
        left_n, right_n = np.abs(np.minimum(left, 0)), np.abs(
            np.minimum(right, 0))

        # And their norms
        left_p_nrm, right_p_nrm = np.linalg.norm(left_p), np.linalg.norm(
            right_p)
        left_n_nrm, right_n_nrm = np.linalg.norm(left_n), np.linalg.norm(
            right_n)

        m_p, m_n = left_p_nrm * right_p_nrm, left_n_nrm * right_n_nrm

        # Keep the dominating part
        if m_p > m_n:
            left_part, right_part, weight = (left_p / left_p_nrm,
                                             right_p / right_p_nrm, m_p)
        elif m_n > 0:
            left_part, right_part, weight = (left_n / left_n_nrm,
                                             right_n / right_n_nrm, m_n)
        else:
            # Both parts vanish, the component starts (and stays) at zero
            continue

        scale = np.sqrt(sigma[j] * weight)
        w[:, j] = scale * left_part
        h[j, :] = scale * right_part

    w[w < NNDSVD_TRUNCATION] = 0
    h[h < NNDSVD_TRUNCATION] = 0
    return w, h


def init_factors(x, rank, config):
    """Compute an initial factor model for ``X ~ W H``.

    Args:
        x (numpy.ndarray): The non-negative data matrix (n x p).
        rank (int): The number of archetypes k.
        config (SolverConfig): Provides the initialization method and the
            seed.

    Returns:
        FactorModel: The initial model (deterministic for a given seed).

    Raises:
        ValueError: If the rank is out of range or ``x`` is invalid.

    """
    x = check_matrix(x, "X")
    check_rank(x, rank)

    if config.init is Initialization.NNDSVD:
        w, h = _nndsvd(x, rank)
    else:
        w, h = _random_uniform(x, rank, config.seed)

    logger.debug("Initialized rank %d factors with method '%s'", rank,
                 config.init.value)
    return FactorModel(w, h)
