"""Implementation of the factor model object and its scaling operations.

A data matrix ``X`` (n samples x p responses) is approximated by the product
of a score matrix ``W`` (n x k) and a loadings matrix ``H`` (k x p). Every
sample is a non-negative weighted sum of the k archetypal profiles held in
the rows of ``H``.

All matrices are plain :class:`numpy.ndarray` objects of dtype float64.
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np


class ScalingScheme(Enum):
    """Enum to specify the normalization applied to the columns of W."""

    MAX_WEIGHT = "max"
    SUM_OF_SQUARES = "l2"
    NONE = "none"


def check_matrix(values, name="matrix", non_negative=True):
    """Validate a dense matrix and return it as float64 array.

    Args:
        values (array-like): The matrix entries (two-dimensional).
        name (str): Name of the matrix used in error messages. Defaults to
            "matrix".
        non_negative (bool): Whether negative entries should be rejected.
            Defaults to True.

    Returns:
        numpy.ndarray: A two-dimensional float64 array.

    Raises:
        ValueError: If the matrix is not two-dimensional, empty, contains
            non-finite entries or (if requested) negative entries.

    """
    matrix = np.asarray(values, dtype=np.float64)

    if matrix.ndim != 2:
        raise ValueError("{} must be two-dimensional, got {} "
                         "dimension(s)".format(name, matrix.ndim))
    if matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise ValueError("{} must have at least one row and one column, "
                         "got shape {}".format(name, matrix.shape))
    if not np.all(np.isfinite(matrix)):
        row, col = np.argwhere(~np.isfinite(matrix))[0]
        raise ValueError("{} contains a non-finite entry at ({}, {})".format(
            name, row, col))
    if non_negative and np.any(matrix < 0):
        row, col = np.argwhere(matrix < 0)[0]
        raise ValueError("{} contains a negative entry {} at ({}, {})".format(
            name, matrix[row, col], row, col))

    return matrix


@dataclass(frozen=True)
class FactorModel:
    """Represents a rank k factorization ``X ~ W H``.

    The object is immutable: operations like :func:`rescale` return a new
    model instead of changing the factors in place.

    Args:
        w (numpy.ndarray): Score matrix (n x k), non-negative.
        h (numpy.ndarray): Loadings matrix (k x p), non-negative.
        scaling (ScalingScheme): The scheme the columns of ``w`` currently
            satisfy. Defaults to ``ScalingScheme.NONE``.

    Raises:
        ValueError: If the factors are invalid or their inner dimensions
            do not agree.

    """

    w: np.ndarray
    h: np.ndarray
    scaling: ScalingScheme = ScalingScheme.NONE

    def __post_init__(self):
        """Validate the factors and freeze the underlying arrays."""
        w = check_matrix(self.w, "W").copy()
        h = check_matrix(self.h, "H").copy()

        if w.shape[1] != h.shape[0]:
            raise ValueError("Inner dimensions do not match: W is {}, H is "
                             "{}".format(w.shape, h.shape))

        # Read-only copies
        w.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, 'w', w)
        object.__setattr__(self, 'h', h)

    @property
    def rank(self):
        """Return the number of archetypes k."""
        return self.w.shape[1]

    @property
    def shape(self):
        """Return the shape (n, p) of the approximated data matrix."""
        return (self.w.shape[0], self.h.shape[1])

    def rank_one_part(self, component):
        """Return the n x p outer product of W column and H row ``component``.

        Args:
            component (int): The archetype index.

        Raises:
            ValueError: If the component index is out of range.

        """
        if not 0 <= component < self.rank:
            raise ValueError("Component {} out of range for rank {}".format(
                component, self.rank))
        return np.outer(self.w[:, component], self.h[component, :])

    def with_w(self, w):
        """Return a copy of the model with a replaced score matrix.

        The scaling tag is kept, callers that break the scheme are expected
        to rescale afterwards.
        """
        return FactorModel(w, self.h, self.scaling)


def reconstruct(model):
    """Return the n x p product ``W H`` of a factor model."""
    return model.w @ model.h


def frobenius_error(x, model):
    """Compute the Frobenius norm of ``X - W H``.

    Args:
        x (numpy.ndarray): The data matrix (n x p).
        model (FactorModel): The factorization.

    Returns:
        float: The (non-negative) approximation error.

    Raises:
        ValueError: If the shape of ``x`` does not match the model.

    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != model.shape:
        raise ValueError("Data shape {} does not match model shape "
                         "{}".format(x.shape, model.shape))
    return float(np.linalg.norm(x - reconstruct(model)))


def relative_error(x, model):
    """Compute the Frobenius error relative to the norm of ``x``.

    Returns 0 for an all-zero data matrix that is fitted exactly.
    """
    norm_x = float(np.linalg.norm(x))
    error = frobenius_error(x, model)
    if norm_x == 0:
        return 0.0 if error == 0 else np.inf
    return error / norm_x


def scaling_factors(w, scheme):
    """Return the diagonal entries of D for a given scheme.

    Zero columns of ``w`` get the factor 1, a dead archetype stays dead.

    Args:
        w (numpy.ndarray): The score matrix (n x k).
        scheme (ScalingScheme): The requested normalization.

    Returns:
        numpy.ndarray: The k positive diagonal entries.

    """
    if scheme is ScalingScheme.MAX_WEIGHT:
        factors = w.max(axis=0)
    elif scheme is ScalingScheme.SUM_OF_SQUARES:
        factors = np.linalg.norm(w, axis=0)
    else:
        factors = np.ones(w.shape[1])

    # Skip normalization of identically zero columns
    return np.where(factors > 0, factors, 1.0)


def rescale(model, scheme):
    """Rescale a model to ``(W D^-1)(D H)`` so W satisfies a scheme.

    The product ``W H`` (and thus the approximation error) is unchanged
    up to rounding.

    Args:
        model (FactorModel): The model to be rescaled.
        scheme (ScalingScheme): The target normalization of W's columns.

    Returns:
        FactorModel: The rescaled model tagged with ``scheme``.

    """
    factors = scaling_factors(model.w, scheme)

    # Dividing by the column maximum yields exactly 1.0 in floating point
    w = model.w / factors
    h = model.h * factors[:, np.newaxis]

    return FactorModel(w, h, scheme)
