"""Elastic distances and the clustering rules based on the score matrix.

The elastic distance of sample i to archetype u is the Euclidean distance
between the weight vector ``W[i, :]`` and the corner of archetype u, i.e.
the point with coordinate ``max_j W[j, u]`` on axis u and 0 elsewhere:

.. math::

    d_{iu}^2 = (w_{iu} - M_u)^2 + \\sum_{v \\neq u} w_{iv}^2

Samples are clustered either by their largest weight or by their smallest
elastic distance. Ties are broken in favour of the lowest archetype index.
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np
from permnmf.factor_model import check_matrix, rescale


class ClusterRule(Enum):
    """Enum to specify the clustering rule."""

    ARGMAX_WEIGHT = "weight"
    MIN_ELASTIC = "elastic"


@dataclass(frozen=True)
class ElasticDistances:
    """Holds the n x k elastic distances of a score matrix.

    Attributes:
        values (numpy.ndarray): Distance of every sample to every archetype
            corner (n x k).
        column_maxima (numpy.ndarray): The k column maxima of the score
            matrix the distances were computed from.

    """

    values: np.ndarray
    column_maxima: np.ndarray


@dataclass(frozen=True)
class ClusterAssignment:
    """Holds the archetype label of every sample.

    Attributes:
        labels (numpy.ndarray): n archetype indices in ``[0, k)``.
        rule (ClusterRule): The rule the labels were computed with.

    """

    labels: np.ndarray
    rule: ClusterRule


def archetype_corners(w):
    """Return the k x k matrix whose rows are the archetype corners."""
    return np.diag(w.max(axis=0))


def elastic_distances(w):
    """Compute the elastic distances of all samples to all archetypes.

    Args:
        w (array-like): The non-negative score matrix (n x k).

    Returns:
        ElasticDistances: The distances and the column maxima used.

    Raises:
        ValueError: If ``w`` is empty or invalid.

    """
    w = check_matrix(w, "W")
    corners = archetype_corners(w)

    # Broadcast samples (n x 1 x k) against corners (1 x k x k)
    offsets = w[:, np.newaxis, :] - corners[np.newaxis, :, :]
    values = np.sqrt(np.sum(offsets**2, axis=2))

    return ElasticDistances(values=values, column_maxima=corners.diagonal())


def cluster(w, rule):
    """Assign every sample to one archetype.

    Args:
        w (array-like): The non-negative score matrix (n x k).
        rule (ClusterRule): ``ARGMAX_WEIGHT`` selects the largest weight,
            ``MIN_ELASTIC`` the smallest elastic distance.

    Returns:
        ClusterAssignment: The labels (ties go to the lowest index).

    """
    rule = ClusterRule(rule)
    w = check_matrix(w, "W")

    # argmax/argmin return the first occurrence on ties
    if rule is ClusterRule.ARGMAX_WEIGHT:
        labels = np.argmax(w, axis=1)
    else:
        labels = np.argmin(elastic_distances(w).values, axis=1)

    return ClusterAssignment(labels=labels, rule=rule)


def weight_coordinates(model, scheme):
    """Return the score plot coordinates of a model under a scaling scheme.

    Args:
        model (FactorModel): The factorization.
        scheme (ScalingScheme): The scaling applied to W's columns.

    Returns:
        numpy.ndarray: The rescaled score matrix (n x k).

    """
    return np.array(rescale(model, scheme).w)
