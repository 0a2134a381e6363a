"""Update rules for one outer iteration of the alternating solvers.

Both rules update W for fixed H first, then H for the updated W. Each half
step does not increase the Frobenius error.
"""

import numpy as np

# Added to numerator and denominator of the multiplicative updates
EPSILON = np.finfo(np.float64).eps


def multiplicative_update(x, w, h):
    """Perform one multiplicative update of W and H (Lee and Seung).

    Zero entries of the factors stay zero.

    Args:
        x (numpy.ndarray): The data matrix (n x p).
        w (numpy.ndarray): Current score matrix (n x k).
        h (numpy.ndarray): Current loadings matrix (k x p).

    Returns:
        tuple: The updated ``(w, h)``.

    """
    w = w * (x @ h.T + EPSILON) / (w @ (h @ h.T) + EPSILON)
    h = h * (w.T @ x + EPSILON) / ((w.T @ w) @ h + EPSILON)
    return w, h


def _projected_gradient(gram, cross, factor, steps):
    """Minimize ``0.5 tr(F^T G F) - tr(C^T F)`` over ``F >= 0``.

    Uses a fixed step ``1 / L`` with L the largest eigenvalue of the Gram
    matrix, which guarantees a non-increasing objective without line
    search.
    """
    lipschitz = np.linalg.eigvalsh(gram)[-1]
    if lipschitz <= 0:
        # The other factor is identically zero, nothing can be improved
        return factor

    for _ in range(steps):
        gradient = gram @ factor - cross
        factor = np.maximum(factor - gradient / lipschitz, 0.0)
    return factor


def projected_gradient_update(x, w, h, inner_iterations):
    """Perform one alternating projected gradient update of W and H.

    Args:
        x (numpy.ndarray): The data matrix (n x p).
        w (numpy.ndarray): Current score matrix (n x k).
        h (numpy.ndarray): Current loadings matrix (k x p).
        inner_iterations (int): Projected gradient steps per factor.

    Returns:
        tuple: The updated ``(w, h)``.

    """
    # The W subproblem is solved on the transposed system W^T
    w = _projected_gradient(h @ h.T, h @ x.T, w.T, inner_iterations).T
    h = _projected_gradient(w.T @ w, w.T @ x, h, inner_iterations)
    return w, h
