"""Configuration objects of the alternating NMF solvers."""

from dataclasses import dataclass
from enum import Enum


class Initialization(Enum):
    """Enum to specify how the factors are initialized."""

    RANDOM_UNIFORM = "random"
    NNDSVD = "nndsvd"


class Algorithm(Enum):
    """Enum to specify the update rule of an outer iteration."""

    MULTIPLICATIVE_UPDATES = "mu"
    PROJECTED_GRADIENT_ALS = "pgals"


@dataclass(frozen=True)
class SolverConfig:
    """Holds the settings of a fit.

    Args:
        max_outer_iterations (int): Maximum number of outer iterations (one
            W update plus one H update each). Defaults to 500.
        tolerance (float): Convergence threshold on the relative change of
            the Frobenius error between two outer iterations. Defaults to
            1e-6.
        seed (int): Seed of the random initialization. Defaults to 42.
        init (Initialization): Initialization method. Defaults to
            ``Initialization.RANDOM_UNIFORM``.
        algorithm (Algorithm): Update rule. Defaults to
            ``Algorithm.MULTIPLICATIVE_UPDATES``.
        inner_iterations (int): Number of projected gradient steps per
            factor and outer iteration (only used by
            ``Algorithm.PROJECTED_GRADIENT_ALS``). Defaults to 10.

    Raises:
        ValueError: If one of the values is out of range.

    """

    max_outer_iterations: int = 500
    tolerance: float = 1e-6
    seed: int = 42
    init: Initialization = Initialization.RANDOM_UNIFORM
    algorithm: Algorithm = Algorithm.MULTIPLICATIVE_UPDATES
    inner_iterations: int = 10

    def __post_init__(self):
        """Check the configured values."""
        if self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be >= 1, got "
                             "{}".format(self.max_outer_iterations))
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0, got {}".format(
                self.tolerance))
        if self.inner_iterations < 1:
            raise ValueError("inner_iterations must be >= 1, got "
                             "{}".format(self.inner_iterations))
        # Accept the plain string values as well (e.g. from the CLI)
        object.__setattr__(self, 'init', Initialization(self.init))
        object.__setattr__(self, 'algorithm', Algorithm(self.algorithm))
