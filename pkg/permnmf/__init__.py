"""Non-negative matrix factorization with a permutation step on W."""

__version__ = "0.1.0"

from .factor_model import FactorModel, ScalingScheme, rescale
from .elastic import ClusterRule, cluster, elastic_distances
from .permute import PermuteConfig, permuted_fit
from .rank_scan import VolumeReport, component_volume, scan
from .solver import SolverConfig, fit
from .synth import SynthSpec, generate
