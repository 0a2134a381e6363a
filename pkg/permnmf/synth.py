"""Generator of synthetic data with known archetypes.

Every archetype u shifts its own set of variables by a constant
``shift`` > 0 and leaves all other variables at 0. Variable sets of
distinct archetypes are disjoint (perfect separability). A pure sample of
group u is the profile of archetype u, a mixed sample is a non-negative
combination of profiles. Optional Gaussian noise is added and the result
is clamped at 0.

Under these assumptions the oracle coordinates of a sample are the sums of
each variable set, normalized by the set size and its shift. Pure samples
map to the corners (1, 0, ...), (0, 1, ...) and so on.

Synth specs can be loaded from JSON files, for instance::

    {
        "archetypes": [
            {"num_specific_vars": 10, "shift": 2.0},
            {"num_specific_vars": 5, "shift": 3.0}
        ],
        "samples_per_group": [20, 10],
        "mixing": [[0.5, 0.5]],
        "noise_sigma": 0.01,
        "seed": 7
    }
"""

import dataclasses
import json
import logging
from dataclasses import dataclass
from typing import Optional, Tuple
import numpy as np
from jsonschema import validate
from permnmf.factor_model import check_matrix

logger = logging.getLogger(__name__)

# The schema of the synth spec JSON files that is validated
SYNTH_SPEC_SCHEMA = {
    "type": "object",
    "properties": {
        "archetypes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "num_specific_vars": {
                        "type": "integer",
                        "minimum": 1
                    },
                    "shift": {
                        "type": "number"
                    },
                    "variables": {
                        "type": "array",
                        "items": {
                            "type": "integer",
                            "minimum": 0
                        }
                    }
                },
                "required": ["num_specific_vars", "shift"],
                "additionalProperties": False
            }
        },
        "samples_per_group": {
            "oneOf": [{
                "type": "integer",
                "minimum": 0
            }, {
                "type": "array",
                "items": {
                    "type": "integer",
                    "minimum": 0
                }
            }]
        },
        "mixing": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "number"
                }
            }
        },
        "noise_sigma": {
            "type": "number",
            "minimum": 0
        },
        "seed": {
            "type": "integer"
        }
    },
    "required": ["archetypes", "samples_per_group"],
    "additionalProperties": False
}


@dataclass(frozen=True)
class Archetype:
    """Describes one archetype of a synthetic dataset.

    Args:
        num_specific_vars (int): Number of variables shifted by the
            archetype.
        shift (float): The constant shift, must be > 0.
        variables (tuple): Optional explicit indices of the shifted
            variables. Defaults to a contiguous block following the
            previous archetype.

    """

    num_specific_vars: int
    shift: float
    variables: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        """Check the configured values."""
        if self.num_specific_vars < 1:
            raise ValueError("num_specific_vars must be >= 1, got {}".format(
                self.num_specific_vars))
        if not self.shift > 0:
            raise ValueError("shift must be > 0, got {}".format(self.shift))
        if self.variables is not None:
            variables = tuple(int(index) for index in self.variables)
            if len(variables) != self.num_specific_vars:
                raise ValueError(
                    "Archetype lists {} variables but num_specific_vars is "
                    "{}".format(len(variables), self.num_specific_vars))
            object.__setattr__(self, 'variables', variables)


@dataclass(frozen=True)
class SynthSpec:
    """Holds the description of a synthetic dataset.

    Args:
        archetypes (tuple): The archetypes (:class:`Archetype` objects or
            dicts with the same fields).
        samples_per_group (int or tuple): Number of pure samples per
            archetype, either one count for all or one count per archetype.
        mixing (tuple): Additional samples given by their weight rows (one
            weight per archetype). Defaults to no mixed samples.
        noise_sigma (float): Standard deviation of the additive Gaussian
            noise. Defaults to 0.
        seed (int): Seed of the noise generator. Defaults to 42.

    Raises:
        ValueError: If the spec is inconsistent (e.g. overlapping variable
            sets).

    """

    archetypes: Tuple[Archetype, ...]
    samples_per_group: Tuple[int, ...]
    mixing: Tuple[Tuple[float, ...], ...] = ()
    noise_sigma: float = 0.0
    seed: int = 42

    def __post_init__(self):
        """Normalize and check the configured values."""
        archetypes = tuple(
            archetype if isinstance(archetype, Archetype) else
            Archetype(**archetype) for archetype in self.archetypes)
        if not archetypes:
            raise ValueError("A synth spec needs at least one archetype")
        object.__setattr__(self, 'archetypes', archetypes)

        if isinstance(self.samples_per_group, (int, np.integer)):
            sizes = (int(self.samples_per_group), ) * len(archetypes)
        else:
            sizes = tuple(int(size) for size in self.samples_per_group)
        if len(sizes) != len(archetypes):
            raise ValueError("samples_per_group lists {} counts for {} "
                             "archetypes".format(len(sizes), len(archetypes)))
        if any(size < 0 for size in sizes):
            raise ValueError("samples_per_group must be >= 0, got "
                             "{}".format(sizes))
        object.__setattr__(self, 'samples_per_group', sizes)

        mixing = tuple(tuple(float(weight) for weight in row)
                       for row in self.mixing)
        for index, row in enumerate(mixing):
            if len(row) != len(archetypes):
                raise ValueError("Mixing row {} has {} weights for {} "
                                 "archetypes".format(index, len(row),
                                                     len(archetypes)))
            if not all(np.isfinite(row)) or min(row) < 0:
                raise ValueError("Mixing row {} must be finite and "
                                 "non-negative, got {}".format(index, row))
        object.__setattr__(self, 'mixing', mixing)

        if sum(sizes) + len(mixing) == 0:
            raise ValueError("A synth spec needs at least one sample")
        if not self.noise_sigma >= 0:
            raise ValueError("noise_sigma must be >= 0, got {}".format(
                self.noise_sigma))

        # Raises for overlapping or incomplete layouts
        self.variable_sets()

    @property
    def rank(self):
        """Return the number of archetypes."""
        return len(self.archetypes)

    @property
    def total_variables(self):
        """Return the number of variables of the dataset."""
        return sum(archetype.num_specific_vars
                   for archetype in self.archetypes)

    @property
    def total_samples(self):
        """Return the number of samples of the dataset."""
        return sum(self.samples_per_group) + len(self.mixing)

    def variable_sets(self):
        """Return the variable indices of every archetype.

        Returns:
            list: One sorted integer array per archetype.

        Raises:
            ValueError: If two archetypes share a variable or the variable
                sets do not cover ``0 .. total_variables - 1``.

        """
        sets = list()
        offset = 0
        for archetype in self.archetypes:
            if archetype.variables is None:
                indices = np.arange(offset, offset + archetype.num_specific_vars)
            else:
                indices = np.array(sorted(archetype.variables), dtype=int)
            offset += archetype.num_specific_vars
            sets.append(indices)

        seen = dict()
        for component, indices in enumerate(sets):
            for index in indices:
                if index in seen:
                    raise ValueError(
                        "Variable {} is shared by archetypes {} and {}, the "
                        "variable sets must be disjoint".format(
                            index, seen[index], component))
                seen[int(index)] = component

        if set(seen) != set(range(self.total_variables)):
            raise ValueError("The variable sets must cover the variables 0 "
                             "to {}".format(self.total_variables - 1))
        return sets

    def to_dict(self):
        """Return a JSON-compatible representation of the spec."""
        data = dataclasses.asdict(self)
        for archetype in data['archetypes']:
            if archetype['variables'] is None:
                del archetype['variables']
        return json.loads(json.dumps(data))


@dataclass(frozen=True)
class SynthDataset:
    """Holds a generated dataset and its ground truth.

    Attributes:
        x (numpy.ndarray): The data matrix (n x p).
        true_labels (numpy.ndarray): The group index of every sample.
        true_w (numpy.ndarray): The ground-truth weights (n x k).
        true_h (numpy.ndarray): The ground-truth archetype profiles (k x p).
        sample_ids (tuple): ``s0``, ``s1``, ...
        variable_names (tuple): ``v0``, ``v1``, ...

    """

    x: np.ndarray
    true_labels: np.ndarray
    true_w: np.ndarray
    true_h: np.ndarray
    sample_ids: Tuple[str, ...]
    variable_names: Tuple[str, ...]


def load_synth_spec(json_source_file=None, json_str=None):
    """Load a synth spec from a JSON file or string.

    Args:
        json_source_file (str): The path to a JSON file. Defaults to None.
        json_str (str): A string containing the JSON document. Defaults to
            None.

    Returns:
        SynthSpec: The validated spec.

    Raises:
        ValueError: If none or both sources are provided, or the spec is
            inconsistent.
        ValidationError: If the document does not adhere to the schema.

    """
    if (json_source_file is None) == (json_str is None):
        raise ValueError("Provide either a JSON source file or a JSON string")

    if json_source_file is not None:
        with open(json_source_file, encoding='utf-8') as fds:
            data = json.load(fds)
    else:
        data = json.loads(json_str)

    validate(data, SYNTH_SPEC_SCHEMA)

    return SynthSpec(archetypes=data['archetypes'],
                     samples_per_group=data['samples_per_group'],
                     mixing=data.get('mixing', ()),
                     noise_sigma=data.get('noise_sigma', 0.0),
                     seed=data.get('seed', 42))


def generate(spec):
    """Generate a dataset following a synth spec.

    The pure samples come first (group after group), followed by the mixed
    samples in the order of ``spec.mixing``. The label of a mixed sample is
    its largest weight (lowest index on ties).

    Args:
        spec (SynthSpec): The description of the dataset.

    Returns:
        SynthDataset: The data and its ground truth (deterministic given
        ``spec.seed``).

    """
    true_h = np.zeros((spec.rank, spec.total_variables))
    for component, indices in enumerate(spec.variable_sets()):
        true_h[component, indices] = spec.archetypes[component].shift

    rows = list()
    for component, size in enumerate(spec.samples_per_group):
        pure = np.zeros(spec.rank)
        pure[component] = 1.0
        rows.extend([pure] * size)
    rows.extend(np.array(row) for row in spec.mixing)
    true_w = np.array(rows, dtype=np.float64)

    x = true_w @ true_h
    if spec.noise_sigma > 0:
        rng = np.random.default_rng(spec.seed)
        x = x + rng.normal(0.0, spec.noise_sigma, size=x.shape)
        np.maximum(x, 0.0, out=x)

    logger.debug("Generated %d x %d synth data with %d archetypes",
                 x.shape[0], x.shape[1], spec.rank)

    return SynthDataset(
        x=x,
        true_labels=np.argmax(true_w, axis=1),
        true_w=true_w,
        true_h=true_h,
        sample_ids=tuple("s{}".format(i) for i in range(x.shape[0])),
        variable_names=tuple("v{}".format(j) for j in range(x.shape[1])))


def oracle_coordinates(x, spec):
    """Compute the oracle coordinates of samples generated under a spec.

    The coordinate of a sample on archetype u is the sum of its values over
    the variables of u, divided by the number of these variables and the
    shift of u.

    Args:
        x (array-like): The data matrix (n x p).
        spec (SynthSpec): The spec that describes the variable layout.

    Returns:
        numpy.ndarray: The coordinates (n x k).

    Raises:
        ValueError: If the number of variables does not match the spec.

    """
    x = check_matrix(x, "X")
    if x.shape[1] != spec.total_variables:
        raise ValueError("Data has {} variables but the spec describes "
                         "{}".format(x.shape[1], spec.total_variables))

    coordinates = np.empty((x.shape[0], spec.rank))
    for component, indices in enumerate(spec.variable_sets()):
        archetype = spec.archetypes[component]
        coordinates[:, component] = (x[:, indices].sum(axis=1) /
                                     (indices.size * archetype.shift))
    return coordinates
