"""Unit tests for the volume-based rank estimation."""

import numpy as np
import pytest
from permnmf.factor_model import FactorModel
from permnmf.permute import PermuteConfig
from permnmf.rank_scan import (DegenerateComponentError, Output,
                               SurplusComponentError, component_shares,
                               component_volume, drop_ratios, scan,
                               scan_volume, suggest_rank)
from permnmf.solver import Initialization, SolverConfig
from permnmf.synth import Archetype, SynthSpec, generate


def separable_data():
    """Generate noiseless data with four archetypes of distinct shifts."""
    spec = SynthSpec(archetypes=[
        Archetype(5, 1.0),
        Archetype(5, 2.0),
        Archetype(5, 3.0),
        Archetype(5, 4.0)
    ],
                     samples_per_group=5)
    return generate(spec).x


def explicit_volume(model):
    """Compute the volume from the vectorized rank-one parts."""
    columns = list()
    for component in range(model.rank):
        part = model.rank_one_part(component).ravel()
        columns.append(part / np.linalg.norm(part))
    z_mat = np.column_stack(columns)
    return np.linalg.det(z_mat.T @ z_mat)


def test_single_component_volume():
    """Test that a single component has volume 1."""
    model = FactorModel([[1.0], [2.0]], [[3.0, 1.0, 0.5]])
    assert component_volume(model) == 1.0


def test_duplicated_component_volume():
    """Test that a duplicated archetype collapses the volume."""
    rng = np.random.default_rng(0)
    w = rng.random((10, 1))
    h = rng.random((1, 6))
    model = FactorModel(np.hstack([w, w]), np.vstack([h, h]))

    assert component_volume(model) < 1e-10


def test_orthogonal_components_volume():
    """Test that parts with disjoint supports have volume 1."""
    model = FactorModel([[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 1.0]])
    assert component_volume(model) == pytest.approx(1.0)


def test_two_component_closed_form():
    """Test the 2 x 2 Gram determinant against 1 - c^2."""
    rng = np.random.default_rng(1)
    model = FactorModel(rng.random((8, 2)), rng.random((2, 5)))

    first = model.rank_one_part(0).ravel()
    second = model.rank_one_part(1).ravel()
    cosine = first @ second / (np.linalg.norm(first) *
                               np.linalg.norm(second))

    assert component_volume(model) == pytest.approx(1 - cosine**2, abs=1e-12)
    assert component_volume(model) == pytest.approx(explicit_volume(model),
                                                    abs=1e-12)


def test_volume_bounds():
    """Test that random models have a volume in [0, 1]."""
    rng = np.random.default_rng(2)
    for _ in range(100):
        rank = rng.integers(1, 5)
        model = FactorModel(rng.random((12, rank)), rng.random((rank, 7)))
        volume = component_volume(model)

        assert 0 <= volume <= 1
        assert volume == pytest.approx(max(explicit_volume(model), 0),
                                       abs=1e-9)


def test_degenerate_component():
    """Test that a dead component is reported."""
    model = FactorModel([[1.0, 0.0], [2.0, 0.0]], [[1.0, 2.0], [3.0, 4.0]])

    with pytest.raises(DegenerateComponentError) as error:
        component_volume(model)
    assert error.value.component == 1
    assert isinstance(error.value, ArithmeticError)


def test_drop_ratios():
    """Test the ratios of consecutive volumes."""
    assert drop_ratios([1.0, 0.5, 0.05]) == pytest.approx([0.5, 0.1])
    assert drop_ratios([1.0, 0.0, 0.3]) == [0.0, 0.0]
    assert drop_ratios([1.0]) == []


def test_suggest_rank():
    """Test the rank preceding the first sharp drop."""
    ranks = [1, 2, 3, 4, 5]
    assert suggest_rank(ranks, [1.0, 0.9, 0.8, 0.01, 0.001]) == 3
    assert suggest_rank(ranks, [1.0, 0.9, 0.8, 0.7, 0.6]) == 5
    assert suggest_rank(ranks, [1.0, 0.05, 0.8, 0.7, 0.6]) == 1
    assert suggest_rank(ranks, [1.0, 0.9, 0.8, 0.5, 0.4],
                        drop_threshold=0.7) == 3


def test_scan_single_rank():
    """Test a scan over rank 1 only."""
    rng = np.random.default_rng(3)
    report = scan(rng.random((6, 4)), 1, 1,
                  SolverConfig(max_outer_iterations=20))

    assert report.ranks == (1, )
    assert report.volumes == (1.0, )
    assert report.drop_ratios == ()
    assert report.suggested_rank == 1
    assert len(report.errors) == 1


def test_scan_rejects_invalid_range():
    """Test the validation of the rank range."""
    x = np.ones((5, 4))
    with pytest.raises(ValueError):
        scan(x, 0, 2)
    with pytest.raises(ValueError):
        scan(x, 3, 2)
    with pytest.raises(ValueError):
        scan(x, 1, 5)


def test_scan_separable_data():
    """Test the sharp drop past the number of archetypes."""
    config = SolverConfig(init=Initialization.NNDSVD)
    report = scan(separable_data(), 1, 6, config)

    assert report.ranks == (1, 2, 3, 4, 5, 6)
    assert all(ratio > 0.5 for ratio in report.drop_ratios[:3])
    assert report.drop_ratios[3] < 0.1
    # Dead components are recorded with volume 0
    assert report.volumes[4] == 0
    assert report.suggested_rank == 4


def test_scan_permuted_fits():
    """Test a scan with the permutation step."""
    config = SolverConfig(init=Initialization.NNDSVD)
    report = scan(separable_data(), 1, 5, config, PermuteConfig())

    assert report.suggested_rank == 4


def test_scan_in_worker_processes():
    """Test that worker processes reproduce the sequential scan."""
    rng = np.random.default_rng(4)
    x = rng.random((12, 8))
    config = SolverConfig(max_outer_iterations=30)

    sequential = scan(x, 1, 4, config)
    parallel = scan(x, 1, 4, config, processes=2, output=Output.TEXTUAL)

    assert parallel == sequential


def test_component_shares():
    """Test the share of ||X|| held by every rank-one part."""
    model = FactorModel([[1.0, 0.0], [0.0, 0.01]], [[1.0, 0.0], [0.0, 1.0]])
    x = model.w @ model.h

    shares = component_shares(x, model)

    norm = np.sqrt(1.0 + 0.01**2)
    assert shares == pytest.approx([1.0 / norm, 0.01 / norm])


def test_small_component_is_surplus():
    """Test that a component below the share floor has no volume."""
    model = FactorModel([[1.0, 0.0], [0.0, 0.01]], [[1.0, 0.0], [0.0, 1.0]])
    x = model.w @ model.h

    with pytest.raises(SurplusComponentError) as error:
        scan_volume(x, model, min_share=0.05)
    assert error.value.component == 1
    assert error.value.share == pytest.approx(0.01, rel=1e-3)
    assert isinstance(error.value, DegenerateComponentError)

    # A floor of 0 disables the check
    assert scan_volume(x, model, min_share=0.0) == pytest.approx(1.0)
    assert scan_volume(x, model, min_share=0.005) == pytest.approx(1.0)


def test_scan_noisy_separable_data():
    """Test that surplus noise components end the scan at four archetypes."""
    spec = SynthSpec(archetypes=[
        Archetype(5, 1.0),
        Archetype(5, 2.0),
        Archetype(5, 3.0),
        Archetype(5, 4.0)
    ],
                     samples_per_group=5,
                     noise_sigma=0.025,
                     seed=3)
    x = generate(spec).x

    report = scan(x, 1, 5, SolverConfig(init=Initialization.NNDSVD))

    assert report.min_share == 0.05
    assert all(volume > 0.9 for volume in report.volumes[:4])
    assert report.volumes[4] == 0
    assert report.suggested_rank == 4


def test_scan_rejects_invalid_share():
    """Test the validation of the share floor."""
    x = np.ones((5, 4))
    with pytest.raises(ValueError):
        scan(x, 1, 2, min_share=-0.1)
    with pytest.raises(ValueError):
        scan(x, 1, 2, min_share=1.0)
