import numpy as np
import pytest

from datasets import (
    noisy_circle, four_circles, flower, multi_loops, mug, solid_torus, loop_chain,
    trefoil_sequence, generate, GENERATORS,
)
from errors import ConfigError
from geometry import euclidean_dists
from persistence import compute_persistence


@pytest.mark.parametrize('name', sorted(GENERATORS))
def test_generators_are_seeded(name):
    first = generate(name, seed=7)
    second = generate(name, seed=7)
    np.testing.assert_array_equal(first.cloud.points, second.cloud.points)
    assert first.labels.shape == (first.cloud.n_points,)


def test_default_sizes():
    assert noisy_circle().cloud.n_points == 50
    assert four_circles().cloud.n_points == 200
    assert flower().cloud.n_points == 200
    assert multi_loops(n=150).cloud.n_points == 150
    assert mug().cloud.dim == 3
    assert solid_torus(n=60).cloud.dim == 3


def test_labels_partition_the_loops():
    data = four_circles(n=101)
    assert np.bincount(data.labels).tolist() == [26, 25, 25, 25]
    assert set(multi_loops(n=90, arrangement='b').labels) == {0, 1, 2}
    assert set(flower(petals=5).labels) == set(range(5))


def test_unknown_arrangement():
    with pytest.raises(ValueError):
        multi_loops(arrangement='c')


def test_loop_chain_translates():
    data = loop_chain(n_loops=4, n_per_loop=10)
    pts = data.cloud.points
    first = pts[data.labels == 0]
    for k in range(1, 4):
        shifted = pts[data.labels == k] - first
        np.testing.assert_allclose(shifted[:, 1], 0.0, atol=1e-12)
        np.testing.assert_allclose(shifted[:, 0], shifted[0, 0], atol=1e-12)


def test_loop_chain_too_long():
    with pytest.raises(ValueError):
        loop_chain(n_loops=20)


def test_trefoil_sequence():
    frames = trefoil_sequence(n_steps=4, n_points=30)
    assert len(frames) == 4
    assert all(f.cloud.points.shape == (30, 3) for f in frames)
    # small rigid motion: vertex k stays close to vertex k of the previous snapshot
    step = np.linalg.norm(frames[1].cloud.points - frames[0].cloud.points, axis=1)
    spacing = np.linalg.norm(np.diff(frames[0].cloud.points, axis=0), axis=1)
    assert np.median(step) < np.median(spacing) * 2


def test_generate_sequence_and_unknown():
    assert len(generate('trefoil_sequence', n_steps=3, n_points=20)) == 3
    with pytest.raises(ConfigError):
        generate('klein_bottle')


def test_circle_has_one_loop():
    data = noisy_circle(n=40, noise=0.03, seed=2)
    result = compute_persistence(euclidean_dists(data.cloud), degree=1)
    assert np.sum(result.persistence > 0.5) == 1
