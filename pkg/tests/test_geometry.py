import json

import numpy as np
import pytest

from errors import ConfigError, DegenerateBandwidthError, InputParseError, InvalidPointCloudError, LaplacianError
from geometry import (
    PointCloud, pairwise_sq_dists, euclidean_dists, gaussian_affinity, median_bandwidth,
    sym_normalized_laplacian, enclosing_radius, read_point_cloud, write_point_cloud,
)


class TestPointCloud:
    def test_rejects_ragged_rows(self):
        with pytest.raises(InvalidPointCloudError):
            PointCloud.from_list([[0.0, 1.0], [2.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidPointCloudError):
            PointCloud(np.array([[0.0, np.nan]]))

    def test_rejects_empty(self):
        with pytest.raises(InvalidPointCloudError):
            PointCloud.from_list([])

    def test_points_are_read_only(self):
        pc = PointCloud(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            pc.points[0, 0] = 1.0


class TestPairwiseSqDists:
    def test_single_point(self):
        D = pairwise_sq_dists(PointCloud(np.array([[1.0, 2.0]])))
        assert D.shape == (1, 1)
        assert D[0, 0] == 0.0

    def test_three_four_five(self):
        D = pairwise_sq_dists(PointCloud.from_list([[0, 0], [3, 4]]))
        assert D[0, 1] == 25.0
        assert D[1, 0] == 25.0

    def test_matches_scalar_loop(self, rng):
        x = rng.normal(size=(10, 3))
        D = pairwise_sq_dists(PointCloud(x))
        for i in range(10):
            for j in range(10):
                diff = x[i] - x[j]
                assert D[i, j] == pytest.approx(float(np.sum(diff * diff)), abs=0, rel=1e-15)
        assert np.array_equal(D, D.T)
        assert np.all(np.diag(D) == 0.0)

    def test_euclidean_is_square_root(self, rng):
        pc = PointCloud(rng.normal(size=(6, 2)))
        np.testing.assert_array_equal(euclidean_dists(pc), np.sqrt(pairwise_sq_dists(pc)))


class TestGaussianAffinity:
    def test_two_points_hand_computed(self):
        r = 0.7
        A = gaussian_affinity(PointCloud.from_list([[0.0, 0.0], [r, 0.0]]), bandwidth='inverse_mean')
        assert A[0, 1] == pytest.approx(np.exp(-r ** 4 / 2), rel=1e-12)
        assert A[0, 0] == 1.0 and A[1, 1] == 1.0

    def test_paper_rule_is_inverse_mean(self, rng):
        pc = PointCloud(rng.normal(size=(10, 2)))
        np.testing.assert_array_equal(gaussian_affinity(pc, bandwidth='paper'),
                                      gaussian_affinity(pc, bandwidth='inverse_mean'))

    def test_unknown_rule(self, rng):
        with pytest.raises(ConfigError, match='bandwidth'):
            gaussian_affinity(PointCloud(rng.normal(size=(4, 2))), bandwidth='silverman')

    def test_translation_invariant(self, rng):
        x = rng.normal(size=(12, 2))
        A = gaussian_affinity(PointCloud(x))
        B = gaussian_affinity(PointCloud(x + np.array([5.0, -3.0])))
        np.testing.assert_allclose(A, B, atol=1e-12)

    def test_rotation_invariant(self, rng):
        x = rng.normal(size=(12, 2))
        c, s = np.cos(0.4), np.sin(0.4)
        R = np.array([[c, -s], [s, c]])
        np.testing.assert_allclose(gaussian_affinity(PointCloud(x)),
                                   gaussian_affinity(PointCloud(x @ R.T)), atol=1e-12)

    def test_range_and_diagonal(self, rng):
        A = gaussian_affinity(PointCloud(rng.normal(size=(20, 2))))
        assert np.all(A > 0) and np.all(A <= 1)
        assert np.all(np.diag(A) == 1.0)
        assert np.array_equal(A, A.T)

    def test_coincident_points(self):
        with pytest.raises(DegenerateBandwidthError):
            gaussian_affinity(PointCloud(np.ones((4, 2))))

    def test_needs_two_points(self):
        with pytest.raises(InvalidPointCloudError):
            gaussian_affinity(PointCloud(np.zeros((1, 2))))

    def test_median_rule(self, rng):
        pc = PointCloud(rng.normal(size=(9, 2)))
        D = pairwise_sq_dists(pc)
        h2 = median_bandwidth(D)
        A = gaussian_affinity(pc, bandwidth='median')
        np.testing.assert_allclose(A[0, 1], np.exp(-D[0, 1] / h2), rtol=1e-14)


class TestLaplacian:
    def test_identity_gives_zero(self):
        np.testing.assert_array_equal(sym_normalized_laplacian(np.eye(4)), np.zeros((4, 4)))

    def test_two_node_spectrum(self):
        L = sym_normalized_laplacian(np.ones((2, 2)))
        evals = np.linalg.eigvalsh(L)
        assert evals.min() >= -1e-12 and evals.max() <= 2 + 1e-12

    def test_null_vector(self, rng):
        A = rng.uniform(0, 1, (8, 8))
        A = (A + A.T) / 2
        L = sym_normalized_laplacian(A)
        assert np.array_equal(L, L.T)
        null = np.sqrt(A.sum(axis=1))
        np.testing.assert_allclose(L @ null, np.zeros(8), atol=1e-12)

    def test_positive_semidefinite(self, rng):
        A = gaussian_affinity(PointCloud(rng.normal(size=(15, 2))))
        L = sym_normalized_laplacian(A)
        for _ in range(20):
            v = rng.normal(size=15)
            assert v @ L @ v >= -1e-10

    def test_zero_row_sum(self):
        A = np.array([[1.0, 0.0], [0.0, 0.0]])
        with pytest.raises(LaplacianError):
            sym_normalized_laplacian(A)

    def test_negative_entry(self):
        with pytest.raises(LaplacianError):
            sym_normalized_laplacian(np.array([[1.0, -0.5], [-0.5, 1.0]]))


def test_enclosing_radius():
    D = np.array([[0, 1, 3], [1, 0, 2], [3, 2, 0]], dtype=float)
    assert enclosing_radius(D) == 2.0


class TestReadWrite:
    def test_csv_round_trip(self, tmp_path, rng):
        pc = PointCloud(rng.normal(size=(7, 3)))
        path = write_point_cloud(pc, tmp_path / 'pts.csv')
        assert np.array_equal(read_point_cloud(path).points, pc.points)

    def test_json(self, tmp_path):
        path = tmp_path / 'pts.json'
        path.write_text(json.dumps([[0, 1], [2, 3]]))
        assert read_point_cloud(path).points.tolist() == [[0.0, 1.0], [2.0, 3.0]]

    def test_whitespace_text(self, tmp_path):
        path = tmp_path / 'knot.txt'
        path.write_text("# vertices\n0 0 0\n1.5 2 3\n")
        pc = read_point_cloud(path)
        assert pc.n_points == 2 and pc.dim == 3

    def test_malformed_csv_reports_line(self, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text("0,1\n2,3\nfoo,4\n")
        with pytest.raises(InputParseError) as info:
            read_point_cloud(path)
        assert info.value.line == 3

    def test_csv_round_trip_is_exact_for_awkward_values(self, tmp_path):
        values = np.array([[0.1 + 0.2, 1 / 3], [np.nextafter(1.0, 2.0), -2.2250738585072014e-308]])
        path = write_point_cloud(PointCloud(values), tmp_path / 'pts.csv')
        assert np.array_equal(read_point_cloud(path).points, values)

    def test_malformed_line_counts_blank_lines(self, tmp_path):
        path = tmp_path / 'gappy.csv'
        path.write_text("0,1\n\n\n2,3\nfoo,4\n")
        with pytest.raises(InputParseError) as info:
            read_point_cloud(path)
        assert info.value.line == 5

    def test_malformed_line_counts_comment_lines(self, tmp_path):
        path = tmp_path / 'knot.txt'
        path.write_text("# vertices\n0 0 0\n\n1 x 3\n")
        with pytest.raises(InputParseError) as info:
            read_point_cloud(path)
        assert info.value.line == 4

    def test_ragged_csv(self, tmp_path):
        path = tmp_path / 'ragged.csv'
        path.write_text("0,1\n2,3,4\n")
        with pytest.raises(InputParseError):
            read_point_cloud(path)
