"""
Pairwise geometric structure on point clouds.

Squared and plain Euclidean distance matrices, the Gaussian affinity kernel
with its bandwidth rules, and the symmetric normalised graph Laplacian.
"""

import logging

import numpy as np

from errors import ConfigError, DegenerateBandwidthError, InvalidPointCloudError, LaplacianError
from settings.config import BANDWIDTH_RULE
from .pointcloud import PointCloud

logger = logging.getLogger(__name__)

# 'paper' is the config name of the inverse-mean rule
BANDWIDTH_RULES = ('paper', 'inverse_mean', 'median')
_BANDWIDTH_ALIASES = {'paper': 'inverse_mean'}


def _symmetrize(values: np.ndarray) -> np.ndarray:
    """Copy the upper triangle onto the lower one so symmetry holds bit for bit."""
    upper = np.triu(values, k=1)
    return upper + upper.T + np.diag(np.diag(values))


def pairwise_sq_dists(pc: PointCloud) -> np.ndarray:
    """
    Squared Euclidean distance matrix.

    Entries are formed from coordinate differences, not from the
    |x|^2 + |y|^2 - 2<x,y> expansion, so they match a scalar double loop
    exactly and the diagonal is exactly zero.
    """
    x = pc.points
    diff = x[:, None, :] - x[None, :, :]
    sq = np.sum(diff * diff, axis=-1)
    return _symmetrize(sq)


def euclidean_dists(pc: PointCloud) -> np.ndarray:
    """Euclidean distance matrix (the input of the Rips filtration)."""
    return np.sqrt(pairwise_sq_dists(pc))


def inverse_mean_bandwidth(sq_dists: np.ndarray) -> float:
    """
    h^2 from the rule h^2 N^-2 sum_ij |x_i - x_j|^2 = 1, i.e. N^2 / sum.

    Raises:
        DegenerateBandwidthError: if every point coincides
    """
    n = sq_dists.shape[0]
    total = float(np.sum(sq_dists))
    if total <= 0.0:
        raise DegenerateBandwidthError("All points coincide; the bandwidth rule has no solution")
    return n * n / total


def median_bandwidth(sq_dists: np.ndarray) -> float:
    """h^2 = median off-diagonal squared distance (the usual median heuristic)."""
    n = sq_dists.shape[0]
    off_diagonal = sq_dists[~np.eye(n, dtype=bool)]
    h2 = float(np.median(off_diagonal)) if off_diagonal.size else 0.0
    if h2 <= 0.0:
        raise DegenerateBandwidthError("Median squared distance is zero; choose another bandwidth")
    return h2


def resolve_bandwidth_rule(bandwidth: str) -> str:
    """Canonical rule name for a configured bandwidth value."""
    if bandwidth not in BANDWIDTH_RULES:
        raise ConfigError(f"bandwidth must be one of {BANDWIDTH_RULES}, got '{bandwidth}'")
    return _BANDWIDTH_ALIASES.get(bandwidth, bandwidth)


def gaussian_affinity(pc: PointCloud, bandwidth: str = BANDWIDTH_RULE) -> np.ndarray:
    """
    Gaussian kernel exp(-|x_i - x_j|^2 / h^2) with unit diagonal.

    Args:
        pc: Point cloud with at least two points
        bandwidth: 'paper' (alias 'inverse_mean') or 'median'

    Returns:
        Symmetric (N, N) matrix with entries in (0, 1]
    """
    if pc.n_points < 2:
        raise InvalidPointCloudError("Gaussian affinity needs at least two points")
    rule = resolve_bandwidth_rule(bandwidth)

    sq = pairwise_sq_dists(pc)
    h2 = inverse_mean_bandwidth(sq) if rule == 'inverse_mean' else median_bandwidth(sq)
    logger.debug(f"Gaussian affinity on {pc.n_points} points, h^2 = {h2:.6g} ({bandwidth} rule)")

    affinity = np.exp(-sq / h2)
    np.fill_diagonal(affinity, 1.0)
    return _symmetrize(affinity)


def sym_normalized_laplacian(A: np.ndarray) -> np.ndarray:
    """
    L = I - D^-1/2 A D^-1/2 with D the row sums of A (diagonal included).

    Raises:
        LaplacianError: on negative entries or a zero row sum
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise LaplacianError(f"Affinity must be square, got shape {A.shape}")
    if np.any(A < 0):
        raise LaplacianError("Affinity has negative entries")
    degrees = A.sum(axis=1)
    if np.any(degrees <= 0):
        raise LaplacianError("Affinity has a zero row sum")

    inv_sqrt = 1.0 / np.sqrt(degrees)
    L = np.eye(A.shape[0]) - inv_sqrt[:, None] * A * inv_sqrt[None, :]
    return _symmetrize(L)


def enclosing_radius(dists: np.ndarray) -> float:
    """min over i of max over j of d(i, j); Rips homology in degree >= 1 is trivial past it."""
    return float(np.min(np.max(dists, axis=1)))
