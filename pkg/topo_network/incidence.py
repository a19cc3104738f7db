"""
Point-generator incidence matrices (the PH-hypergraph as a matrix).
"""

import logging
from typing import Sequence

import numpy as np
from scipy import linalg

from errors import SolverError

logger = logging.getLogger(__name__)

CLAMP_TOL = 1e-10


def binary_incidence(n_points: int, generators: Sequence[Sequence[int]]) -> np.ndarray:
    """
    omega[i, c] = 1 when point i belongs to generator c.

    Args:
        n_points: Number of points N
        generators: One vertex set per feature; indices must be < N

    Returns:
        (N, M) float matrix of zeros and ones
    """
    omega = np.zeros((n_points, len(generators)), dtype=float)
    for c, generator in enumerate(generators):
        idx = np.asarray(list(generator), dtype=int)
        if idx.size and (idx.min() < 0 or idx.max() >= n_points):
            raise ValueError(f"Generator {c} has indices outside [0, {n_points})")
        omega[idx, c] = 1.0
    return omega


def smoothed_incidence(omega_bin: np.ndarray, L: np.ndarray, lam: float = 1.0) -> np.ndarray:
    """
    Solve (I + lam L) omega_smooth = omega_bin column by column.

    The system matrix is symmetric positive definite for a normalised
    Laplacian, so a Cholesky solve is used. Entries above -1e-10 that come
    out negative are rounding and are clamped to zero.

    Raises:
        SolverError: if the system is not positive definite
    """
    if lam < 0:
        raise ValueError(f"Smoothing weight must be nonnegative, got {lam}")
    omega_bin = np.asarray(omega_bin, dtype=float)
    n = omega_bin.shape[0]
    if L.shape != (n, n):
        raise ValueError(f"Laplacian shape {L.shape} does not match {n} points")
    if lam == 0 or omega_bin.shape[1] == 0:
        return omega_bin.copy()

    system = np.eye(n) + lam * L
    try:
        factor = linalg.cho_factor(system)
        omega = linalg.cho_solve(factor, omega_bin)
    except linalg.LinAlgError as e:
        raise SolverError(f"Incidence smoothing failed: {e}")

    most_negative = float(omega.min())
    if most_negative < -CLAMP_TOL:
        logger.warning(f"Smoothed incidence has entries down to {most_negative:.3g}; clamping to 0")
    return np.clip(omega, 0.0, None)
