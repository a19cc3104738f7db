import logging

import numpy as np
from scipy.linalg import eigh, orthogonal_procrustes

logger = logging.getLogger(__name__)

EIGEN_RTOL = 1e-10
LOADING_TOL = 1e-12


def mds_embed(sq_dists: np.ndarray, d_embed: int) -> np.ndarray:
    """
    Classical MDS of a matrix of squared dissimilarities.

    Double-centres B = -1/2 J D J, keeps the top d_embed positive eigenpairs
    and returns eigvecs * sqrt(eigvals). Each axis is flipped so its first
    nonzero loading is positive. Missing axes (too few positive
    eigenvalues) are filled with zeros.

    Example:
        >>> coords = mds_embed(np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]), 2)
        >>> coords.shape
        (3, 2)
    """
    D = np.asarray(sq_dists, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {D.shape}")
    if d_embed < 1:
        raise ValueError(f"d_embed must be >= 1, got {d_embed}")
    n = D.shape[0]
    coords = np.zeros((n, d_embed))
    if n == 1:
        return coords

    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * J @ D @ J
    B = (B + B.T) / 2
    evals, evecs = eigh(B)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]

    cutoff = EIGEN_RTOL * max(1.0, abs(evals[0]))
    keep = min(d_embed, int(np.sum(evals > cutoff)))
    if keep < d_embed:
        logger.warning(f"[mds_embed] Only {keep} positive eigenvalues for d_embed={d_embed}; "
                       f"padding with zero coordinates")

    for axis in range(keep):
        vec = evecs[:, axis]
        nonzero = np.flatnonzero(np.abs(vec) > LOADING_TOL)
        if nonzero.size and vec[nonzero[0]] < 0:
            vec = -vec
        coords[:, axis] = vec * np.sqrt(evals[axis])
    return coords


def procrustes_align(ref: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Rotate/reflect and translate x onto ref (no scaling)."""
    ref = np.asarray(ref, dtype=float)
    x = np.asarray(x, dtype=float)
    if ref.shape != x.shape:
        raise ValueError(f"Shape mismatch: {ref.shape} vs {x.shape}")
    ref_mean = ref.mean(axis=0)
    x_mean = x.mean(axis=0)
    R, _ = orthogonal_procrustes(x - x_mean, ref - ref_mean)
    return (x - x_mean) @ R + ref_mean
