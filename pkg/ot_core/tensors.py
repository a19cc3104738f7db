"""
Tensor-matrix products L(X, Y) (x) pi for the squared loss.

For L_ijkl = |X_ik - Y_jl|^2 / 2 the contraction splits as
    1/2 X^2 p + 1/2 (Y^2 q)^T - X pi Y^T
with p, q the row and column sums of pi, so no 4-index array is formed.
"""

import numpy as np

from errors import ShapeMismatchError
from .coupling import Coupling


def _plan(pi) -> np.ndarray:
    return pi.plan if isinstance(pi, Coupling) else np.asarray(pi, dtype=float)


def square_loss_tensor(X: np.ndarray, Y: np.ndarray, pi) -> np.ndarray:
    """
    Returns the (n, n') matrix sum_kl |X_ik - Y_jl|^2 / 2 * pi_kl.

    Args:
        X: (n, k) matrix
        Y: (n', l) matrix
        pi: (k, l) plan or Coupling
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    plan = _plan(pi)
    if plan.shape != (X.shape[1], Y.shape[1]):
        raise ShapeMismatchError(
            f"Plan shape {plan.shape} does not match contracted dims ({X.shape[1]}, {Y.shape[1]})")
    p = plan.sum(axis=1)
    q = plan.sum(axis=0)
    return (0.5 * (X ** 2) @ p)[:, None] + (0.5 * (Y ** 2) @ q)[None, :] - X @ plan @ Y.T


def gw_tensor(C: np.ndarray, C_prime: np.ndarray, pi) -> np.ndarray:
    """L(C, C') (x) pi for the point-side affinities; pi couples the points."""
    return square_loss_tensor(C, C_prime, pi)


def coot_tensor(omega: np.ndarray, omega_prime: np.ndarray, pi, transpose: bool = False) -> np.ndarray:
    """
    Incidence cross term.

    With transpose=False, omega is (N, M+1), pi couples the diagram slots and
    the result is (N, N'). With transpose=True, pi couples the points and the
    result is (M+1, M'+1), i.e. L(omega^T, omega'^T) (x) pi.

    The zero last column of an augmented incidence makes a real feature
    matched to the diagonal cost |omega_ik|^2 / 2 and the corner free.
    """
    if transpose:
        return square_loss_tensor(np.asarray(omega).T, np.asarray(omega_prime).T, pi)
    return square_loss_tensor(omega, omega_prime, pi)
