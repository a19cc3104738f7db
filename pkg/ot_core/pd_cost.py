"""
Augmented squared Euclidean cost between persistence diagrams.
"""

import numpy as np


def diagonal_cost(diagram: np.ndarray) -> np.ndarray:
    """Squared distance from each point to its projection on the diagonal: (d - b)^2 / 2."""
    diagram = np.asarray(diagram, dtype=float).reshape(-1, 2)
    return (diagram[:, 1] - diagram[:, 0]) ** 2 / 2


def pd_cost_matrix(D: np.ndarray, D_prime: np.ndarray) -> np.ndarray:
    """
    (M+1) x (M'+1) cost with the diagonal slot last on both sides.

    Real-real entries are squared Euclidean distances, real-diagonal entries
    the squared distance to the diagonal, and the corner is 0.
    """
    D = np.asarray(D, dtype=float).reshape(-1, 2)
    D_prime = np.asarray(D_prime, dtype=float).reshape(-1, 2)
    m, m_prime = D.shape[0], D_prime.shape[0]

    cost = np.zeros((m + 1, m_prime + 1))
    birth = D[:, 0][:, None] - D_prime[:, 0][None, :]
    death = D[:, 1][:, None] - D_prime[:, 1][None, :]
    cost[:m, :m_prime] = birth ** 2 + death ** 2
    cost[:m, m_prime] = diagonal_cost(D)
    cost[m, :m_prime] = diagonal_cost(D_prime)
    return cost
