"""
Wasserstein-2 matching of persistence diagrams, used as the comparison
method for generator matching.
"""

import logging
from typing import List, Tuple

import numpy as np

from ot_core import exact_ot, pd_cost_matrix

logger = logging.getLogger(__name__)

# Vertex plans of the counting-measure LP are 0/1 on the real block
MATCH_THRESHOLD = 0.5


def pd_wasserstein_baseline(D: np.ndarray, D_prime: np.ndarray) -> Tuple[List[Tuple[int, int]], float]:
    """
    Optimal partial matching between two diagrams.

    Args:
        D: (M, 2) diagram
        D_prime: (M', 2) diagram

    Returns:
        (pairs, distance): real-real pairs (i, j) of the optimal matching,
        and the W2 distance. Points not in a pair go to the diagonal.

    Example:
        >>> pd_wasserstein_baseline(np.array([[0.0, 2.0]]), np.zeros((0, 2)))
        ([], 1.4142135623730951)
    """
    D = np.asarray(D, dtype=float).reshape(-1, 2)
    D_prime = np.asarray(D_prime, dtype=float).reshape(-1, 2)
    m, m_prime = D.shape[0], D_prime.shape[0]
    cost = pd_cost_matrix(D, D_prime)

    if m == 0 or m_prime == 0:
        pairs = []
    else:
        a = np.append(np.ones(m), m_prime)
        b = np.append(np.ones(m_prime), m)
        plan = exact_ot(cost, a, b).plan
        rows, cols = np.nonzero(plan[:m, :m_prime] > MATCH_THRESHOLD)
        pairs = [(int(i), int(j)) for i, j in zip(rows, cols)]

    matched_rows = {i for i, _ in pairs}
    matched_cols = {j for _, j in pairs}
    total = sum(cost[i, j] for i, j in pairs)
    total += sum(cost[i, m_prime] for i in range(m) if i not in matched_rows)
    total += sum(cost[m, j] for j in range(m_prime) if j not in matched_cols)
    distance = float(np.sqrt(total))
    logger.debug(f"[pd_wasserstein_baseline] {len(pairs)} pairs, distance={distance:.6f}")
    return pairs, distance
