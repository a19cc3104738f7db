"""
Exact linear transport via POT's network simplex.
"""

import logging
from typing import Optional

import numpy as np
import ot

from errors import SizeCapExceededError
from settings.config import EXACT_OT_CAP
from .coupling import Coupling
from .sinkhorn import check_marginals

logger = logging.getLogger(__name__)

MAX_SIMPLEX_ITER = 1_000_000


def exact_ot(cost: np.ndarray, a: np.ndarray, b: np.ndarray,
             size_cap: Optional[int] = None) -> Coupling:
    """
    Optimal vertex of the transportation polytope Pi(a, b) for a linear cost.

    Args:
        cost: (n, m) cost matrix
        a, b: nonnegative marginals with equal totals
        size_cap: largest n or m accepted (defaults to TPOT_EXACT_OT_CAP)

    Returns:
        Coupling whose plan has at most n + m - 1 nonzeros
    """
    cost = np.asarray(cost, dtype=float)
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    total = check_marginals(cost, a, b)

    cap = EXACT_OT_CAP if size_cap is None else size_cap
    if max(cost.shape) > cap:
        raise SizeCapExceededError(
            f"Exact transport is capped at {cap}x{cap}, got {cost.shape[0]}x{cost.shape[1]}; "
            f"use sinkhorn (algorithm 'entropic') for problems this size")

    if total <= 0:
        return Coupling(np.zeros_like(cost), a, b)
    if cost.shape == (1, 1):
        return Coupling(np.array([[total]]), a, b)

    # POT wants identical totals to machine precision
    b_scaled = b * (total / b.sum())
    plan, log = ot.emd(np.ascontiguousarray(a), np.ascontiguousarray(b_scaled),
                       np.ascontiguousarray(cost), numItermax=MAX_SIMPLEX_ITER, log=True)
    if log.get('warning'):
        logger.warning(f"[exact_ot] Network simplex: {log['warning']}")
    return Coupling(np.asarray(plan, dtype=float), a, b)


def round_to_vertex(pi_eps: Coupling, size_cap: Optional[int] = None,
                    exclude_corner: bool = False) -> Coupling:
    """
    Vertex of Pi(a, b) maximising the inner product with pi_eps.

    With exclude_corner the (diagonal, diagonal) mass of an augmented diagram
    plan is held fixed and only the remaining plan is rounded, against the
    marginals left once the corner is taken out.
    """
    a, b = pi_eps.row_marginal, pi_eps.col_marginal
    if not exclude_corner:
        return exact_ot(-pi_eps.plan, a, b, size_cap=size_cap)

    score = pi_eps.plan.copy()
    corner = float(score[-1, -1])
    score[-1, -1] = 0.0
    a_free, b_free = a.copy(), b.copy()
    a_free[-1] = max(a_free[-1] - corner, 0.0)
    b_free[-1] = max(b_free[-1] - corner, 0.0)
    plan = exact_ot(-score, a_free, b_free, size_cap=size_cap).plan
    plan[-1, -1] += corner
    return Coupling(plan, a, b)
