"""
Entropic transport by log-domain Sinkhorn scaling.

The plan is parametrised as pi_ij = a_i b_j exp(f_i + g_j - C_ij / eps), so
it is the KL projection onto Pi(a, b) relative to the product a (x) b.
"""

import logging
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from errors import MarginalMismatchError, ShapeMismatchError
from .coupling import Coupling

logger = logging.getLogger(__name__)

TOTAL_MASS_RTOL = 1e-9
SCALING_FACTOR = 0.5


def check_marginals(cost: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Validate shapes and totals; return the common total mass."""
    if cost.ndim != 2 or cost.shape != (a.size, b.size):
        raise ShapeMismatchError(f"Cost shape {cost.shape} does not match marginals ({a.size}, {b.size})")
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("Marginals must be nonnegative")
    if not np.all(np.isfinite(cost)):
        raise ValueError("Cost entries must be finite")
    total_a, total_b = float(a.sum()), float(b.sum())
    if abs(total_a - total_b) > TOTAL_MASS_RTOL * max(1.0, total_a, total_b):
        raise MarginalMismatchError(f"Marginal totals differ: {total_a!r} vs {total_b!r}")
    return total_a


def _row_error(log_kernel, log_a, log_b, f, g, a) -> float:
    rows = np.exp(log_a + f + logsumexp(log_kernel + (log_b + g)[None, :], axis=1))
    return float(np.max(np.abs(rows - a)))


def _scale(log_kernel, a, b, log_a, log_b, f, g, max_iter, tol):
    """Alternate potential updates; columns are exact after each sweep."""
    best = (_row_error(log_kernel, log_a, log_b, f, g, a), f, g)
    errors = [best[0]]
    if best[0] < tol:
        return best, errors, True
    for _ in range(max_iter):
        lse_rows = logsumexp(log_kernel + (log_b + g)[None, :], axis=1)
        f = -lse_rows
        g = -logsumexp(log_kernel + (log_a + f)[:, None], axis=0)
        err = _row_error(log_kernel, log_a, log_b, f, g, a)
        errors.append(err)
        if err < best[0]:
            best = (err, f, g)
        if err < tol:
            return best, errors, True
    return best, errors, False


def sinkhorn(cost: np.ndarray, a: np.ndarray, b: np.ndarray, eps: float,
             max_iter: int = 5000, tol: float = 1e-9, eps_scaling: bool = False,
             log: bool = False):
    """
    Entropy-regularised optimal transport between a and b.

    Args:
        cost: (n, m) finite cost matrix
        a, b: nonnegative marginals with equal totals
        eps: regularisation strength, > 0
        max_iter: cap on scaling sweeps (shared across the eps schedule)
        tol: max-abs marginal residual to stop at
        eps_scaling: anneal eps geometrically from the cost range down to eps
        log: also return a dict with the residual trace

    Returns:
        Coupling, or (Coupling, log dict) when log=True. Rows/columns with
        zero mass are zero in the plan.

    Example:
        >>> sinkhorn(np.zeros((2, 2)), np.full(2, .5), np.full(2, .5), 0.1).plan
        array([[0.25, 0.25],
               [0.25, 0.25]])
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    cost = np.asarray(cost, dtype=float)
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    check_marginals(cost, a, b)

    plan = np.zeros_like(cost)
    rows, cols = np.flatnonzero(a > 0), np.flatnonzero(b > 0)
    info = {'n_iter': 0, 'err': 0.0, 'converged': True, 'err_trace': []}
    if rows.size == 0 or cols.size == 0:
        coupling = Coupling(plan, a, b)
        return (coupling, info) if log else coupling

    a_s, b_s = a[rows], b[cols]
    cost_s = cost[np.ix_(rows, cols)]
    log_a, log_b = np.log(a_s), np.log(b_s)
    f = np.zeros(rows.size)
    g = np.zeros(cols.size)

    schedule = [eps]
    if eps_scaling:
        eps_start = max(eps, float(np.ptp(cost_s)))
        while eps_start * SCALING_FACTOR > eps:
            schedule.insert(-1, eps_start)
            eps_start *= SCALING_FACTOR

    previous_eps = schedule[0]
    budget = max_iter
    converged = False
    for stage, stage_eps in enumerate(schedule):
        # potentials are stored in units of eps
        f, g = f * previous_eps / stage_eps, g * previous_eps / stage_eps
        previous_eps = stage_eps
        final = stage == len(schedule) - 1
        stage_iter = budget if final else max(1, budget // (2 * (len(schedule) - stage)))
        stage_tol = tol if final else max(tol, 1e-4 * float(a_s.sum()))
        (err, f, g), errors, converged = _scale(-cost_s / stage_eps, a_s, b_s, log_a, log_b,
                                                 f, g, stage_iter, stage_tol)
        budget = max(1, budget - (len(errors) - 1))
        info['err_trace'].extend(errors)

    plan[np.ix_(rows, cols)] = np.outer(a_s, b_s) * np.exp(f[:, None] + g[None, :] - cost_s / eps)
    info.update(n_iter=len(info['err_trace']) - 1, err=err, converged=converged)

    if not converged:
        logger.warning(f"[sinkhorn] No convergence in {max_iter} iterations "
                       f"(eps={eps:g}, residual={err:.3e}); returning best iterate")

    coupling = Coupling(plan, a, b)
    return (coupling, info) if log else coupling
