"""
Entropy-regularised TpOT by KL projected gradient descent.

Each outer step replaces pi_v and pi_e by Sinkhorn projections of
exp(-grad / eps) (mu (x) mu') onto their coupling polytopes.
"""

import logging
from typing import Optional

from ot_core import sinkhorn, round_to_vertex, canonical_pi_e
from topo_network import MeasureTopologicalNetwork, augment_pair
from .objective import CouplingPair, objective, grad_v, grad_e, term_breakdown, product_pair
from .params import TpotParams
from .results import TpotResult

logger = logging.getLogger(__name__)


def _relative_change(previous: float, current: float) -> float:
    return abs(previous - current) / max(1.0, abs(previous))


def _round_pi_e(P, P_prime, pi_v, pi_e, alpha, beta):
    """
    Round the diagram plan with its corner taken out of the score.

    Two roundings are tried, one holding the corner mass fixed and one
    letting the rounded plan refill it; the lower objective wins.
    """
    candidates = [round_to_vertex(pi_e, exclude_corner=True),
                  round_to_vertex(canonical_pi_e(pi_e))]
    values = [objective(P, P_prime, CouplingPair(pi_v, c), alpha, beta) for c in candidates]
    best = min(range(len(candidates)), key=values.__getitem__)
    logger.debug(f"[solve_entropic] pi_e rounding objectives {values[0]:.6e} / {values[1]:.6e}")
    return candidates[best]


def solve_entropic(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                   params: Optional[TpotParams] = None,
                   init: Optional[CouplingPair] = None) -> TpotResult:
    """
    Run the entropic solver from mu (x) mu', nu~ (x) nu~' (or from init).

    Args:
        P, P_prime: networks to compare
        params: weights, eps_v/eps_e, stopping rules; gauss_seidel=True
            evaluates grad_e at the freshly updated pi_v
        init: optional starting pair

    Returns:
        TpotResult. objective_trace holds the unregularised loss of the raw
        iterate after every outer step (index 0 is the initial pair). When
        params.round_couplings is set, the reported pair is the vertex
        rounding of the final iterate with pi_e in canonical form.
    """
    params = params or TpotParams()
    params.validate()
    alpha, beta = params.alpha, params.beta
    side, side_prime = augment_pair(P, P_prime)
    mu, mu_prime = P.point_mass, P_prime.point_mass

    pair = init or product_pair(P, P_prime)
    trace = [objective(P, P_prime, pair, alpha, beta)]
    converged = False

    def _project(cost, a, b, eps):
        return sinkhorn(cost, a, b, eps, max_iter=params.sinkhorn_max_iter,
                        tol=params.sinkhorn_tol, eps_scaling=params.eps_scaling)

    for it in range(params.max_iter):
        m_v = grad_v(P, P_prime, pair, alpha, beta)
        pi_v = _project(m_v, mu, mu_prime, params.eps_v)
        grad_at = CouplingPair(pi_v, pair.pi_e) if params.gauss_seidel else pair
        m_e = grad_e(P, P_prime, grad_at, alpha, beta)
        pi_e = _project(m_e, side.mass, side_prime.mass, params.eps_e)

        pair = CouplingPair(pi_v, pi_e)
        trace.append(objective(P, P_prime, pair, alpha, beta))
        logger.debug(f"[solve_entropic] iter {it + 1}: objective={trace[-1]:.6e}")
        if _relative_change(trace[-2], trace[-1]) < params.tol:
            converged = True
            break

    if not converged:
        logger.warning(f"[solve_entropic] Stopped at max_iter={params.max_iter} "
                       f"(last change {_relative_change(trace[-2], trace[-1]):.2e})")

    reported = pair
    if params.round_couplings:
        pi_v = round_to_vertex(pair.pi_v)
        reported = CouplingPair(pi_v, _round_pi_e(P, P_prime, pi_v, pair.pi_e, alpha, beta))
    reported = CouplingPair(reported.pi_v, canonical_pi_e(reported.pi_e))

    value = objective(P, P_prime, reported, alpha, beta)
    logger.info(f"[solve_entropic] {len(trace) - 1} iterations, raw objective {trace[-1]:.6e}, "
                f"reported objective {value:.6e}")
    return TpotResult(pair=reported, raw_pair=pair, objective_trace=trace, params=params,
                      objective=value, term_breakdown=term_breakdown(P, P_prime, reported, alpha, beta),
                      converged=converged)
