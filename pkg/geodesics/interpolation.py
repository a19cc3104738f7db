"""
Points along the convex geodesic between two coupled networks.

For a pair (pi_v, pi_e) the geodesic lives on the support of pi_v (points)
and pi_e (diagram slots); gauges, incidences and diagram points are
interpolated linearly in t.
"""

import logging
from typing import List, Tuple

import numpy as np

from errors import EmptySupportError
from ot_core import Coupling
from topo_network import MeasureTopologicalNetwork, augment_pair
from tpot_solver import CouplingPair, objective

logger = logging.getLogger(__name__)


def coupling_support(pi: Coupling, tol: float = 0.0) -> List[Tuple[int, int]]:
    """(i, j) with pi_ij > tol, in row-major order."""
    rows, cols = np.nonzero(pi.plan > tol)
    return [(int(i), int(j)) for i, j in zip(rows, cols)]


def _diagram_support(pi_e: Coupling) -> List[Tuple[int, int]]:
    """Slot pairs carrying mass; the (diagonal, diagonal) corner is never one."""
    last = (pi_e.shape[0] - 1, pi_e.shape[1] - 1)
    return [pair for pair in coupling_support(pi_e) if pair != last]


def _projection(points: np.ndarray) -> np.ndarray:
    mid = points.mean(axis=1, keepdims=True)
    return np.hstack([mid, mid])


def interpolate(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                pair: CouplingPair, t: float) -> MeasureTopologicalNetwork:
    """
    Network P_t on the coupling supports.

    Args:
        P, P_prime: endpoint networks
        pair: sparse (vertex-rounded) pair; pi_e may be canonical
        t: position in [0, 1]

    Returns:
        MeasureTopologicalNetwork with one point per (i, j) in the support
        of pi_v (mass pi_v[i, j]) and one diagram point per slot pair (k, l)
        in the support of pi_e. A real point matched to the diagonal slides
        toward its diagonal projection.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must be in [0, 1], got {t}")
    support = coupling_support(pair.pi_v)
    if not support:
        raise EmptySupportError("pi_v has no positive entries")

    rows = np.array([i for i, _ in support])
    cols = np.array([j for _, j in support])
    s = 1.0 - t

    affinity = s * P.affinity[np.ix_(rows, rows)] + t * P_prime.affinity[np.ix_(cols, cols)]
    mass = pair.pi_v.plan[rows, cols]

    side, side_prime = augment_pair(P, P_prime)
    m, m_prime = P.n_features, P_prime.n_features
    slots = _diagram_support(pair.pi_e)
    # Diagonal slots borrow the partner's projection as their position
    source = np.vstack([P.diagram, np.zeros((1, 2))])
    target = np.vstack([P_prime.diagram, np.zeros((1, 2))])
    diagram = np.zeros((len(slots), 2))
    for idx, (k, l) in enumerate(slots):
        x = source[k] if k < m else _projection(target[l][None, :])[0]
        y = target[l] if l < m_prime else _projection(source[k][None, :])[0]
        diagram[idx] = s * x + t * y

    k_idx = np.array([k for k, _ in slots], dtype=int)
    l_idx = np.array([l for _, l in slots], dtype=int)
    incidence = (s * side.incidence[np.ix_(rows, k_idx)]
                 + t * side_prime.incidence[np.ix_(cols, l_idx)])
    slot_mass = pair.pi_e.plan[k_idx, l_idx] if slots else np.zeros(0)

    return MeasureTopologicalNetwork(
        affinity=affinity,
        point_mass=mass,
        diagram=diagram,
        diagram_mass=slot_mass,
        incidence=incidence.reshape(len(support), len(slots)),
        meta={'t': t, 'support': support, 'slots': slots},
        allow_diagonal=True,
    )


def _self_pair(P_t: MeasureTopologicalNetwork) -> CouplingPair:
    """Identity couplings of an interpolated network with its sibling on the same supports."""
    mu = P_t.point_mass
    nu = np.append(P_t.diagram_mass, P_t.diagram_mass.sum())
    return CouplingPair(Coupling(np.diag(mu), mu, mu), Coupling(np.diag(nu), nu, nu))


def geodesic_cost_identity(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                           pair: CouplingPair, s: float, t: float,
                           alpha: float = 0.5, beta: float = 1.0) -> Tuple[float, float]:
    """
    Cost of the identity coupling between P_s and P_t, and (t - s)^2 times
    the cost of pair between the endpoints. The two agree for any pair.
    """
    if not 0.0 <= s <= t <= 1.0:
        raise ValueError(f"need 0 <= s <= t <= 1, got s={s}, t={t}")
    P_s = interpolate(P, P_prime, pair, s)
    P_t = interpolate(P, P_prime, pair, t)
    lhs = objective(P_s, P_t, _self_pair(P_s), alpha, beta)
    rhs = (t - s) ** 2 * objective(P, P_prime, pair, alpha, beta)
    return lhs, rhs
