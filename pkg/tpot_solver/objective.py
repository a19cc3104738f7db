"""
The TpOT loss and its gradients.

    L(pi_v, pi_e) = alpha <L(C, C'), pi_v (x) pi_v>
                  + (1 - alpha) <C~, pi_e>
                  + beta <L(omega~, omega~'), pi_v (x) pi_e>

All contractions go through ot_core's squared-loss tensors.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from errors import ShapeMismatchError
from ot_core import Coupling, gw_tensor, coot_tensor, pd_cost_matrix, restore_corner
from topo_network import MeasureTopologicalNetwork, AugmentedDiagramSide, augment_pair


@dataclass(frozen=True)
class CouplingPair:
    """Point plan pi_v over (mu, mu') and diagram plan pi_e over the augmented masses."""

    pi_v: Coupling
    pi_e: Coupling

    def transpose(self) -> 'CouplingPair':
        return CouplingPair(self.pi_v.transpose(), self.pi_e.transpose())

    def to_dict(self) -> dict:
        return {'pi_v': self.pi_v.to_dict(), 'pi_e': self.pi_e.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> 'CouplingPair':
        return cls(Coupling.from_dict(data['pi_v']), Coupling.from_dict(data['pi_e']))


def _sides(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
           pair: CouplingPair) -> Tuple[AugmentedDiagramSide, AugmentedDiagramSide]:
    side, side_prime = augment_pair(P, P_prime)
    if pair.pi_v.shape != (P.n_points, P_prime.n_points):
        raise ShapeMismatchError(f"pi_v shape {pair.pi_v.shape} != ({P.n_points}, {P_prime.n_points})")
    if pair.pi_e.shape != (side.n_slots, side_prime.n_slots):
        raise ShapeMismatchError(f"pi_e shape {pair.pi_e.shape} != ({side.n_slots}, {side_prime.n_slots})")
    return side, side_prime


def identity_pair(P: MeasureTopologicalNetwork) -> CouplingPair:
    """Self-coupling of P: diag(mu) on points, diag(nu) on real slots, slack on the corner."""
    side, _ = augment_pair(P, P)
    pi_v = Coupling(np.diag(P.point_mass), P.point_mass, P.point_mass)
    plan_e = np.diag(side.mass)
    return CouplingPair(pi_v, Coupling(plan_e, side.mass, side.mass))


def product_pair(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork) -> CouplingPair:
    """The independent initial pair mu (x) mu', nu~ (x) nu~'."""
    side, side_prime = augment_pair(P, P_prime)
    pi_v = Coupling(np.outer(P.point_mass, P_prime.point_mass), P.point_mass, P_prime.point_mass)
    total = side.mass.sum()
    plan_e = np.outer(side.mass, side_prime.mass) / total if total > 0 else np.zeros((side.n_slots, side_prime.n_slots))
    return CouplingPair(pi_v, Coupling(plan_e, side.mass, side_prime.mass))


def term_breakdown(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                   pair: CouplingPair, alpha: float, beta: float) -> Dict[str, float]:
    """Weighted contributions {gw, pd, cross}; they sum to the objective."""
    side, side_prime = _sides(P, P_prime, pair)
    pi_v = pair.pi_v.plan
    pi_e = pair.pi_e.plan

    gw = float(np.sum(gw_tensor(P.affinity, P_prime.affinity, pi_v) * pi_v))
    pd = float(np.sum(pd_cost_matrix(P.diagram, P_prime.diagram) * pi_e))
    cross = float(np.sum(coot_tensor(side.incidence, side_prime.incidence, pi_e) * pi_v))
    return {'gw': alpha * gw, 'pd': (1 - alpha) * pd, 'cross': beta * cross}


def objective(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
              pair: CouplingPair, alpha: float, beta: float) -> float:
    """
    Unregularised TpOT loss of a coupling pair (not square-rooted).

    Only shapes are checked, so a canonical pi_e (corner zeroed) gives the
    same value as its balanced form.
    """
    terms = term_breakdown(P, P_prime, pair, alpha, beta)
    return terms['gw'] + terms['pd'] + terms['cross']


def grad_v(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
           pair: CouplingPair, alpha: float, beta: float) -> np.ndarray:
    """2 alpha L(C, C') (x) pi_v + beta L(omega~, omega~') (x) pi_e, shape (N, N')."""
    side, side_prime = _sides(P, P_prime, pair)
    grad = 2 * alpha * gw_tensor(P.affinity, P_prime.affinity, pair.pi_v)
    if beta:
        grad = grad + beta * coot_tensor(side.incidence, side_prime.incidence, pair.pi_e)
    return grad


def grad_e(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
           pair: CouplingPair, alpha: float, beta: float) -> np.ndarray:
    """(1 - alpha) C~ + beta L(omega~^T, omega~'^T) (x) pi_v, shape (M+1, M'+1)."""
    side, side_prime = _sides(P, P_prime, pair)
    grad = (1 - alpha) * pd_cost_matrix(P.diagram, P_prime.diagram)
    if beta:
        grad = grad + beta * coot_tensor(side.incidence, side_prime.incidence, pair.pi_v, transpose=True)
    return grad


def balanced(pair: CouplingPair) -> CouplingPair:
    """Undo canonical corner zeroing so pi_e sits in Pi(nu~, nu~') again."""
    return CouplingPair(pair.pi_v, restore_corner(pair.pi_e))
