"""
Transport plans with their target marginals.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Coupling:
    """
    An (n, m) nonnegative plan and the marginals it is meant to satisfy.

    corner_mass is the mass removed from the last (diagonal, diagonal)
    entry when a diagram plan is put in canonical form; the stored
    marginals are the ones from before that removal.
    """

    plan: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray
    corner_mass: float = 0.0

    def __post_init__(self):
        plan = np.array(self.plan, dtype=float)
        a = np.array(self.row_marginal, dtype=float).reshape(-1)
        b = np.array(self.col_marginal, dtype=float).reshape(-1)
        if plan.ndim != 2 or plan.shape != (a.size, b.size):
            raise ValueError(f"Plan shape {plan.shape} does not match marginals ({a.size}, {b.size})")
        object.__setattr__(self, 'plan', plan)
        object.__setattr__(self, 'row_marginal', a)
        object.__setattr__(self, 'col_marginal', b)

    @property
    def shape(self):
        return self.plan.shape

    def marginal_error(self) -> float:
        """Largest deviation of the plan's row/column sums from the targets."""
        plan = self.plan
        if self.corner_mass:
            plan = plan.copy()
            plan[-1, -1] += self.corner_mass
        errors = [0.0]
        if plan.size:
            errors.append(float(np.max(np.abs(plan.sum(axis=1) - self.row_marginal))))
            errors.append(float(np.max(np.abs(plan.sum(axis=0) - self.col_marginal))))
        return max(errors)

    def cost(self, cost: np.ndarray) -> float:
        """Linear transport cost <cost, plan>."""
        return float(np.sum(cost * self.plan))

    def nnz(self, tol: float = 0.0) -> int:
        return int(np.count_nonzero(self.plan > tol))

    def transpose(self) -> 'Coupling':
        return Coupling(self.plan.T, self.col_marginal, self.row_marginal, self.corner_mass)

    def to_dict(self) -> dict:
        return {
            'plan': self.plan.tolist(),
            'row_marginal': self.row_marginal.tolist(),
            'col_marginal': self.col_marginal.tolist(),
            'corner_mass': self.corner_mass,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Coupling':
        a = np.asarray(data['row_marginal'], dtype=float)
        b = np.asarray(data['col_marginal'], dtype=float)
        plan = np.asarray(data['plan'], dtype=float).reshape(a.size, b.size)
        return cls(plan, a, b, float(data.get('corner_mass', 0.0)))


def product_coupling(a: np.ndarray, b: np.ndarray) -> Coupling:
    """a (x) b normalised to total(a): the independent coupling."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    total = b.sum()
    plan = np.outer(a, b) / total if total > 0 else np.zeros((a.size, b.size))
    return Coupling(plan, a, b)


def canonical_pi_e(pi_e: Coupling) -> Coupling:
    """Zero the (diagonal, diagonal) corner of a diagram plan, keeping its marginals."""
    if pi_e.plan.size == 0:
        return pi_e
    plan = pi_e.plan.copy()
    corner = float(plan[-1, -1])
    plan[-1, -1] = 0.0
    return Coupling(plan, pi_e.row_marginal, pi_e.col_marginal, pi_e.corner_mass + corner)


def restore_corner(pi_e: Coupling) -> Coupling:
    """Inverse of canonical_pi_e: put the slack mass back on the corner."""
    if not pi_e.corner_mass:
        return pi_e
    plan = pi_e.plan.copy()
    plan[-1, -1] += pi_e.corner_mass
    return Coupling(plan, pi_e.row_marginal, pi_e.col_marginal)
