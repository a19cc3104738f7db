"""
Hard generator matchings read off diagram plans, and how good they are.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from ot_core import Coupling
from tpot_solver import pd_wasserstein_baseline

logger = logging.getLogger(__name__)

DIAGONAL = -1
MIN_PAIR_MASS = 1e-9


@dataclass(frozen=True)
class GeneratorMatching:
    """Pairs (source feature, target feature or DIAGONAL) with transported mass."""

    pairs: Tuple[Tuple[int, int], ...]
    mass: Tuple[float, ...]

    def __post_init__(self):
        pairs = tuple((int(i), int(j)) for i, j in self.pairs)
        mass = tuple(float(m) for m in self.mass)
        if len(pairs) != len(mass):
            raise ValueError(f"{len(pairs)} pairs but {len(mass)} masses")
        sources = [i for i, _ in pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("Each source feature may appear in at most one pair")
        if any(m <= 0 for m in mass):
            raise ValueError("Pair masses must be positive")
        object.__setattr__(self, 'pairs', pairs)
        object.__setattr__(self, 'mass', mass)

    def __len__(self) -> int:
        return len(self.pairs)

    def real_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in self.pairs if j != DIAGONAL]

    def as_dict(self) -> dict:
        """source -> target (DIAGONAL for features sent to the diagonal)."""
        return dict(self.pairs)

    def to_dict(self) -> dict:
        return {'pairs': [list(p) for p in self.pairs], 'masses': list(self.mass)}


def extract_matching(pi_e: Union[Coupling, np.ndarray]) -> GeneratorMatching:
    """
    Row-argmax matching of a canonical diagram plan.

    Every real source row is paired with its heaviest column (ties go to the
    lower index); the last column stands for the diagonal. Rows whose
    maximum is below MIN_PAIR_MASS are left out.
    """
    plan = pi_e.plan if isinstance(pi_e, Coupling) else np.asarray(pi_e, dtype=float)
    n_real_rows, diagonal_col = plan.shape[0] - 1, plan.shape[1] - 1
    pairs, mass = [], []
    for k in range(n_real_rows):
        col = int(np.argmax(plan[k]))
        value = float(plan[k, col])
        if value < MIN_PAIR_MASS:
            continue
        pairs.append((k, DIAGONAL if col == diagonal_col else col))
        mass.append(value)
    return GeneratorMatching(tuple(pairs), tuple(mass))


def baseline_matching(D: np.ndarray, D_prime: np.ndarray) -> Tuple[GeneratorMatching, float]:
    """Optimal W2 diagram matching as a GeneratorMatching (unit mass per pair) and its distance."""
    pairs, distance = pd_wasserstein_baseline(D, D_prime)
    targets = dict(pairs)
    n_source = np.asarray(D).reshape(-1, 2).shape[0]
    full = tuple((i, targets.get(i, DIAGONAL)) for i in range(n_source))
    return GeneratorMatching(full, tuple(1.0 for _ in full)), distance


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt(np.dot(xc, xc) * np.dot(yc, yc))
    if np.ptp(x) == 0 or np.ptp(y) == 0 or denom == 0:
        return 0.0
    return float(np.dot(xc, yc) / denom)


def matching_correlation(pi_v: Union[Coupling, np.ndarray], omega: np.ndarray,
                         omega_prime: np.ndarray, matching: GeneratorMatching) -> np.ndarray:
    """
    Pearson correlation between each matched target generator and the image
    of its source generator under the point plan.

    The source incidence column is pushed through the row-normalised plan,
    y = (pi_v / mu)^T omega[:, c], and compared with omega'[:, c']. Only
    real-real pairs are scored; constant vectors score 0.

    Returns:
        Array of correlations, one per real pair, in matching order
    """
    plan = pi_v.plan if isinstance(pi_v, Coupling) else np.asarray(pi_v, dtype=float)
    omega = np.asarray(omega, dtype=float)
    omega_prime = np.asarray(omega_prime, dtype=float)
    if plan.shape != (omega.shape[0], omega_prime.shape[0]):
        raise ValueError(f"pi_v shape {plan.shape} does not match incidences "
                         f"({omega.shape[0]}, {omega_prime.shape[0]})")

    row_mass = plan.sum(axis=1)
    conditional = np.divide(plan, row_mass[:, None], out=np.zeros_like(plan),
                            where=row_mass[:, None] > 0)
    scores = []
    for c, c_prime in matching.real_pairs():
        pushed = conditional.T @ omega[:, c]
        scores.append(_pearson(pushed, omega_prime[:, c_prime]))
    return np.array(scores, dtype=float)


def permutation_accuracy(matching: GeneratorMatching, truth: Sequence[int]) -> float:
    """
    Fraction of the ground-truth features whose matched target is correct.

    Args:
        matching: Matching to score
        truth: truth[i] is the correct target of source feature i
    """
    if len(truth) == 0:
        raise ValueError("truth must name at least one feature")
    assigned = matching.as_dict()
    hits = sum(1 for i, j in enumerate(truth) if assigned.get(i, DIAGONAL) == j and j != DIAGONAL)
    return hits / len(truth)
