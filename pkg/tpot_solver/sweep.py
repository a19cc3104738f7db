import itertools
import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

from topo_network import MeasureTopologicalNetwork
from workers import RoundRobinWorkerPool
from .params import TpotParams
from .results import TpotResult
from .solve import solve

logger = logging.getLogger(__name__)


@dataclass
class SweepPoint:
    alpha: float
    beta: float
    result: TpotResult


def parameter_sweep(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                    alphas: Sequence[float], betas: Sequence[float],
                    base: Optional[TpotParams] = None, num_workers: int = 1) -> List[SweepPoint]:
    """Solve once per (alpha, beta) grid point; results follow alphas-major order."""
    base = base or TpotParams()
    grid = list(itertools.product(alphas, betas))
    logger.info(f"[parameter_sweep] {len(grid)} grid points, algorithm={base.algorithm}")

    def _run(point):
        alpha, beta = point
        return SweepPoint(alpha, beta, solve(P, P_prime, replace(base, alpha=alpha, beta=beta)))

    return RoundRobinWorkerPool(grid, _run, num_workers=num_workers).run()
