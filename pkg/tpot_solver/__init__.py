from .params import TpotParams, ALGORITHMS
from .objective import (
    CouplingPair, objective, grad_v, grad_e, term_breakdown, identity_pair,
    product_pair, balanced,
)
from .results import TpotResult
from .entropic import solve_entropic
from .bcd import solve_bcd, fused_gw_step
from .solve import solve
from .baseline import pd_wasserstein_baseline
from .sweep import SweepPoint, parameter_sweep

__all__ = [
    'TpotParams',
    'ALGORITHMS',
    'CouplingPair',
    'objective',
    'grad_v',
    'grad_e',
    'term_breakdown',
    'identity_pair',
    'product_pair',
    'balanced',
    'TpotResult',
    'solve_entropic',
    'solve_bcd',
    'fused_gw_step',
    'solve',
    'pd_wasserstein_baseline',
    'SweepPoint',
    'parameter_sweep',
]
