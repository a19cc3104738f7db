from typing import Optional

from topo_network import MeasureTopologicalNetwork
from .bcd import solve_bcd
from .entropic import solve_entropic
from .objective import CouplingPair
from .params import TpotParams
from .results import TpotResult


def solve(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
          params: Optional[TpotParams] = None, init: Optional[CouplingPair] = None) -> TpotResult:
    """Run the solver named by params.algorithm."""
    params = params or TpotParams()
    params.validate()
    if params.algorithm == 'bcd':
        return solve_bcd(P, P_prime, params, init=init)
    return solve_entropic(P, P_prime, params, init=init)
