from .coupling import Coupling, product_coupling, canonical_pi_e, restore_corner
from .sinkhorn import sinkhorn, check_marginals
from .exact import exact_ot, round_to_vertex
from .pd_cost import pd_cost_matrix, diagonal_cost
from .tensors import square_loss_tensor, gw_tensor, coot_tensor

__all__ = [
    'Coupling',
    'product_coupling',
    'canonical_pi_e',
    'restore_corner',
    'sinkhorn',
    'check_marginals',
    'exact_ot',
    'round_to_vertex',
    'pd_cost_matrix',
    'diagonal_cost',
    'square_loss_tensor',
    'gw_tensor',
    'coot_tensor',
]
