from .filtration import Filtration, rips_filtration
from .diagram import PersistenceResult, top_k_features, diagram_from_pairs
from .reduction import persistent_homology, boundary_of_chain, is_cycle_at, compute_persistence

__all__ = [
    'Filtration',
    'rips_filtration',
    'PersistenceResult',
    'top_k_features',
    'diagram_from_pairs',
    'persistent_homology',
    'boundary_of_chain',
    'is_cycle_at',
    'compute_persistence',
]
