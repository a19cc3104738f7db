from .incidence import binary_incidence, smoothed_incidence
from .network import (
    NetworkOptions, MeasureTopologicalNetwork, AugmentedDiagramSide,
    build_network, network_from_persistence, augment_pair, network_summary, KERNELS, INCIDENCE_MODES,
)

__all__ = [
    'binary_incidence',
    'smoothed_incidence',
    'NetworkOptions',
    'MeasureTopologicalNetwork',
    'AugmentedDiagramSide',
    'build_network',
    'network_from_persistence',
    'augment_pair',
    'network_summary',
    'KERNELS',
    'INCIDENCE_MODES',
]
