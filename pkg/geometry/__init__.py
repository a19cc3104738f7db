from .pointcloud import PointCloud, read_point_cloud, write_point_cloud
from .kernels import (
    pairwise_sq_dists, euclidean_dists, gaussian_affinity, inverse_mean_bandwidth,
    median_bandwidth, resolve_bandwidth_rule, sym_normalized_laplacian, enclosing_radius,
    BANDWIDTH_RULES,
)

__all__ = [
    'PointCloud',
    'read_point_cloud',
    'write_point_cloud',
    'pairwise_sq_dists',
    'euclidean_dists',
    'gaussian_affinity',
    'inverse_mean_bandwidth',
    'median_bandwidth',
    'resolve_bandwidth_rule',
    'sym_normalized_laplacian',
    'enclosing_radius',
    'BANDWIDTH_RULES',
]
