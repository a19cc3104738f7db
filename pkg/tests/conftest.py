import logging

import numpy as np
import pytest

from geometry import PointCloud
from topo_network import MeasureTopologicalNetwork


def make_random_network(rng: np.random.Generator, n: int, m: int, dim: int = 2) -> MeasureTopologicalNetwork:
    """Network with a rescaled squared-distance gauge, uniform masses and random incidence."""
    x = rng.normal(size=(n, dim))
    diff = x[:, None, :] - x[None, :, :]
    C = np.sum(diff * diff, axis=-1)
    C = np.triu(C, 1) + np.triu(C, 1).T
    C = C / C.max() if C.max() > 0 else C
    birth = rng.uniform(0.0, 1.0, m)
    death = birth + rng.uniform(0.1, 1.0, m)
    return MeasureTopologicalNetwork(
        affinity=C,
        point_mass=np.full(n, 1.0 / n),
        diagram=np.column_stack([birth, death]),
        diagram_mass=np.full(m, 1.0 / m) if m else np.zeros(0),
        incidence=rng.uniform(0.0, 1.0, (n, m)),
    )


def circle_points(n: int, radius: float = 1.0, noise: float = 0.0, seed: int = 0,
                  center=(0.0, 0.0)) -> PointCloud:
    rng = np.random.default_rng(seed)
    theta = 2 * np.pi * np.arange(n) / n
    pts = np.column_stack([np.cos(theta), np.sin(theta)]) * radius + np.asarray(center)
    return PointCloud(pts + rng.normal(0.0, noise, pts.shape))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_network():
    return make_random_network


PACKAGES = ('geometry', 'persistence', 'topo_network', 'ot_core', 'tpot_solver',
            'geodesics', 'analysis', 'datasets', 'workers')


@pytest.fixture(autouse=True)
def reset_package_loggers():
    """CLI runs detach the package loggers from root; reattach them for caplog."""
    yield
    for package in PACKAGES:
        package_logger = logging.getLogger(package)
        for handler in package_logger.handlers:
            if isinstance(handler, logging.FileHandler):
                handler.close()
        package_logger.handlers = []
        package_logger.propagate = True
        package_logger.setLevel(logging.NOTSET)
