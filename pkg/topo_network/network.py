"""
Discrete measure topological networks.

A network bundles a gauged measure space (affinity C, point masses mu), a
measured persistence diagram (points, masses nu) and the incidence matrix
omega linking points to diagram features.
"""

import json
import logging
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from errors import ConfigError, InputParseError
from geometry import (
    PointCloud, pairwise_sq_dists, euclidean_dists, gaussian_affinity,
    sym_normalized_laplacian, BANDWIDTH_RULES,
)
from persistence import PersistenceResult, rips_filtration, persistent_homology, top_k_features
from settings.config import BANDWIDTH_RULE
from .incidence import binary_incidence, smoothed_incidence

logger = logging.getLogger(__name__)

KERNELS = ('gaussian', 'sq_dist')
INCIDENCE_MODES = ('binary', 'smoothed')
MASS_TOL = 1e-12
# Masses of interpolated networks come from a solver plan
INTERPOLATED_MASS_TOL = 1e-9


@dataclass
class NetworkOptions:
    """How to turn a point cloud into a network."""

    kernel: str = 'gaussian'
    bandwidth: str = BANDWIDTH_RULE
    degree: int = 1
    top_k: Optional[int] = None
    threshold: Optional[float] = None
    incidence: str = 'binary'
    smoothing: float = 1.0
    counting_measure: bool = False
    normalize_affinity: bool = False

    def validate(self) -> None:
        if self.kernel not in KERNELS:
            raise ConfigError(f"kernel must be one of {KERNELS}, got '{self.kernel}'")
        if self.bandwidth not in BANDWIDTH_RULES:
            raise ConfigError(f"bandwidth must be one of {BANDWIDTH_RULES}, got '{self.bandwidth}'")
        if self.incidence not in INCIDENCE_MODES:
            raise ConfigError(f"incidence must be one of {INCIDENCE_MODES}, got '{self.incidence}'")
        if self.degree < 1:
            raise ConfigError(f"degree must be >= 1, got {self.degree}")
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError(f"top_k must be >= 1, got {self.top_k}")
        if self.smoothing < 0:
            raise ConfigError(f"smoothing must be >= 0, got {self.smoothing}")
        if self.threshold is not None and self.threshold <= 0:
            raise ConfigError(f"threshold must be positive, got {self.threshold}")


@dataclass(frozen=True, eq=False)
class MeasureTopologicalNetwork:
    """
    ((X, C, mu), (Y, diagram, nu), omega) in matrix form.

    affinity: (N, N) symmetric gauge
    point_mass: (N,) probability vector
    diagram: (M, 2) birth/death points
    diagram_mass: (M,) positive masses
    incidence: (N, M) nonnegative
    """

    affinity: np.ndarray
    point_mass: np.ndarray
    diagram: np.ndarray
    diagram_mass: np.ndarray
    incidence: np.ndarray
    meta: dict = field(default_factory=dict)
    # Interpolated networks may hold diagram points on the diagonal
    allow_diagonal: bool = False

    def __post_init__(self):
        affinity = np.array(self.affinity, dtype=float)
        mu = np.array(self.point_mass, dtype=float).reshape(-1)
        diagram = np.array(self.diagram, dtype=float).reshape(-1, 2)
        nu = np.array(self.diagram_mass, dtype=float).reshape(-1)
        omega = np.array(self.incidence, dtype=float)
        if omega.ndim != 2:
            omega = omega.reshape(mu.size, nu.size)

        n, m = mu.size, nu.size
        if affinity.shape != (n, n):
            raise ValueError(f"affinity shape {affinity.shape} does not match {n} points")
        if not np.array_equal(affinity, affinity.T):
            raise ValueError("affinity must be symmetric")
        if not np.all(np.isfinite(affinity)):
            raise ValueError("affinity entries must be finite")
        mass_tol = INTERPOLATED_MASS_TOL if self.allow_diagonal else MASS_TOL
        if np.any(mu < 0) or abs(mu.sum() - 1.0) > mass_tol:
            raise ValueError(f"point_mass must be nonnegative and sum to 1, sums to {mu.sum()!r}")
        if diagram.shape[0] != m:
            raise ValueError(f"{diagram.shape[0]} diagram points but {m} masses")
        if np.any(nu <= 0):
            raise ValueError("diagram_mass entries must be positive")
        if self.allow_diagonal:
            if np.any(diagram[:, 1] < diagram[:, 0]):
                raise ValueError("diagram points must satisfy death >= birth")
        elif np.any(diagram[:, 1] <= diagram[:, 0]):
            raise ValueError("diagram points must satisfy death > birth")
        if omega.shape != (n, m):
            raise ValueError(f"incidence shape {omega.shape} does not match ({n}, {m})")
        if not np.all(np.isfinite(omega)) or np.any(omega < 0):
            raise ValueError("incidence entries must be finite and nonnegative")

        for name, value in (('affinity', affinity), ('point_mass', mu), ('diagram', diagram),
                            ('diagram_mass', nu), ('incidence', omega)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n_points(self) -> int:
        return self.point_mass.size

    @property
    def n_features(self) -> int:
        return self.diagram_mass.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasureTopologicalNetwork):
            return NotImplemented
        return all(np.array_equal(getattr(self, name), getattr(other, name))
                   for name in ('affinity', 'point_mass', 'diagram', 'diagram_mass', 'incidence'))

    def permuted(self, perm) -> 'MeasureTopologicalNetwork':
        """Relabel points: row/column i of the result is point perm[i]."""
        perm = np.asarray(perm)
        return MeasureTopologicalNetwork(
            affinity=self.affinity[np.ix_(perm, perm)],
            point_mass=self.point_mass[perm],
            diagram=self.diagram,
            diagram_mass=self.diagram_mass,
            incidence=self.incidence[perm],
            meta=dict(self.meta),
            allow_diagonal=self.allow_diagonal,
        )

    def to_dict(self) -> dict:
        return {
            'affinity': self.affinity.tolist(),
            'point_mass': self.point_mass.tolist(),
            'diagram': self.diagram.tolist(),
            'diagram_mass': self.diagram_mass.tolist(),
            'incidence': self.incidence.tolist(),
            'meta': self.meta,
            'allow_diagonal': self.allow_diagonal,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'MeasureTopologicalNetwork':
        try:
            n = len(data['point_mass'])
            m = len(data['diagram_mass'])
            return cls(affinity=np.asarray(data['affinity'], dtype=float).reshape(n, n),
                       point_mass=data['point_mass'],
                       diagram=np.asarray(data['diagram'], dtype=float).reshape(m, 2),
                       diagram_mass=data['diagram_mass'],
                       incidence=np.asarray(data['incidence'], dtype=float).reshape(n, m),
                       meta=data.get('meta', {}),
                       allow_diagonal=bool(data.get('allow_diagonal', False)))
        except (KeyError, TypeError, ValueError) as e:
            raise InputParseError(f"malformed network record: {e}")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'MeasureTopologicalNetwork':
        with open(path) as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise InputParseError(e.msg, path=str(path), line=e.lineno)
        return cls.from_dict(data)


@dataclass(frozen=True, eq=False)
class AugmentedDiagramSide:
    """Diagram side with the virtual diagonal slot appended at index M."""

    diagram: np.ndarray
    mass: np.ndarray
    incidence: np.ndarray

    @property
    def n_slots(self) -> int:
        return self.mass.size


def _diagram_masses(n_features: int, counting_measure: bool) -> np.ndarray:
    if n_features == 0:
        return np.zeros(0)
    if counting_measure:
        return np.ones(n_features)
    return np.full(n_features, 1.0 / n_features)


def network_from_persistence(affinity: np.ndarray, persistence: PersistenceResult,
                             incidence: np.ndarray, counting_measure: bool = False,
                             meta: Optional[dict] = None) -> MeasureTopologicalNetwork:
    """Assemble a network with uniform point mass from precomputed pieces."""
    n = affinity.shape[0]
    return MeasureTopologicalNetwork(
        affinity=affinity,
        point_mass=np.full(n, 1.0 / n),
        diagram=persistence.points,
        diagram_mass=_diagram_masses(len(persistence), counting_measure),
        incidence=incidence,
        meta=meta or {},
    )


def build_network(pc: PointCloud, opts: Optional[NetworkOptions] = None,
                  persistence: Optional[PersistenceResult] = None) -> MeasureTopologicalNetwork:
    """
    Build a measure topological network from a point cloud.

    Args:
        pc: Input points
        opts: Kernel, persistence and incidence choices
        persistence: Externally computed persistence to use instead of the
            built-in Rips reduction (generator indices must be < N)

    Returns:
        MeasureTopologicalNetwork; M = 0 when the diagram is empty

    Example:
        >>> net = build_network(pc, NetworkOptions(top_k=1))
        >>> net.n_features
        1
    """
    opts = opts or NetworkOptions()
    opts.validate()

    if opts.kernel == 'gaussian':
        affinity = gaussian_affinity(pc, bandwidth=opts.bandwidth)
    else:
        affinity = pairwise_sq_dists(pc)
    if opts.normalize_affinity and affinity.max() > 0:
        affinity = affinity / affinity.max()

    if persistence is None:
        filtration = rips_filtration(euclidean_dists(pc), max_dim=opts.degree, threshold=opts.threshold)
        persistence = persistent_homology(filtration, degree=opts.degree)
    elif persistence.max_index() >= pc.n_points:
        raise ValueError(f"Generator index {persistence.max_index()} out of range for {pc.n_points} points")
    if opts.top_k is not None:
        persistence = top_k_features(persistence, opts.top_k)

    omega = binary_incidence(pc.n_points, persistence.generators)
    if opts.incidence == 'smoothed':
        if pc.n_points > 1:
            laplacian = sym_normalized_laplacian(gaussian_affinity(pc, bandwidth=opts.bandwidth))
            omega = smoothed_incidence(omega, laplacian, opts.smoothing)

    meta = {
        'degree': opts.degree,
        'kernel': opts.kernel,
        'smoothing': opts.smoothing if opts.incidence == 'smoothed' else None,
        'options': asdict(opts),
    }
    network = network_from_persistence(affinity, persistence, omega,
                                       counting_measure=opts.counting_measure, meta=meta)
    logger.info(f"Built network: N={network.n_points}, M={network.n_features}, kernel={opts.kernel}")
    return network


def augment_pair(P: MeasureTopologicalNetwork,
                 P_prime: MeasureTopologicalNetwork) -> Tuple[AugmentedDiagramSide, AugmentedDiagramSide]:
    """
    Append the diagonal slot to both diagram sides.

    Each diagonal slot carries the other diagram's total mass, so both
    augmented mass vectors sum to total(nu) + total(nu').
    """
    total = float(P.diagram_mass.sum())
    total_prime = float(P_prime.diagram_mass.sum())

    def _side(net: MeasureTopologicalNetwork, other_total: float) -> AugmentedDiagramSide:
        return AugmentedDiagramSide(
            diagram=net.diagram,
            mass=np.append(net.diagram_mass, other_total),
            incidence=np.hstack([net.incidence, np.zeros((net.n_points, 1))]),
        )

    return _side(P, total_prime), _side(P_prime, total)


def network_summary(P: MeasureTopologicalNetwork, top: int = 5) -> dict:
    """N, M and the most persistent diagram points of a network."""
    persistence = P.diagram[:, 1] - P.diagram[:, 0]
    order = np.argsort(-persistence, kind='stable')[:top]
    return {
        'n_points': P.n_points,
        'n_features': P.n_features,
        'degree': P.meta.get('degree'),
        'kernel': P.meta.get('kernel'),
        'top_points': [[float(b), float(d)] for b, d in P.diagram[order]],
        'top_persistence': [float(v) for v in persistence[order]],
    }
