"""
Seeded synthetic point clouds.

Every generator takes a seed (or a numpy Generator) and returns a
LabeledCloud: the points plus an integer label per point naming the loop,
petal or part it was sampled from. Noise is Gaussian with standard
deviation `noise` times the shape's scale.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from errors import ConfigError
from geometry import PointCloud

logger = logging.getLogger(__name__)

DEFAULT_NOISE = 0.05
# Gaps between consecutive loop centres; uneven so the chain has no mirror symmetry
CHAIN_GAPS = (2.6, 3.1, 2.8, 3.4, 2.7, 3.0, 3.3, 2.9, 3.2, 2.75, 3.05)

SeedLike = Union[int, np.random.Generator, None]


class LabeledCloud(NamedTuple):
    cloud: PointCloud
    labels: np.ndarray


def _rng(seed: SeedLike) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _split(n: int, parts: int) -> List[int]:
    base, extra = divmod(n, parts)
    return [base + (1 if k < extra else 0) for k in range(parts)]


def _circle(n: int, radius: float, center: Sequence[float], rng, noise: float) -> np.ndarray:
    theta = 2 * np.pi * (np.arange(n) + rng.uniform(0, 1, n)) / n
    pts = np.column_stack([np.cos(theta), np.sin(theta)]) * radius + np.asarray(center, dtype=float)
    return pts + rng.normal(0.0, noise * radius, pts.shape)


def noisy_circle(n: int = 50, radius: float = 1.0, noise: float = DEFAULT_NOISE,
                 seed: SeedLike = 0) -> LabeledCloud:
    rng = _rng(seed)
    return LabeledCloud(PointCloud(_circle(n, radius, (0.0, 0.0), rng, noise)), np.zeros(n, dtype=int))


def four_circles(n: int = 200, noise: float = DEFAULT_NOISE, seed: SeedLike = 0) -> LabeledCloud:
    """Four unit circles on the corners of a square of side 3."""
    rng = _rng(seed)
    centers = [(-1.5, 1.5), (1.5, 1.5), (1.5, -1.5), (-1.5, -1.5)]
    blocks, labels = [], []
    for label, (count, center) in enumerate(zip(_split(n, 4), centers)):
        blocks.append(_circle(count, 1.0, center, rng, noise))
        labels.append(np.full(count, label))
    return LabeledCloud(PointCloud(np.vstack(blocks)), np.concatenate(labels))


def flower(n: int = 200, petals: int = 4, scale: float = 2.5, noise: float = DEFAULT_NOISE,
           seed: SeedLike = 0) -> LabeledCloud:
    """
    Petals of a rose curve r = scale * |cos(petals * theta / 2)|, each petal a loop
    through the centre. Petal p spans angles around 2 pi p / petals.
    """
    rng = _rng(seed)
    blocks, labels = [], []
    width = 2 * np.pi / petals
    for label, count in enumerate(_split(n, petals)):
        # open interval so petals do not share their tip point at the centre
        phi = (np.arange(count) + rng.uniform(0.05, 0.95, count)) / count
        theta = label * width + (phi - 0.5) * width
        r = scale * np.cos(petals * (theta - label * width) / 2)
        pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        blocks.append(pts + rng.normal(0.0, noise * scale / 2, pts.shape))
        labels.append(np.full(count, label))
    return LabeledCloud(PointCloud(np.vstack(blocks)), np.concatenate(labels))


def multi_loops(n: int = 200, arrangement: str = 'a', noise: float = DEFAULT_NOISE,
                seed: SeedLike = 0) -> LabeledCloud:
    """Three loops of radii 1.5, 1.0 and 0.5; arrangement 'a' in a row, 'b' in a triangle."""
    rng = _rng(seed)
    radii = (1.5, 1.0, 0.5)
    layouts = {
        'a': [(0.0, 0.0), (3.5, 0.0), (6.0, 0.0)],
        'b': [(0.0, 0.0), (3.0, 2.5), (3.0, -2.0)],
    }
    if arrangement not in layouts:
        raise ValueError(f"arrangement must be one of {sorted(layouts)}, got '{arrangement}'")
    # points proportional to circumference
    counts = _split_weighted(n, radii)
    blocks, labels = [], []
    for label, (count, radius, center) in enumerate(zip(counts, radii, layouts[arrangement])):
        blocks.append(_circle(count, radius, center, rng, noise))
        labels.append(np.full(count, label))
    return LabeledCloud(PointCloud(np.vstack(blocks)), np.concatenate(labels))


def _split_weighted(n: int, weights: Sequence[float]) -> List[int]:
    weights = np.asarray(weights, dtype=float)
    counts = np.floor(n * weights / weights.sum()).astype(int)
    counts[: n - counts.sum()] += 1
    return counts.tolist()


def mug(n: int = 200, noise: float = DEFAULT_NOISE, seed: SeedLike = 0) -> LabeledCloud:
    """Cup (label 0: closed-bottom cylinder of radius 1, height 2) with a handle loop (label 1)."""
    rng = _rng(seed)
    n_body, n_handle = n - n // 4, n // 4
    n_side = n_body - n_body // 4
    theta = rng.uniform(0, 2 * np.pi, n_side)
    side = np.column_stack([np.cos(theta), np.sin(theta), rng.uniform(0, 2, n_side)])
    n_bottom = n_body - n_side
    radius = np.sqrt(rng.uniform(0, 1, n_bottom))
    phi = rng.uniform(0, 2 * np.pi, n_bottom)
    bottom = np.column_stack([radius * np.cos(phi), radius * np.sin(phi), np.zeros(n_bottom)])
    # handle: half-ellipse in the xz-plane outside the cup wall
    psi = np.pi * (np.arange(n_handle) + 0.5) / n_handle - np.pi / 2
    handle = np.column_stack([1.0 + 0.7 * np.cos(psi), np.zeros(n_handle), 1.0 + 0.7 * np.sin(psi)])
    pts = np.vstack([side, bottom, handle])
    pts = pts + rng.normal(0.0, noise, pts.shape)
    labels = np.concatenate([np.zeros(n_body, dtype=int), np.ones(n_handle, dtype=int)])
    return LabeledCloud(PointCloud(pts), labels)


def solid_torus(n: int = 200, major: float = 2.0, minor: float = 0.6, noise: float = DEFAULT_NOISE,
                seed: SeedLike = 0) -> LabeledCloud:
    """Uniform-ish samples of a filled torus around the z axis."""
    rng = _rng(seed)
    u = rng.uniform(0, 2 * np.pi, n)
    v = rng.uniform(0, 2 * np.pi, n)
    rho = minor * np.sqrt(rng.uniform(0, 1, n))
    pts = np.column_stack([(major + rho * np.cos(v)) * np.cos(u),
                           (major + rho * np.cos(v)) * np.sin(u),
                           rho * np.sin(v)])
    pts = pts + rng.normal(0.0, noise, pts.shape)
    return LabeledCloud(PointCloud(pts), np.zeros(n, dtype=int))


def loop_chain(n_loops: int = 9, n_per_loop: int = 20, radius: float = 1.0, noise: float = 0.0,
               seed: SeedLike = 0) -> LabeledCloud:
    """
    Identical loops along the x axis with uneven gaps between centres.

    Points on each loop are evenly spaced (plus optional noise), so loop k
    is a translate of loop 0.
    """
    if n_loops > len(CHAIN_GAPS) + 1:
        raise ValueError(f"At most {len(CHAIN_GAPS) + 1} loops supported, got {n_loops}")
    rng = _rng(seed)
    centers = np.concatenate([[0.0], np.cumsum(CHAIN_GAPS[: n_loops - 1])])
    theta = 2 * np.pi * np.arange(n_per_loop) / n_per_loop
    ring = np.column_stack([np.cos(theta), np.sin(theta)]) * radius
    blocks = [ring + np.array([cx, 0.0]) for cx in centers]
    pts = np.vstack(blocks)
    if noise > 0:
        pts = pts + rng.normal(0.0, noise * radius, pts.shape)
    labels = np.repeat(np.arange(n_loops), n_per_loop)
    return LabeledCloud(PointCloud(pts), labels)


def _trefoil(n: int) -> np.ndarray:
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.sin(t) + 2 * np.sin(2 * t),
                            np.cos(t) - 2 * np.cos(2 * t),
                            -np.sin(3 * t)])


def _rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def trefoil_sequence(n_steps: int = 20, n_points: int = 100, angle_step: float = 0.08,
                     noise: float = 0.02, seed: SeedLike = 0) -> List[LabeledCloud]:
    """
    A discretised trefoil under a slow rigid motion with small jitter.

    Vertex k of every snapshot is the same vertex of the knot, so the point
    correspondence between snapshots is the identity.
    """
    rng = _rng(seed)
    base = _trefoil(n_points)
    axis = np.array([1.0, 2.0, 0.5])
    snapshots = []
    for step in range(n_steps):
        R = _rotation(axis, angle_step * step)
        shift = np.array([0.05, -0.03, 0.02]) * step
        pts = base @ R.T + shift + rng.normal(0.0, noise, base.shape)
        snapshots.append(LabeledCloud(PointCloud(pts), np.arange(n_points)))
    return snapshots


GENERATORS: Dict[str, Callable[..., LabeledCloud]] = {
    'circle': noisy_circle,
    'four_circles': four_circles,
    'flower': flower,
    'multi_loops': multi_loops,
    'mug': mug,
    'solid_torus': solid_torus,
    'loop_chain': loop_chain,
}
SEQUENCES: Dict[str, Callable[..., List[LabeledCloud]]] = {
    'trefoil_sequence': trefoil_sequence,
}


def generate(name: str, seed: SeedLike = 0, **kwargs) -> Union[LabeledCloud, List[LabeledCloud]]:
    """Look a generator up by name and run it."""
    if name in GENERATORS:
        return GENERATORS[name](seed=seed, **kwargs)
    if name in SEQUENCES:
        return SEQUENCES[name](seed=seed, **kwargs)
    raise ConfigError(f"Unknown example '{name}'; choose from {sorted(GENERATORS) + sorted(SEQUENCES)}")
