"""
Vietoris-Rips filtrations.

A simplex enters at the largest pairwise distance among its vertices. The
complex is expanded one dimension above the requested homology degree so
that classes of that degree can die.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from errors import DegenerateComplexError

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class Filtration:
    """Simplices sorted by (value, dimension, vertex tuple)."""

    simplices: List[Simplex]
    values: np.ndarray
    n_vertices: int
    max_dim: int
    threshold: float

    def __len__(self) -> int:
        return len(self.simplices)

    def dimension(self, idx: int) -> int:
        return len(self.simplices[idx]) - 1

    def index(self) -> Dict[Simplex, int]:
        """Map each simplex to its position in filtration order."""
        return {s: i for i, s in enumerate(self.simplices)}

    def count_by_dim(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for s in self.simplices:
            counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
        return counts


def rips_filtration(dists: np.ndarray, max_dim: int = 1, threshold: Optional[float] = None) -> Filtration:
    """
    Build the Rips filtration up to dimension max_dim + 1.

    Args:
        dists: Symmetric (N, N) distance matrix
        max_dim: Highest homology degree of interest (>= 1)
        threshold: Largest edge length admitted (default: the enclosing radius)

    Returns:
        Filtration

    Raises:
        DegenerateComplexError: if max_dim >= N, so no max_dim-simplex can exist
    """
    dists = np.asarray(dists, dtype=float)
    n = dists.shape[0]
    if max_dim < 1:
        raise ValueError(f"max_dim must be >= 1, got {max_dim}")
    if max_dim >= n:
        raise DegenerateComplexError(f"Cannot build {max_dim}-simplices on {n} points")
    if threshold is None:
        threshold = float(np.min(np.max(dists, axis=1)))
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")

    adjacency = dists <= threshold
    np.fill_diagonal(adjacency, False)

    entries: List[Tuple[float, int, Simplex]] = [(0.0, 0, (i,)) for i in range(n)]
    layer: List[Tuple[Simplex, float]] = [((i,), 0.0) for i in range(n)]

    for dim in range(1, max_dim + 2):
        next_layer: List[Tuple[Simplex, float]] = []
        for simplex, value in layer:
            # Only extend by higher-numbered common neighbours: each simplex is built once
            common = np.all(adjacency[list(simplex)], axis=0)
            common[:simplex[-1] + 1] = False
            extensions = np.flatnonzero(common)
            if extensions.size == 0:
                continue
            new_values = np.maximum(value, dists[np.ix_(list(simplex), extensions)].max(axis=0))
            next_layer.extend((simplex + (int(v),), float(w)) for v, w in zip(extensions, new_values))
        entries.extend((value, dim, simplex) for simplex, value in next_layer)
        layer = next_layer
        if not layer:
            break

    entries.sort()
    simplices = [simplex for _, _, simplex in entries]
    values = np.array([value for value, _, _ in entries], dtype=float)
    logger.debug(f"Rips filtration: {len(simplices)} simplices on {n} points, threshold {threshold:.6g}")
    return Filtration(simplices=simplices, values=values, n_vertices=n,
                      max_dim=max_dim, threshold=float(threshold))
