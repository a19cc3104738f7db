"""
Persistence diagrams with one representative cycle per point.

This is also the ingestion format for persistence computed elsewhere:
{"degree": 1, "points": [[b, d], ...], "generators": [[i, j, ...], ...]}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np

from errors import InputParseError


@dataclass(frozen=True, eq=False)
class PersistenceResult:
    """Finite (birth, death) pairs in one degree, each with a vertex generator."""

    degree: int
    points: np.ndarray
    generators: Tuple[Tuple[int, ...], ...]
    # Simplex chains behind each generator; empty for ingested results
    cycles: Tuple[Tuple[Tuple[int, ...], ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        gens = tuple(tuple(sorted(int(i) for i in g)) for g in self.generators)
        if len(gens) != pts.shape[0]:
            raise ValueError(f"{pts.shape[0]} diagram points but {len(gens)} generators")
        if np.any(pts[:, 1] <= pts[:, 0]):
            raise ValueError("Every diagram point must have death > birth")
        if any(len(g) == 0 for g in gens):
            raise ValueError("Generators must be nonempty")
        if any(min(g) < 0 for g in gens):
            raise ValueError("Generator indices must be nonnegative")
        pts.setflags(write=False)
        object.__setattr__(self, 'points', pts)
        object.__setattr__(self, 'generators', gens)

    def __len__(self) -> int:
        return self.points.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceResult):
            return NotImplemented
        return (self.degree == other.degree
                and np.array_equal(self.points, other.points)
                and self.generators == other.generators)

    @property
    def persistence(self) -> np.ndarray:
        return self.points[:, 1] - self.points[:, 0]

    def max_index(self) -> int:
        return max((max(g) for g in self.generators), default=-1)

    def to_dict(self) -> dict:
        return {
            'degree': int(self.degree),
            'points': self.points.tolist(),
            'generators': [list(g) for g in self.generators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'PersistenceResult':
        try:
            return cls(degree=int(data['degree']),
                       points=np.asarray(data['points'], dtype=float).reshape(-1, 2),
                       generators=tuple(tuple(g) for g in data['generators']))
        except (KeyError, TypeError) as e:
            raise InputParseError(f"malformed persistence record: {e}")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'PersistenceResult':
        with open(path) as f:
            return cls.from_dict(json.load(f))


def top_k_features(result: PersistenceResult, k: int) -> PersistenceResult:
    """
    Keep the k most persistent points.

    Ties are broken by earlier birth, then by lower original index; the
    kept points stay in their original order.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k >= len(result):
        return result

    order = sorted(range(len(result)),
                   key=lambda i: (-result.persistence[i], result.points[i, 0], i))
    keep = sorted(order[:k])
    cycles = tuple(result.cycles[i] for i in keep) if result.cycles else ()
    return PersistenceResult(degree=result.degree,
                             points=result.points[keep],
                             generators=tuple(result.generators[i] for i in keep),
                             cycles=cycles)


def diagram_from_pairs(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    """(M, 2) float array from a list of (birth, death) pairs, M may be 0."""
    return np.asarray(list(pairs), dtype=float).reshape(-1, 2)
