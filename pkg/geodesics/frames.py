"""
Plot-ready frames of a geodesic: MDS coordinates of the interpolated
display gauge at a grid of t values, each aligned to the previous frame.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from errors import EmptySupportError, ConfigError
from persistence import PersistenceResult, compute_persistence
from topo_network import MeasureTopologicalNetwork
from tpot_solver import CouplingPair
from workers import ChunkedWorkerPool
from .embedding import mds_embed, procrustes_align
from .interpolation import coupling_support

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GeodesicFrame:
    """Interpolated gauge C_t on the pi_v support and its embedding."""

    t: float
    support: List[Tuple[int, int]]
    interp_cost: np.ndarray
    coords: np.ndarray

    def to_dict(self) -> dict:
        return {'t': self.t, 'support': [list(p) for p in self.support], 'coords': self.coords.tolist()}


def _frames_for(ts: List[float], support, display, d_embed: int) -> List[GeodesicFrame]:
    C, C_prime = display
    rows = np.array([i for i, _ in support])
    cols = np.array([j for _, j in support])
    C_sub = C[np.ix_(rows, rows)]
    C_prime_sub = C_prime[np.ix_(cols, cols)]
    frames = []
    for t in ts:
        C_t = (1.0 - t) * C_sub + t * C_prime_sub
        frames.append(GeodesicFrame(t, support, C_t, mds_embed(C_t, d_embed)))
    return frames


def geodesic_frames(P: MeasureTopologicalNetwork, P_prime: MeasureTopologicalNetwork,
                    pair: CouplingPair, n_frames: int = 11, d_embed: int = 2,
                    display: Optional[Tuple[np.ndarray, np.ndarray]] = None,
                    num_workers: int = 1) -> List[GeodesicFrame]:
    """
    Frames at t = 0, 1/(n-1), ..., 1.

    Args:
        P, P_prime: endpoint networks
        pair: vertex-rounded pair
        n_frames: number of frames, >= 2
        d_embed: embedding dimension
        display: (C, C') squared-distance gauges to interpolate for display;
            defaults to the networks' own affinities
        num_workers: frames are embedded in contiguous chunks concurrently

    Returns:
        Frames in t order, each Procrustes-aligned to its predecessor
    """
    if n_frames < 2:
        raise ConfigError(f"n_frames must be >= 2, got {n_frames}")
    support = coupling_support(pair.pi_v)
    if not support:
        raise EmptySupportError("pi_v has no positive entries")
    display = display if display is not None else (P.affinity, P_prime.affinity)
    if display[0].shape != P.affinity.shape or display[1].shape != P_prime.affinity.shape:
        raise ValueError("display gauges must match the network sizes")

    ts = list(np.linspace(0.0, 1.0, n_frames))
    workers = max(1, min(num_workers, n_frames))
    chunks = ChunkedWorkerPool(ts, _frames_for, func_args=(support, display, d_embed),
                               num_workers=workers).run()
    frames = [frame for chunk in chunks for frame in chunk]

    aligned = [frames[0]]
    for frame in frames[1:]:
        coords = procrustes_align(aligned[-1].coords, frame.coords)
        aligned.append(GeodesicFrame(frame.t, frame.support, frame.interp_cost, coords))
    logger.info(f"[geodesic_frames] {len(aligned)} frames on {len(support)} support points")
    return aligned


def frame_diagram(frame: GeodesicFrame, degree: int = 1,
                  threshold: Optional[float] = None) -> PersistenceResult:
    """Rips persistence of a frame, reading interp_cost as squared distances."""
    dists = np.sqrt(np.clip(frame.interp_cost, 0.0, None))
    np.fill_diagonal(dists, 0.0)
    return compute_persistence(dists, degree=degree, threshold=threshold)


def write_frames_jsonl(frames: Sequence[GeodesicFrame], path: Union[str, Path]) -> Path:
    """One JSON object {t, support, coords} per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        for frame in frames:
            f.write(json.dumps(frame.to_dict()) + '\n')
    return path


def read_frames_jsonl(path: Union[str, Path]) -> List[dict]:
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def write_frames_csv(frames: Sequence[GeodesicFrame], out_dir: Union[str, Path]) -> List[Path]:
    """frame_XXX.csv per frame with columns i, j, x0..x{d-1}."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for idx, frame in enumerate(frames):
        df = pd.DataFrame(frame.coords, columns=[f'x{k}' for k in range(frame.coords.shape[1])])
        df.insert(0, 'j', [j for _, j in frame.support])
        df.insert(0, 'i', [i for i, _ in frame.support])
        df.insert(0, 't', frame.t)
        path = out_dir / f'frame_{idx:03d}.csv'
        df.to_csv(path, index=False)
        paths.append(path)
    return paths
