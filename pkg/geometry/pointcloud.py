"""
Point clouds and their file formats.

A point cloud is read from CSV (one point per row, no header), from a JSON
array of arrays, or from a whitespace separated vertex listing such as the
ones exported by knot simulation tools.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from errors import InputParseError, InvalidPointCloudError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointCloud:
    """N points of common dimension d, stored as a read-only (N, d) array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim == 1 and pts.size > 0:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InvalidPointCloudError(f"Expected an (N, d) array with N, d >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InvalidPointCloudError("Point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, 'points', pts)

    @classmethod
    def from_list(cls, rows: Sequence[Sequence[float]]) -> 'PointCloud':
        """Build from a list of vectors, rejecting ragged input."""
        rows = list(rows)
        if not rows:
            raise InvalidPointCloudError("Point cloud is empty")
        dims = {len(row) for row in rows}
        if len(dims) != 1:
            raise InvalidPointCloudError(f"All points must share one dimension, got {sorted(dims)}")
        return cls(np.asarray(rows, dtype=float))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n_points

    def permuted(self, perm: Sequence[int]) -> 'PointCloud':
        return PointCloud(self.points[np.asarray(perm)])


def _data_lines(path: Path, comment: Optional[str]) -> List[int]:
    """1-based file line numbers of the rows pandas keeps."""
    numbers = []
    with open(path) as f:
        for number, text in enumerate(f, start=1):
            text = text.strip()
            if text and not (comment and text.startswith(comment)):
                numbers.append(number)
    return numbers


def _read_csv(path: Path, sep: str = ',') -> PointCloud:
    comment = None if sep == ',' else '#'
    try:
        if sep == ',':
            df = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True)
        else:
            df = pd.read_csv(path, header=None, dtype=str, sep=r'\s+',
                             comment=comment, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise InputParseError("file contains no points", path=str(path))
    except pd.errors.ParserError as e:
        # pandas reports "Expected k fields in line L, saw m"
        line = None
        message = str(e)
        if ' line ' in message:
            try:
                line = int(message.split(' line ')[1].split(',')[0])
            except ValueError:
                line = None
        raise InputParseError(f"ragged row ({message})", path=str(path), line=line)

    cells = np.char.strip(df.fillna('').to_numpy(dtype=str))
    bad_rows = df.apply(lambda col: pd.to_numeric(col.str.strip(), errors='coerce')).isna().any(axis=1)
    if bad_rows.any():
        first_bad = int(np.flatnonzero(bad_rows.to_numpy())[0])
        lines = _data_lines(path, comment)
        line = lines[first_bad] if first_bad < len(lines) else None
        raise InputParseError(f"non-numeric coordinate in row {list(df.iloc[first_bad])}",
                              path=str(path), line=line)
    # parse the original text so values round-trip bit for bit
    return PointCloud(cells.astype(np.float64))


def _read_json(path: Path) -> PointCloud:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputParseError(e.msg, path=str(path), line=e.lineno)
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InputParseError("expected a JSON array of arrays", path=str(path))
    return PointCloud.from_list(data)


def read_point_cloud(path: Union[str, Path]) -> PointCloud:
    """
    Read a point cloud, choosing the format from the file extension.

    Args:
        path: `.csv`, `.json`, or `.txt`/`.xyz`/`.dat` (whitespace separated)

    Returns:
        PointCloud

    Raises:
        InputParseError: with the offending line number when it is known
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == '.json':
        pc = _read_json(path)
    elif suffix in ('.txt', '.xyz', '.dat'):
        pc = _read_csv(path, sep='whitespace')
    else:
        pc = _read_csv(path)
    logger.info(f"Read {pc.n_points} points of dimension {pc.dim} from {path.name}")
    return pc


def write_point_cloud(pc: PointCloud, path: Union[str, Path]) -> Path:
    """Write a point cloud as header-less CSV (or JSON if the suffix says so)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() == '.json':
        with open(path, 'w') as f:
            json.dump(pc.points.tolist(), f)
    else:
        pd.DataFrame(pc.points).to_csv(path, header=False, index=False, float_format='%.17g')
    return path
