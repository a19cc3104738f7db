from .interpolation import interpolate, geodesic_cost_identity, coupling_support
from .embedding import mds_embed, procrustes_align
from .frames import (
    GeodesicFrame, geodesic_frames, frame_diagram, write_frames_jsonl,
    read_frames_jsonl, write_frames_csv,
)

__all__ = [
    'interpolate',
    'geodesic_cost_identity',
    'coupling_support',
    'mds_embed',
    'procrustes_align',
    'GeodesicFrame',
    'geodesic_frames',
    'frame_diagram',
    'write_frames_jsonl',
    'read_frames_jsonl',
    'write_frames_csv',
]
