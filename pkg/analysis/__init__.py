from .matching import (
    DIAGONAL, GeneratorMatching, extract_matching, baseline_matching,
    matching_correlation, permutation_accuracy,
)
from .lineages import Lineage, chain_lineages
from .report import matching_report, write_report, sweep_table, ReportFormatter, CORRELATION_DEFINITION
from .tracking import track_sequence

__all__ = [
    'DIAGONAL',
    'GeneratorMatching',
    'extract_matching',
    'baseline_matching',
    'matching_correlation',
    'permutation_accuracy',
    'Lineage',
    'chain_lineages',
    'matching_report',
    'write_report',
    'sweep_table',
    'ReportFormatter',
    'CORRELATION_DEFINITION',
    'track_sequence',
]
