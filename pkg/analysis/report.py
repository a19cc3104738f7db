"""
Report records and their text rendering.
"""

import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from .matching import DIAGONAL, GeneratorMatching, extract_matching

CORRELATION_DEFINITION = (
    "Pearson correlation between omega'[:, c'] and the source incidence column "
    "omega[:, c] pushed through the row-normalised point plan"
)


def matching_report(matching: GeneratorMatching, correlations: Optional[Sequence[float]] = None,
                    accuracy: Optional[float] = None) -> dict:
    """{pairs, masses, correlations, accuracy} with DIAGONAL written as null."""
    return {
        'pairs': [[i, None if j == DIAGONAL else j] for i, j in matching.pairs],
        'masses': list(matching.mass),
        'correlations': [float(c) for c in correlations] if correlations is not None else None,
        'accuracy': accuracy,
        'correlation_definition': CORRELATION_DEFINITION,
    }


def write_report(report: dict, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(report, f, indent=2)
    return path


def sweep_table(points) -> pd.DataFrame:
    """One row per sweep grid point: alpha, beta, objective, gw, pd, cross, matching."""
    rows = []
    for point in points:
        matching = extract_matching(point.result.pair.pi_e)
        rows.append({
            'alpha': point.alpha,
            'beta': point.beta,
            'objective': point.result.objective,
            **point.result.term_breakdown,
            'matching': ' '.join(f"{i}->{'D' if j == DIAGONAL else j}" for i, j in matching.pairs),
        })
    return pd.DataFrame(rows, columns=['alpha', 'beta', 'objective', 'gw', 'pd', 'cross', 'matching'])


class ReportFormatter:
    """Utilities for formatting solver and tracking results into readable text."""

    @staticmethod
    def format_network_summary(summary: Dict) -> str:
        """
        Format the output of network_summary.

        Args:
            summary: Dictionary with n_points, n_features and top persistences

        Returns:
            Formatted multi-line string suitable for console output
        """
        lines = []
        lines.append("=" * 80)
        lines.append("NETWORK")
        lines.append("=" * 80)
        lines.append(f"Points (N):        {summary['n_points']}")
        lines.append(f"Features (M):      {summary['n_features']}")
        lines.append(f"Degree:            {summary.get('degree', 'N/A')}")
        lines.append(f"Kernel:            {summary.get('kernel', 'N/A')}")
        if summary['top_persistence']:
            lines.append("")
            lines.append("Top persistences:")
            for rank, (birth, death) in enumerate(summary['top_points'], start=1):
                lines.append(f"  {rank:>3}. ({birth:.4f}, {death:.4f})  persistence {death - birth:.4f}")
        lines.append("=" * 80)
        return "\n".join(lines)

    @staticmethod
    def format_solve(result) -> str:
        """Objective, term breakdown and iteration count of a TpotResult."""
        params = result.params
        lines = []
        lines.append("=" * 80)
        lines.append(f"TPOT SOLVE ({params.algorithm})")
        lines.append("=" * 80)
        lines.append(f"alpha = {params.alpha}, beta = {params.beta}"
                     + (f", eps_v = {params.eps_v}, eps_e = {params.eps_e}" if params.algorithm == 'entropic' else ""))
        lines.append(f"Iterations:        {result.n_iter} ({'converged' if result.converged else 'not converged'})")
        lines.append(f"Objective:         {result.objective:.6e}")
        lines.append("")
        lines.append("Term breakdown:")
        for name in ('gw', 'pd', 'cross'):
            lines.append(f"  {name:<6}           {result.term_breakdown[name]:.6e}")
        lines.append("=" * 80)
        return "\n".join(lines)

    @staticmethod
    def format_matching(matching: GeneratorMatching, correlations: Optional[Sequence[float]] = None,
                        title: str = "GENERATOR MATCHING") -> str:
        """Table of matched pairs, with correlations for real pairs when given."""
        if not len(matching):
            return "No features matched."
        corr_iter = iter(correlations) if correlations is not None else None
        lines = []
        lines.append("=" * 60)
        lines.append(title)
        lines.append("=" * 60)
        lines.append(f"{'Source':<10} {'Target':<10} {'Mass':<14} {'Correlation':<12}")
        lines.append("-" * 60)
        for (i, j), mass in zip(matching.pairs, matching.mass):
            target = 'diagonal' if j == DIAGONAL else str(j)
            corr = ''
            if corr_iter is not None and j != DIAGONAL:
                corr = f"{next(corr_iter):.4f}"
            lines.append(f"{i:<10} {target:<10} {mass:<14.6g} {corr:<12}")
        lines.append("=" * 60)
        return "\n".join(lines)

    @staticmethod
    def format_track_summary(report: Dict) -> str:
        """Per-step mean correlations for both methods plus lineage count."""
        lines = []
        lines.append("=" * 80)
        lines.append("TRACKING SUMMARY")
        lines.append("=" * 80)
        lines.append(f"{'Step':<8} {'TpOT corr':<14} {'Baseline corr':<16} {'TpOT acc':<10} {'Baseline acc':<12}")
        lines.append("-" * 80)
        for step in report['steps']:
            tpot_corr = _mean_or_none(step['tpot']['correlations'])
            base_corr = _mean_or_none(step['baseline']['correlations'])
            tpot_acc = step['tpot']['accuracy']
            base_acc = step['baseline']['accuracy']
            lines.append(f"{step['step']:<8} {_fmt(tpot_corr):<14} {_fmt(base_corr):<16} "
                         f"{_fmt(tpot_acc):<10} {_fmt(base_acc):<12}")
        lines.append("-" * 80)
        lines.append(f"Mean correlation:  TpOT {_fmt(report['mean_correlation']['tpot'])}, "
                     f"baseline {_fmt(report['mean_correlation']['baseline'])}")
        lines.append(f"Lineages:          {len(report['lineages'])}")
        lines.append("=" * 80)
        return "\n".join(lines)

    @staticmethod
    def format_sweep(table: pd.DataFrame) -> str:
        if table.empty:
            return "Empty sweep."
        return table.to_string(index=False, float_format=lambda v: f"{v:.4e}")


def _mean_or_none(values: Optional[List[float]]) -> Optional[float]:
    if not values:
        return None
    return float(np.mean(values))


def _fmt(value: Optional[float]) -> str:
    return 'N/A' if value is None else f"{value:.4f}"
