"""
Feature tracking across an ordered sequence of networks.

Consecutive snapshots are matched with TpOT and with the diagram-only
baseline; both matchings are scored with the same point plan.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from errors import ConfigError, ShapeMismatchError
from ot_core import Coupling
from topo_network import MeasureTopologicalNetwork
from tpot_solver import TpotParams, solve
from workers import RoundRobinWorkerPool
from .lineages import chain_lineages
from .matching import (
    GeneratorMatching, extract_matching, baseline_matching, matching_correlation,
    permutation_accuracy,
)
from .report import matching_report, CORRELATION_DEFINITION

logger = logging.getLogger(__name__)


def _known_correspondence(P: MeasureTopologicalNetwork, P_next: MeasureTopologicalNetwork) -> Coupling:
    if P.n_points != P_next.n_points:
        raise ShapeMismatchError(f"Known correspondence needs equal sizes, got {P.n_points} and {P_next.n_points}")
    return Coupling(np.diag(P.point_mass), P.point_mass, P_next.point_mass)


def _score(plan, P, P_next, matching: GeneratorMatching, truth) -> dict:
    correlations = matching_correlation(plan, P.incidence, P_next.incidence, matching)
    accuracy = permutation_accuracy(matching, truth) if truth is not None else None
    return matching_report(matching, correlations, accuracy)


def track_sequence(networks: Sequence[MeasureTopologicalNetwork], params: Optional[TpotParams] = None,
                   known_correspondence: bool = False,
                   feature_truth: Optional[Sequence[Sequence[int]]] = None,
                   num_workers: int = 1) -> dict:
    """
    Match features between every pair of consecutive snapshots.

    Args:
        networks: snapshots in time order
        params: TpOT solver parameters
        known_correspondence: points keep their index across snapshots; the
            identity plan is then used to score both methods
        feature_truth: per step, the correct target of every source feature
        num_workers: consecutive-pair solves run in a worker pool

    Returns:
        Report dict with per-step results for both methods, TpOT and
        baseline lineages, and mean correlations
    """
    if len(networks) < 2:
        raise ConfigError(f"Tracking needs at least 2 snapshots, got {len(networks)}")
    if feature_truth is not None and len(feature_truth) != len(networks) - 1:
        raise ConfigError(f"feature_truth needs {len(networks) - 1} steps, got {len(feature_truth)}")
    params = params or TpotParams()

    def _step(step: int) -> dict:
        P, P_next = networks[step], networks[step + 1]
        result = solve(P, P_next, params)
        tpot = extract_matching(result.pair.pi_e)
        baseline, distance = baseline_matching(P.diagram, P_next.diagram)
        plan = _known_correspondence(P, P_next) if known_correspondence else result.pair.pi_v
        truth = feature_truth[step] if feature_truth is not None else None
        return {
            'step': step,
            'objective': result.objective,
            'term_breakdown': result.term_breakdown,
            'baseline_distance': distance,
            'tpot': _score(plan, P, P_next, tpot, truth),
            'baseline': _score(plan, P, P_next, baseline, truth),
            '_matchings': (tpot, baseline),
        }

    steps = RoundRobinWorkerPool(list(range(len(networks) - 1)), _step, num_workers=num_workers).run()

    n_features = [P.n_features for P in networks]
    matchings = [step.pop('_matchings') for step in steps]
    lineages = chain_lineages([m for m, _ in matchings], n_features)
    baseline_lineages = chain_lineages([b for _, b in matchings], n_features)

    def _mean(method: str) -> Optional[float]:
        values = [c for step in steps for c in step[method]['correlations']]
        return float(np.mean(values)) if values else None

    report = {
        'n_snapshots': len(networks),
        'point_plan': 'known' if known_correspondence else 'tpot',
        'correlation_definition': CORRELATION_DEFINITION,
        'params': params.to_dict(),
        'steps': steps,
        'lineages': [lineage.to_dict() for lineage in lineages],
        'baseline_lineages': [lineage.to_dict() for lineage in baseline_lineages],
        'mean_correlation': {'tpot': _mean('tpot'), 'baseline': _mean('baseline')},
    }
    logger.info(f"[track_sequence] {len(steps)} steps, mean correlation "
                f"TpOT={report['mean_correlation']['tpot']}, baseline={report['mean_correlation']['baseline']}")
    return report
