"""
Persistent homology over Z/2 by standard boundary-matrix column reduction.

Columns are sets of row indices; adding two columns is a symmetric
difference. Alongside R = D V the reduction keeps the columns of V for
simplices of the requested degree, so the representative cycle of a class
is V[:, birth].
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Set

from .diagram import PersistenceResult
from .filtration import Filtration, rips_filtration

logger = logging.getLogger(__name__)


def _boundary(simplex, index: Dict) -> Set[int]:
    if len(simplex) == 1:
        return set()
    return {index[face] for face in combinations(simplex, len(simplex) - 1)}


def _reduce_columns(f: Filtration, index: Dict, dim: int, track_chains: bool,
                    stop_after: Optional[int] = None, last_col: Optional[int] = None):
    """
    Reduce the columns of dimension `dim` in filtration order.

    Reduction is left to right, so stopping early leaves every column seen
    so far fully reduced.

    Args:
        stop_after: stop once this many columns have a pivot
        last_col: stop after this filtration position

    Returns:
        (low_to_col, zero_cols, chains) where low_to_col maps a pivot row to
        its column, zero_cols lists columns that reduced to zero and chains
        maps each column to its V column (only when track_chains is set).
    """
    low_to_col: Dict[int, int] = {}
    reduced: Dict[int, Set[int]] = {}
    chains: Dict[int, Set[int]] = {}
    zero_cols: List[int] = []
    if stop_after is not None and stop_after <= 0:
        return low_to_col, zero_cols, chains

    for j, simplex in enumerate(f.simplices):
        if last_col is not None and j > last_col:
            break
        if len(simplex) - 1 != dim:
            continue
        column = _boundary(simplex, index)
        chain = {j} if track_chains else None
        while column:
            pivot = max(column)
            other = low_to_col.get(pivot)
            if other is None:
                break
            column ^= reduced[other]
            if track_chains:
                chain ^= chains[other]
        if track_chains:
            chains[j] = chain
        if not column:
            zero_cols.append(j)
            continue
        low_to_col[max(column)] = j
        reduced[j] = column
        if stop_after is not None and len(low_to_col) >= stop_after:
            break
    return low_to_col, zero_cols, chains


def persistent_homology(f: Filtration, degree: int = 1) -> PersistenceResult:
    """
    Finite persistence pairs of one degree, with representative cycles.

    A pair (sigma, tau) is emitted when the reduced column of the
    (degree+1)-simplex tau has pivot sigma and tau enters strictly later
    than sigma. Classes that never die below the threshold are dropped.

    The (degree+1)-columns are reduced only until every class that can die
    has died, and V is only tracked up to the last paired birth.

    Args:
        f: Rips filtration built with max_dim >= degree
        degree: Homology degree

    Returns:
        PersistenceResult ordered by the birth simplex's filtration position
    """
    if degree < 0 or degree > f.max_dim:
        raise ValueError(f"degree must lie in [0, {f.max_dim}], got {degree}")

    # One connected component is always essential
    expected_essential = 1 if degree == 0 else 0

    index = f.index()
    _, birth_cols, _ = _reduce_columns(f, index, degree, track_chains=False)
    death_pivots, _, _ = _reduce_columns(f, index, degree + 1, track_chains=False,
                                         stop_after=len(birth_cols) - expected_essential)
    paired = [sigma for sigma in birth_cols if sigma in death_pivots]
    chains: Dict[int, Set[int]] = {}
    if paired:
        _, _, chains = _reduce_columns(f, index, degree, track_chains=True, last_col=max(paired))

    points = []
    generators = []
    cycles = []
    for sigma in paired:
        tau = death_pivots[sigma]
        birth, death = f.values[sigma], f.values[tau]
        if death <= birth:
            continue
        chain = sorted(chains[sigma])
        cycle = tuple(f.simplices[c] for c in chain)
        points.append((birth, death))
        generators.append(tuple(sorted({v for simplex in cycle for v in simplex})))
        cycles.append(cycle)

    essential = len(birth_cols) - len(paired)
    if essential > expected_essential:
        logger.warning(f"Dropped {essential - expected_essential} essential degree-{degree} "
                       f"classes alive at threshold {f.threshold:.6g}")

    logger.debug(f"Degree-{degree} diagram: {len(points)} finite points")
    return PersistenceResult(degree=degree, points=points, generators=tuple(generators),
                             cycles=tuple(cycles))


def boundary_of_chain(f: Filtration, chain) -> Set[tuple]:
    """Z/2 boundary of a chain given as simplex tuples; empty for a cycle."""
    boundary: Set[tuple] = set()
    for simplex in chain:
        if len(simplex) == 1:
            continue
        for face in combinations(simplex, len(simplex) - 1):
            boundary ^= {face}
    return boundary


def is_cycle_at(f: Filtration, chain, value: float) -> bool:
    """True when the chain has zero boundary and every simplex is alive at `value`."""
    index = f.index()
    alive = all(f.values[index[s]] <= value for s in chain)
    return alive and not boundary_of_chain(f, chain)


def compute_persistence(dists, degree: int = 1, threshold: Optional[float] = None) -> PersistenceResult:
    """Rips filtration plus reduction in one call."""
    return persistent_homology(rips_filtration(dists, max_dim=max(1, degree), threshold=threshold), degree)
