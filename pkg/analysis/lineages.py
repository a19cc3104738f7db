from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .matching import DIAGONAL, GeneratorMatching


@dataclass
class Lineage:
    """A feature followed through consecutive snapshots, starting at `start`."""

    start: int
    features: List[int] = field(default_factory=list)

    @property
    def end(self) -> int:
        return self.start + len(self.features) - 1

    def feature_at(self, snapshot: int) -> Optional[int]:
        if self.start <= snapshot <= self.end:
            return self.features[snapshot - self.start]
        return None

    def to_dict(self) -> dict:
        return {'start': self.start, 'features': list(self.features)}


def chain_lineages(step_matchings: Sequence[GeneratorMatching], n_features: Sequence[int]) -> List[Lineage]:
    """
    Chain per-step matchings into lineages.

    Args:
        step_matchings: matching from snapshot s to s+1, for each s
        n_features: number of diagram features per snapshot

    Returns:
        Lineages ordered by start snapshot then first feature. A lineage
        ends when its feature goes to the diagonal; target features no
        lineage reaches start new lineages.
    """
    if len(n_features) != len(step_matchings) + 1:
        raise ValueError(f"{len(n_features)} snapshots need {len(n_features) - 1} step matchings, "
                         f"got {len(step_matchings)}")

    active = {k: Lineage(0, [k]) for k in range(n_features[0])}
    lineages = list(active.values())
    for step, matching in enumerate(step_matchings):
        targets = matching.as_dict()
        next_active = {}
        for k, lineage in active.items():
            target = targets.get(k, DIAGONAL)
            if target != DIAGONAL and target not in next_active:
                lineage.features.append(target)
                next_active[target] = lineage
        for k in range(n_features[step + 1]):
            if k not in next_active:
                lineage = Lineage(step + 1, [k])
                lineages.append(lineage)
                next_active[k] = lineage
        active = next_active
    return lineages
