import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Union

from errors import InputParseError
from .objective import CouplingPair
from .params import TpotParams


@dataclass
class TpotResult:
    """
    Outcome of one solve.

    pair holds the reported couplings (vertex-rounded when the entropic
    solver rounds, pi_e in canonical form); raw_pair holds the solver's own
    iterate. objective and term_breakdown are evaluated on pair.
    """

    pair: CouplingPair
    raw_pair: CouplingPair
    objective_trace: List[float]
    params: TpotParams
    objective: float
    term_breakdown: Dict[str, float]
    converged: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def n_iter(self) -> int:
        return max(0, len(self.objective_trace) - 1)

    def to_dict(self) -> dict:
        return {
            'pi_v': self.pair.pi_v.to_dict(),
            'pi_e': self.pair.pi_e.to_dict(),
            'pi_v_raw': self.raw_pair.pi_v.to_dict(),
            'pi_e_raw': self.raw_pair.pi_e.to_dict(),
            'objective_trace': list(self.objective_trace),
            'objective': self.objective,
            'params': self.params.to_dict(),
            'term_breakdown': dict(self.term_breakdown),
            'converged': self.converged,
            'meta': self.meta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TpotResult':
        try:
            pair = CouplingPair.from_dict({'pi_v': data['pi_v'], 'pi_e': data['pi_e']})
            raw = CouplingPair.from_dict({'pi_v': data.get('pi_v_raw', data['pi_v']),
                                          'pi_e': data.get('pi_e_raw', data['pi_e'])})
            return cls(pair=pair, raw_pair=raw,
                       objective_trace=[float(v) for v in data['objective_trace']],
                       params=TpotParams.from_dict(data['params']),
                       objective=float(data['objective']),
                       term_breakdown={k: float(v) for k, v in data['term_breakdown'].items()},
                       converged=bool(data.get('converged', False)),
                       meta=data.get('meta', {}))
        except (KeyError, TypeError, ValueError) as e:
            raise InputParseError(f"malformed solver result: {e}")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'TpotResult':
        with open(path) as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise InputParseError(e.msg, path=str(path), line=e.lineno)
        return cls.from_dict(data)
