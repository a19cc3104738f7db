from dataclasses import dataclass, asdict, fields

from errors import ConfigError

ALGORITHMS = ('entropic', 'bcd')


@dataclass
class TpotParams:
    """
    Weights and stopping rules for a TpOT solve.

    alpha trades GW distortion (alpha) against diagram transport (1 - alpha);
    beta weights the incidence cross term. eps_v / eps_e only matter for the
    entropic algorithm.
    """

    alpha: float = 0.5
    beta: float = 1.0
    eps_v: float = 3e-3
    eps_e: float = 1e-2
    max_iter: int = 1000
    tol: float = 1e-7
    algorithm: str = 'entropic'
    gauss_seidel: bool = False
    sinkhorn_max_iter: int = 5000
    sinkhorn_tol: float = 1e-7
    eps_scaling: bool = False
    cg_max_iter: int = 200
    round_couplings: bool = True

    def validate(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.beta < 0:
            raise ConfigError(f"beta must be >= 0, got {self.beta}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}, got '{self.algorithm}'")
        if self.algorithm == 'entropic' and (self.eps_v <= 0 or self.eps_e <= 0):
            raise ConfigError(f"eps_v and eps_e must be positive, got {self.eps_v}, {self.eps_e}")
        if self.max_iter < 1 or self.sinkhorn_max_iter < 1 or self.cg_max_iter < 1:
            raise ConfigError("iteration caps must be >= 1")
        if self.tol < 0:
            raise ConfigError(f"tol must be >= 0, got {self.tol}")
        if self.sinkhorn_tol <= 0:
            raise ConfigError(f"sinkhorn_tol must be positive, got {self.sinkhorn_tol}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'TpotParams':
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown solver parameters: {sorted(unknown)}")
        return cls(**data)
