"""
Run configuration: a TOML file plus command-line overrides.

Keys may sit in [network], [solver] and [run] tables or flat at the top
level, in which case they are routed by name.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import List, Optional, Union

from errors import ConfigError, InputParseError
from topo_network import NetworkOptions
from tpot_solver import TpotParams
from .config import OUTPUT_DIR, NUM_WORKERS, output_dir_override

RUN_KEYS = ('inputs', 'output_dir', 'seed', 'n_frames', 'd_embed', 'num_workers')
NETWORK_KEYS = tuple(f.name for f in fields(NetworkOptions))
SOLVER_KEYS = tuple(f.name for f in fields(TpotParams))


@dataclass
class RunConfig:
    inputs: List[str] = field(default_factory=list)
    network: NetworkOptions = field(default_factory=NetworkOptions)
    solver: TpotParams = field(default_factory=TpotParams)
    output_dir: Path = OUTPUT_DIR
    seed: int = 0
    n_frames: int = 11
    d_embed: Optional[int] = None
    num_workers: int = NUM_WORKERS

    def validate(self) -> None:
        """Check parameter ranges and that every input path exists."""
        self.network.validate()
        self.solver.validate()
        if self.n_frames < 2:
            raise ConfigError(f"n_frames must be >= 2, got {self.n_frames}")
        if self.d_embed is not None and self.d_embed < 1:
            raise ConfigError(f"d_embed must be >= 1, got {self.d_embed}")
        if self.num_workers < 1:
            raise ConfigError(f"num_workers must be >= 1, got {self.num_workers}")
        missing = [p for p in self.inputs if not Path(p).exists()]
        if missing:
            raise ConfigError(f"Input path(s) not found: {', '.join(missing)}")

    def with_overrides(self, **overrides) -> 'RunConfig':
        """
        Copy with overrides applied; None values are ignored.

        Example:
            >>> cfg.with_overrides(alpha=1.0, beta=0.0, top_k=None)
        """
        network, solver, run = _route({k: v for k, v in overrides.items() if v is not None})
        config = replace(self, network=replace(self.network, **network),
                         solver=replace(self.solver, **solver), **run)
        if 'output_dir' in run:
            config.output_dir = Path(run['output_dir'])
        return config

    def resolved_output_dir(self) -> Path:
        """TPOT_OUTPUT_DIR wins over the file and the command line."""
        override = output_dir_override()
        return override if override is not None else Path(self.output_dir)


def _route(values: dict):
    network, solver, run = {}, {}, {}
    for key, value in values.items():
        if key in NETWORK_KEYS:
            network[key] = value
        elif key in SOLVER_KEYS:
            solver[key] = value
        elif key in RUN_KEYS:
            run[key] = value
        else:
            raise ConfigError(f"Unknown configuration key '{key}'")
    return network, solver, run


def load_run_config(path: Union[str, Path, None] = None) -> RunConfig:
    """Read a TOML run config; a missing path gives the defaults."""
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    with open(path, 'rb') as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise InputParseError(str(e), path=str(path))

    flat = {}
    for table, keys in (('network', NETWORK_KEYS), ('solver', SOLVER_KEYS), ('run', RUN_KEYS)):
        section = data.pop(table, {})
        if not isinstance(section, dict):
            raise ConfigError(f"[{table}] must be a table")
        for key, value in section.items():
            if key not in keys:
                raise ConfigError(f"Unknown key '{key}' in [{table}]")
            flat[key] = value
    flat.update(data)
    return RunConfig().with_overrides(**flat)
