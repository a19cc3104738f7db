"""
Exception types shared by every package.

All errors raised on purpose derive from TpotError so the CLI can report them
without a traceback. Problems with caller-supplied values also derive from
ValueError.
"""

from typing import Optional


class TpotError(Exception):
    """Base class for every error raised by this toolkit."""


class InvalidPointCloudError(TpotError, ValueError):
    """Point cloud is empty, ragged, or has non-finite coordinates."""


class InputParseError(TpotError, ValueError):
    """An input file could not be parsed."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location += f"{path}"
        if line is not None:
            location += f", line {line}"
        super().__init__(f"{location}: {message}" if location else message)


class DegenerateBandwidthError(TpotError, ValueError):
    """All points coincide, so no kernel bandwidth can be chosen."""


class LaplacianError(TpotError, ValueError):
    """Affinity matrix has a zero row sum or negative entries."""


class DegenerateComplexError(TpotError, ValueError):
    """Requested homology degree cannot exist on this many points."""


class MarginalMismatchError(TpotError, ValueError):
    """Marginals handed to a transport solver have different totals."""


class ShapeMismatchError(TpotError, ValueError):
    """Matrix or coupling shapes do not agree."""


class SizeCapExceededError(TpotError, ValueError):
    """Problem is larger than the exact solver is allowed to handle."""


class SolverError(TpotError, RuntimeError):
    """A numerical routine failed."""


class EmptySupportError(TpotError, ValueError):
    """A coupling has no positive entries to build a geodesic on."""


class ConfigError(TpotError, ValueError):
    """Run configuration is missing a value or holds an out-of-range one."""
