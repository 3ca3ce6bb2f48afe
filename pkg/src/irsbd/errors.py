"""Exception types raised by the simulator."""


class SimulationError(Exception):
    """Base class for all simulator errors."""


class ConfigError(SimulationError, ValueError):
    """Invalid scenario configuration (unknown key, bad value, violated constraint)."""

    def __init__(self, message, key=None, line=None):
        self.reason = message
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.key = key
        self.line = line


class NumericalError(SimulationError, ArithmeticError):
    """A linear-algebra routine failed or produced an unusable result."""


class DimensionError(NumericalError):
    """Matrix dimensions are inconsistent or make a design infeasible."""


class RankError(NumericalError):
    """A matrix has insufficient rank for the requested operation."""


class NoNullSpaceError(RankError):
    """Every singular value is above the rank threshold."""


class CombinerError(RankError):
    """The effective channel of a UE is rank deficient, so zero-forcing is undefined."""
