"""Exceptions raised by ptscatter.

Every error carries a human readable ``message``; command line runs map the
two families below to exit codes (config errors → 2, numerical errors → 3).
"""
from typing import Optional, Tuple


class PtScatterError(Exception):
    """Base class for ptscatter errors."""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class ConfigError(PtScatterError):
    exit_code = 2


class InvalidParameterError(ConfigError):
    """A physical parameter is out of range for the model."""


class WindowError(ConfigError):
    """An energy window leaves the (V', V_b) resonance band."""


class NumericalError(PtScatterError):
    exit_code = 3


class DomainError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class SingularInterfaceError(NumericalError):
    def __init__(self, message: str, index: Optional[int] = None):
        if index is not None:
            message = f"{message} at interface {index}"
        super().__init__(message)
        self.index = index


class ResonantSingularityError(NumericalError):
    def __init__(self, message: str, index: Optional[int] = None):
        if index is not None:
            message = f"{message} at interface {index}"
        super().__init__(message)
        self.index = index


class SingularSystemError(NumericalError):
    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(f"{message} (condition number {condition:.3e})")
        self.condition = condition


class DegenerateError(NumericalError):
    pass


class ZeroEigenvalueError(NumericalError):
    pass


class NoResonanceError(NumericalError):
    def __init__(self, message: str, gamma: Optional[float] = None):
        if gamma is not None:
            message = f"{message} (gamma = {gamma:.6g} eV)"
        super().__init__(message)
        self.gamma = gamma


class BracketError(NumericalError):
    def __init__(self, message: str, counts: Tuple[int, int] = (0, 0)):
        super().__init__(f"{message} (peak counts {counts[0]}, {counts[1]})")
        self.counts = counts


class InsufficientDataError(NumericalError):
    pass
