"""Exception types raised by the solver."""


class DiracLanczosError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(DiracLanczosError, ValueError):
    pass


class GridMismatch(DiracLanczosError, ValueError):
    pass


class ZeroVector(DiracLanczosError, ValueError):
    pass


class InvalidState(DiracLanczosError, RuntimeError):
    pass


class NumericalOverflow(DiracLanczosError, ArithmeticError):
    pass


class IterationMismatch(DiracLanczosError, ValueError):
    pass


class NoConvergence(DiracLanczosError, RuntimeError):
    pass


class ConfigError(DiracLanczosError, ValueError):
    pass
