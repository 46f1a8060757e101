"""Exception hierarchy."""


class QslError(Exception):
    """Base class for every error raised by qslkit."""


class ValidationError(QslError, ValueError):
    """An input violates a documented invariant or precondition."""


class ConvergenceError(QslError, ArithmeticError):
    """An iterative kernel exhausted its budget without converging."""


class FrameTrackingError(QslError):
    """Eigenframe continuation lost track (the time grid is too coarse)."""


class DegenerateBoundError(QslError):
    """A speed-limit ratio is undefined for the given inputs."""


class CrosscheckError(QslError):
    """Two independent evaluations of the same quantity disagree."""
