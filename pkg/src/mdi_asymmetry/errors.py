"""Exception hierarchy shared by every module."""


class MdiError(Exception):
    """Base class for all package errors."""


class ShapeError(MdiError, ValueError):
    """Operand dimensions are incompatible."""


class DomainError(MdiError, ValueError):
    """An input lies outside the domain of the operation."""


class NotPSDError(DomainError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue.

    ``index`` is the position inside a batch when the failure comes from a
    batched kernel, otherwise ``None``.
    """

    def __init__(self, message, index=None, eigenvalue=None):
        super().__init__(message)
        self.index = index
        self.eigenvalue = eigenvalue


class NumericError(MdiError, ArithmeticError):
    """An iterative routine failed to converge or produced an impossible value."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConfigError(MdiError, ValueError):
    """A scan description is inconsistent."""


class ScanError(MdiError):
    """Evaluation failed at a specific grid node."""

    def __init__(self, message, coords):
        super().__init__(message)
        self.coords = coords
