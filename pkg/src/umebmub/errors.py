"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class UmebMubError(Exception):
    """Base class for errors raised by this package."""


class ShapeError(UmebMubError, ValueError):
    """Operands have incompatible shapes or dimensions."""


class InvalidDimensionError(UmebMubError, ValueError):
    """The local dimension is outside the supported range (e.g. d < 3)."""


class NotUnitaryError(UmebMubError, ValueError):
    """A matrix that must be unitary is not, within tolerance."""


class NotOrthonormalError(UmebMubError, ValueError):
    """A family of states that must be orthonormal is not, within tolerance."""


class SearchConfigError(UmebMubError, ValueError):
    """Search mode and dimension are incompatible."""
