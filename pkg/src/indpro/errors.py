"""Exception hierarchy shared by every module of the package."""


class IndProError(Exception):
    """Base class for all errors raised by indpro."""


class DimensionError(IndProError, ValueError):
    """Shapes of two linear maps do not fit together."""


class FieldMismatchError(IndProError, ValueError):
    """Two objects live over different prime fields."""


class NonCommutingError(IndProError, ValueError):
    """A diagram that is required to commute does not."""


class PreconditionError(IndProError, ValueError):
    """An operation was called on data outside its domain."""


class WindowError(IndProError, ValueError):
    """A window is malformed, or an index map leaves the stored window."""

    def __init__(self, message, invariant=None, where=None):
        super().__init__(message)
        self.invariant = invariant
        self.where = where
