"""Exception hierarchy shared by all modules."""


class Z2ActionsError(Exception):
    """Base class for library errors."""


class DimensionError(Z2ActionsError, ValueError):
    """Operands live in different ambient ranks k."""


class InputError(Z2ActionsError, ValueError):
    """Malformed or out-of-domain argument."""


class InvalidRepresentationError(InputError):
    """A multiset contains the zero character."""


class PreconditionError(Z2ActionsError, ValueError):
    """A documented precondition does not hold."""


class ResourceError(Z2ActionsError, RuntimeError):
    """A configured size guard was exceeded."""
