"""Exception hierarchy shared by the library and the CLI."""


class CubeTradesError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CubeTradesError, ValueError):
    """Arguments violate an operation's precondition."""


class CapacityError(CubeTradesError, RuntimeError):
    """The request exceeds a documented enumeration or search gate."""


class InconsistencyError(CubeTradesError, RuntimeError):
    """A computed object contradicts the volume classification it must satisfy."""
