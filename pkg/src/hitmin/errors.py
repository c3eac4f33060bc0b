"""Exception types raised across the package."""


class HitminError(Exception):
    """Base class for all package-specific errors."""


class MalformedInput(HitminError):
    """An input file or edge list could not be parsed as a simple graph."""


class DisconnectedGraph(HitminError):
    """The parsed or generated graph is not connected."""


class InvalidBipartition(HitminError):
    """The red/blue node split is missing, incomplete, or degenerate."""


class CapacityExceeded(HitminError):
    """A shortcut endpoint is already adjacent to every blue node."""


class InvalidParameter(HitminError):
    """An argument is outside its documented range."""


class SolverFailure(HitminError):
    """A linear system could not be solved to the required residual."""


class InstanceTooLarge(HitminError):
    """An exhaustive or dense-table routine refuses to run at this size."""


class GenerationFailed(HitminError):
    """A randomized generator exhausted its retry budget."""
