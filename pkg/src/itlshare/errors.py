"""Exception types raised by the package."""


class ItlShareError(Exception):
    """Base class for all package errors."""


class ParameterError(ItlShareError, ValueError):
    """A numeric or categorical parameter is outside its valid domain."""


class ScenarioFileError(ItlShareError, ValueError):
    """A scenario file is malformed, incomplete, or self-contradictory."""
