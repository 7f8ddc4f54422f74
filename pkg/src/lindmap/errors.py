"""Exception types raised by lindmap."""


class LindmapError(Exception):
    """Base class for every error raised by this package."""


class NonHermitianInput(LindmapError, ValueError):
    pass


class NoConvergence(LindmapError, RuntimeError):
    pass


class DimensionMismatch(LindmapError, ValueError):
    pass


class ParameterOutOfRange(LindmapError, ValueError):
    pass


class NotNormalized(LindmapError, ValueError):
    pass


class InvalidPartition(LindmapError, ValueError):
    pass


class AssignmentNotFound(LindmapError, LookupError):
    pass


class NoSignChange(LindmapError, ValueError):
    """Bisection bracket has the same sign at both ends."""


class UnknownFamily(LindmapError, KeyError):
    pass


class ParseError(LindmapError, ValueError):
    pass
