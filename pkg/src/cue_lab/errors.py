"""Exception types shared across the package."""


class CueLabError(Exception):
    """Base class for all errors raised by cue_lab."""


class BoxViolationError(CueLabError, ValueError):
    pass


class ContainmentError(CueLabError, ValueError):
    pass


class SizeMismatchError(CueLabError, ValueError):
    pass


class LengthError(CueLabError, ValueError):
    pass


class CapExceededError(CueLabError, ValueError):
    pass


class RangeError(CueLabError, ValueError):
    pass


class CoincidenceError(CueLabError, ValueError):
    """Two evaluation points collide where distinct points are required."""


class PoleError(CueLabError, ZeroDivisionError):
    pass


class ResourceLimitError(CueLabError, RuntimeError):
    pass


class ConvergenceError(CueLabError, RuntimeError):
    """An adaptive scheme could not certify the requested tolerance."""


class DimensionCapError(CueLabError, RuntimeError):
    pass


class InconsistencyError(CueLabError, RuntimeError):
    """Two independent routes to the same exact value disagree."""


class DegreeDeficiencyError(CueLabError, ValueError):
    pass


class ResidualError(CueLabError, ValueError):
    pass


class InsufficientDataError(CueLabError, ValueError):
    pass


class UnknownFunctionalError(CueLabError, KeyError):
    pass
