class ACRIError(ValueError):
    """Base class for every error raised by this package."""


class SpecError(ACRIError):
    """An operator, fuzzy set or scenario description is invalid."""


class UniverseMismatch(ACRIError):
    """Two fuzzy sets that must share a universe do not."""


class PreconditionError(ACRIError):
    """A check was asked for on operators that violate its hypotheses."""
