"""Exception and warning types raised across the package."""


class SixVertexError(Exception):
    """Base class for all library errors."""


class DimensionError(SixVertexError, ValueError):
    pass


class InvalidInputError(SixVertexError, ValueError):
    pass


class SingularParameterError(SixVertexError, ArithmeticError):
    """Parameters hit (or come too close to) a pole of a formula."""


class SingularJetError(SingularParameterError):
    pass


class ResourceError(SixVertexError):
    """Requested size exceeds a configured cap."""


class DegenerateNormalizationError(SingularParameterError):
    """The partition function used as a normalization vanishes."""


class NearSingularWarning(UserWarning):
    pass


class PrecisionWarning(UserWarning):
    pass
