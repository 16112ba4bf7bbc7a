"""Exception types shared across the package.

Validation problems (bad parameters, malformed or degenerate input) derive
from :class:`ValidationError` so the CLI can map them to exit code 2;
environment failures surface as plain ``OSError`` and map to exit code 1.
"""


class ValidationError(ValueError):
    """Input or configuration rejected before any computation ran."""


class TooShortError(ValidationError):
    """Series shorter than the minimum length (3 samples)."""


class NonFiniteError(ValidationError):
    """Series contains NaN or infinity."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ZeroVarianceError(ValidationError):
    """Series is constant; standardization is undefined."""


class DomainError(ValidationError):
    """Scalar parameter outside its mathematical domain."""


class TooFewPointsError(ValidationError):
    """Fewer points than requested clusters."""


class UndefinedSilhouetteError(ValidationError):
    """Silhouette score requested for a single-cluster model."""


class NoClustersError(ValidationError):
    """Series too short to support the configured cluster search."""


class IndexOutOfRangeError(ValidationError):
    """Trigger or segment index outside the series bounds."""


class ParseError(ValidationError):
    """Input file could not be decoded."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line
