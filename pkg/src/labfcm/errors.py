"""Exception types raised by labfcm.

Every error the library raises derives from :class:`LabFcmError`, so callers
(including the CLI) can catch one base class.
"""


class LabFcmError(Exception):
    """Base class for all labfcm errors."""


class ParseError(LabFcmError):
    """Malformed input file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyInputError(LabFcmError):
    """An input that must contain at least one record is empty."""


class DomainError(LabFcmError):
    """A numeric argument is outside its mathematical domain (NaN, negative
    distance, non-positive exponent, ...)."""


class ShapeError(LabFcmError):
    """Array dimensions do not line up."""


class ConfigError(LabFcmError):
    """Invalid run parameters (cluster count out of range, fuzzifier <= 1, ...)."""


class StateError(LabFcmError):
    """Operation applied before its prerequisite step (e.g. sorting references
    that were never scanned)."""


class SeedingError(LabFcmError):
    """Centroid seeding could not produce the requested number of distinct
    starting points; callers should fall back to a baseline initializer."""


class DegenerateCentroidError(LabFcmError):
    """Two cluster centroids coincide, which makes the membership update
    singular for every point."""


class EmptyClusterError(LabFcmError):
    """A cluster received zero total membership weight."""

    def __init__(self, cluster: int):
        super().__init__(f"cluster {cluster} has zero total membership weight")
        self.cluster = cluster
