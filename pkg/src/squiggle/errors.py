"""Exception hierarchy. Everything raised on purpose derives from SquiggleError."""


class SquiggleError(Exception):
    """Base class for all package-specific errors."""


class SingularTransform(SquiggleError):
    """Affine transform is not invertible (|det| below the singularity floor)."""


class ZeroLengthPath(SquiggleError):
    """Path has zero total length; no normalization is possible."""


class LengthMismatch(SquiggleError):
    """Two paths that must be paired point-for-point have different lengths."""


class DegenerateEdge(SquiggleError):
    """A triangle edge has zero length; no angle is defined."""


class IndexOutOfRange(SquiggleError, IndexError):
    """Triangle index outside 0 <= a < b < c < n."""


class DuplicateName(SquiggleError):
    """Template name already present in the library."""


class PathTooShort(SquiggleError):
    """Path yields too few regularized points to form a template."""


class ParseError(SquiggleError):
    """Malformed library or gesture file."""

    def __init__(self, message, *, line=None, position=None):
        super().__init__(message)
        self.line = line
        self.position = position


class VersionMismatch(SquiggleError):
    """Library file version is not supported."""


class NoSamplesFound(SquiggleError):
    """Dataset directory contained no parseable gesture samples."""


class LabelMismatch(SquiggleError):
    """A benchmark sample label has no corresponding template."""


class IoFailure(SquiggleError):
    """Filesystem operation failed."""
