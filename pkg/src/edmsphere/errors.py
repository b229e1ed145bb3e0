"""Exception hierarchy shared across the package."""

__all__ = [
    "EdmSphereError",
    "SpectralError",
    "PreconditionError",
    "ConsistencyError",
    "FormatError",
]


class EdmSphereError(Exception):
    """Base class for all library-specific failures."""


class SpectralError(EdmSphereError, RuntimeError):
    """The eigensolver failed to converge (never silent garbage)."""


class PreconditionError(EdmSphereError, ValueError):
    """The input is outside an operation's stated domain."""


class ConsistencyError(EdmSphereError, RuntimeError):
    """An internal verification failed: the result would contradict theory.

    Raised instead of returning silently-wrong output, e.g. when a constructed
    matrix fails its own certificate or a decomposition's block count
    disagrees with the spectral multiplicity.  Usually indicates tolerance or
    input trouble, not a bug in the caller.
    """


class FormatError(EdmSphereError, ValueError):
    """A text or JSON artifact could not be parsed; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
