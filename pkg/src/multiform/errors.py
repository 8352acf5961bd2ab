"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit code so callers can tell failure classes
apart without parsing messages.
"""


class MultiformError(Exception):
    """Base class; exit code 5 unless a subclass overrides."""

    exit_code = 5


class DocumentError(MultiformError):
    """Malformed input document or option (bad JSON, bad rational, bad schema)."""

    exit_code = 2


class DomainError(MultiformError):
    """Value-level violation: index out of range, shape mismatch, grid mismatch."""

    exit_code = 2


class ShapeError(MultiformError):
    """No valid Young diagram for the requested signature."""

    exit_code = 2


class PreconditionError(MultiformError):
    """A stated operation precondition does not hold for these inputs."""

    exit_code = 3


class NotMeaningfulError(PreconditionError):
    """A field strength whose target Young label is not weakly decreasing."""


class NotClosedError(PreconditionError):
    """Homotopy input is not closed; carries the nonzero residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UnsupportedDomainError(PreconditionError):
    """Operation requires a different coefficient domain."""


class ResourceLimitError(MultiformError):
    """Requested truncation exceeds the configured basis-size guard."""

    exit_code = 4


class InternalConsistencyError(MultiformError):
    """An invariant that must hold by construction was violated; always fatal."""

    exit_code = 5
