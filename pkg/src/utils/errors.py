"""Error types shared by every module.

Each error carries a short machine-readable ``category`` that the CLI prints on
failure. Concrete errors also derive from the builtin exception a caller would
expect, so ``except ValueError`` keeps working.
"""


class PgcError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"
    exit_code = 1


class DimensionMismatchError(PgcError, ValueError):
    category = "dimension"
    exit_code = 2


class ParameterError(PgcError, ValueError):
    category = "parameter"
    exit_code = 2


class DomainError(PgcError, ValueError):
    category = "domain"
    exit_code = 2


class FormatError(PgcError, ValueError):
    category = "format"
    exit_code = 3


class PresetNotFoundError(PgcError, KeyError):
    category = "lookup"
    exit_code = 2

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else ""


class ConfigError(PgcError, ValueError):
    category = "config"
    exit_code = 4


class MissingArtifactError(PgcError, FileNotFoundError):
    category = "missing-artifact"
    exit_code = 5


class StateError(PgcError, RuntimeError):
    category = "state"
    exit_code = 6
