"""Exception types shared across the package."""


class LfdepthError(Exception):
    """Base class for all errors raised by lfdepth."""


class BoundsError(LfdepthError, IndexError):
    """An index lies outside the valid range of a named axis."""


class ShapeError(LfdepthError, ValueError):
    """Array shapes do not satisfy an operation's contract."""


class DomainError(LfdepthError, ValueError):
    """A value is outside the mathematical domain of an operation."""


class PfmParseError(LfdepthError, ValueError):
    """Malformed PFM data; carries the byte offset where parsing failed."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SceneLoadError(LfdepthError, ValueError):
    """A scene directory is missing files or contains inconsistent data."""


class NumericsError(LfdepthError, ArithmeticError):
    """A tensor value or gradient became non-finite."""


class TrainingError(LfdepthError, RuntimeError):
    """The training loop cannot make progress (e.g. an all-invalid batch)."""


class ConfigError(LfdepthError, ValueError):
    """A run configuration contains unknown keys or invalid values."""
