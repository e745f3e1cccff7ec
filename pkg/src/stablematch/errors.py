"""Exception types raised across the package."""


class StableMatchError(Exception):
    pass


class InvalidParameter(StableMatchError, ValueError):
    pass


class DomainError(StableMatchError, ValueError):
    pass


class RangeError(StableMatchError, IndexError):
    pass


class ShapeError(StableMatchError, ValueError):
    pass


class ViewError(StableMatchError, ValueError):
    pass


class ResourceError(StableMatchError, MemoryError):
    pass


class ToleranceNotMet(StableMatchError, ArithmeticError):
    pass


class NonFinite(StableMatchError, ValueError):
    pass


class EmptySample(StableMatchError, ValueError):
    pass


class DegenerateSample(StableMatchError, ValueError):
    pass


class ConfigError(StableMatchError, ValueError):
    pass


class ParseError(ConfigError):
    """Malformed or invalid experiment config; ``field`` names the culprit."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
