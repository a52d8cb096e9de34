"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input (rationals, vectors, permutations)."""


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


class DomainError(ValueError):
    """A value violates a documented precondition (e.g. d not positive)."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured size limit."""
