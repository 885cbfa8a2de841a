"""Shared exception types."""


class ParseError(ValueError):
    """Malformed input text (poset, element, map or ring literals)."""


class MismatchError(ValueError):
    """Operands live over different posets or different rings."""


class GuardExceeded(RuntimeError):
    """A resource guard (tuple count, enumeration size) was exceeded.

    This is a resource error, not a mathematical verdict.
    """
