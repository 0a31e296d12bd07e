"""Exception types raised by the library."""


class DomainError(ValueError):
    """A parameter lies outside the range where an operation is defined."""


class StateError(RuntimeError):
    """A time march was asked to do something its history cannot support."""


class ExpressionError(ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset (UTF-8) of the offending token.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
