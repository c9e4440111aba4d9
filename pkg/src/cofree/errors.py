"""Exception hierarchy shared by every module of the package."""


class CofreeError(Exception):
    pass


class MixedRings(CofreeError, TypeError):
    pass


class SpaceMismatch(CofreeError, ValueError):
    pass


class ArityMismatch(CofreeError, ValueError):
    pass


class InvalidArity(CofreeError, ValueError):
    pass


class NotPlain(CofreeError, ValueError):
    pass


class BoundTooLarge(CofreeError, ValueError):
    pass


class InvalidPosition(CofreeError, LookupError):
    pass


class TruncationExceeded(CofreeError, LookupError):
    """Raised when a finite literal generating tree is observed below its depth."""

    def __init__(self, position):
        self.position = position
        super().__init__(f"literal generating tree truncated at position {position}")


class ParseError(CofreeError, ValueError):
    """Malformed text input; ``pos`` is a 0-based offset (or line number for line formats)."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at {pos})"
        super().__init__(message)


class OddChildCount(ParseError):
    pass
