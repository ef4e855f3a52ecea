"""Exception hierarchy shared by every engine and the CLI."""


class KxRingError(Exception):
    """Base class for all library errors."""


class DivisionByZero(KxRingError, ZeroDivisionError):
    pass


class CompositeModulus(KxRingError, ValueError):
    pass


class ReducibleModulus(KxRingError, ValueError):
    pass


class UnsupportedField(KxRingError, ValueError):
    pass


class DegreeTooLarge(KxRingError, ValueError):
    pass


class CapExceeded(KxRingError, ValueError):
    pass


class ZeroConstantTerm(KxRingError, ValueError):
    pass


class NotIrreducible(KxRingError, ValueError):
    pass


class RangeError(KxRingError, ValueError):
    pass


class RealParameter(KxRingError, ValueError):
    pass


class ZeroEigenvalue(KxRingError, ValueError):
    pass


class DimensionMismatch(KxRingError, ValueError):
    pass


class NotUnipotent(KxRingError, ValueError):
    pass


class Inconclusive(KxRingError, RuntimeError):
    """The randomized splitter could not certify a decomposition."""


class InternalDefect(KxRingError, AssertionError):
    """An invariant that the mathematics guarantees was violated."""


class ParseError(KxRingError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} at position {position}"
        super().__init__(message)
