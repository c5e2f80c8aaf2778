"""Exception hierarchy shared by all modules."""


class NikodymError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(NikodymError, ValueError):
    pass


class TooLarge(NikodymError, ValueError):
    pass


class DivisionByZero(NikodymError, ZeroDivisionError):
    pass


class DegeneratePair(NikodymError, ValueError):
    pass


class SpecMismatch(NikodymError, ValueError):
    """Two objects live over different geometries."""


class ParseError(NikodymError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(ParseError):
    pass


class DuplicatePoint(ParseError):
    pass


class InvalidWitness(NikodymError, ValueError):
    pass


class InternalContradiction(NikodymError, AssertionError):
    """A mathematically guaranteed inequality failed; indicates a bug."""


class InconsistentAssignment(NikodymError, ValueError):
    pass
