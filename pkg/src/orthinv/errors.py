"""Exception types shared across the package."""


class OrthinvError(Exception):
    pass


class BadPrime(OrthinvError):
    pass


class NonTame(OrthinvError):
    pass


class DivisionByZero(OrthinvError, ZeroDivisionError):
    pass


class ZeroInput(OrthinvError, ValueError):
    pass


class PrecisionExhausted(OrthinvError):
    pass


class NotSubfield(OrthinvError):
    pass


class FieldMismatch(OrthinvError):
    pass


class DimensionMismatch(OrthinvError):
    pass


class NotSimilar(OrthinvError):
    pass


class SearchBudgetExceeded(OrthinvError):
    pass


class Reducible(OrthinvError):
    pass


class UnsupportedOrbit(OrthinvError):
    pass


class HypothesisFailed(OrthinvError):
    pass


class BudgetExceeded(OrthinvError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DegenerateChain(OrthinvError):
    pass


class ParseError(OrthinvError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
