"""
Exception hierarchy for the q-series workbench.

Mathematical mismatches are reported, not raised; everything here signals a
construction or usage problem.
"""

from typing import Iterable, Optional, Tuple


class QSeriesError(Exception):
    """Base class for every workbench error"""


# cyclotomic

class OrderMismatch(QSeriesError):
    pass


class CycloDivisionByZero(QSeriesError, ZeroDivisionError):
    pass


class UnsupportedOrder(QSeriesError):
    pass


# series

class OffGrid(QSeriesError):
    pass


class GridMismatch(QSeriesError):
    pass


class RingMismatch(QSeriesError):
    pass


class PiPowerMismatch(QSeriesError):
    pass


class ZeroLeading(QSeriesError):
    pass


class BeyondValidity(QSeriesError):
    pass


# generators / identities

class UnsupportedCharacteristic(QSeriesError):
    pass


class UnsupportedK(QSeriesError):
    pass


class UnknownIdentity(QSeriesError):
    pass


class UnknownForm(QSeriesError):
    pass


# dsl

class ExprSyntaxError(QSeriesError):
    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected {', '.join(repr(e) for e in self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class EvalError(QSeriesError):
    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None):
        self.span = span
        where = f" [{span[0]}:{span[1]}]" if span else ""
        super().__init__(f"{message}{where}")
