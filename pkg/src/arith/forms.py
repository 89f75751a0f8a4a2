"""
Quaternary forms built from squares, triangular numbers and the hexagonal
binary form x^2 + xy + y^2, their brute-force representation counts and
the closed divisor-sum formulas they are compared with.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.arith.divisors import char8_weighted_d, char8_weighted_n_over_d, sigma
from src.utils.config import get_config
from src.utils.errors import UnknownForm

logger = logging.getLogger("Forms")

SHAPES = ("square", "triangular", "hex")


class QFormSpec:
    """sum of coefficient * shape(variables); a hex term uses two variables"""

    __slots__ = ("name", "terms")

    def __init__(self, name: str, terms: Sequence[Tuple[int, str]]):
        if not terms:
            raise ValueError("a form needs at least one term")
        for c, shape in terms:
            if shape not in SHAPES:
                raise ValueError(f"unknown shape {shape!r}")
            if c < 1:
                raise ValueError(f"coefficients must be positive, got {c}")
        self.name = name
        self.terms: Tuple[Tuple[int, str], ...] = tuple((int(c), shape) for c, shape in terms)

    def render(self) -> str:
        parts = []
        letters = iter("xyzwuv")
        for c, shape in self.terms:
            prefix = "" if c == 1 else str(c)
            if shape == "square":
                parts.append(f"{prefix}{next(letters)}^2")
            elif shape == "triangular":
                parts.append(f"{prefix}t_{next(letters)}")
            else:
                a, b = next(letters), next(letters)
                parts.append(f"{prefix}({a}^2+{a}{b}+{b}^2)" if prefix else f"{a}^2+{a}{b}+{b}^2")
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QFormSpec):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"QFormSpec({self.name}: {self.render()})"


def _term_values(c: int, shape: str, top: int) -> np.ndarray:
    """All values c*shape(v) <= top, one entry per integer solution"""
    if shape == "square":
        b = math.isqrt(top // c)
        x = np.arange(-b, b + 1, dtype=np.int64)
        values = c * x * x
    elif shape == "triangular":
        b = math.isqrt(2 * top // c) + 1
        x = np.arange(-b - 1, b + 1, dtype=np.int64)
        values = c * (x * (x + 1) // 2)
    else:
        b = math.isqrt(4 * (top // c) // 3 + 1) + 1
        x = np.arange(-b, b + 1, dtype=np.int64)
        values = (c * (x[:, None] ** 2 + x[:, None] * x[None, :] + x[None, :] ** 2)).ravel()
    return values[values <= top]


@lru_cache(maxsize=64)
def _rep_counts(terms: Tuple[Tuple[int, str], ...], top: int) -> Tuple[int, ...]:
    values = np.zeros(1, dtype=np.int64)
    for c, shape in terms:
        values = (values[:, None] + _term_values(c, shape, top)[None, :]).ravel()
        values = values[values <= top]
    return tuple(int(v) for v in np.bincount(values, minlength=top + 1))


def rep_counts(form: QFormSpec, top: int) -> List[int]:
    """Counts for n = 0..top in one exhaustive enumeration"""
    if top < 0:
        return []
    return list(_rep_counts(form.terms, top))


def rep_count(form: QFormSpec, n: int) -> int:
    if n < 0:
        return 0
    return _rep_counts(form.terms, n)[n]


class FormTheorem:
    """A representation theorem: count(n) = formula(n), read off q^exponent(n)"""

    def __init__(self, name: str, label: str, form: QFormSpec, formula: Callable[[int], int],
                 anchor: str, section: str, start: int = 0, shift: Fraction = Fraction(0),
                 stride: int = 1, alternating: bool = False, range_key: str = "representation"):
        self.name = name
        self.label = label
        self.form = form
        self.formula = formula
        self.anchor = anchor
        self.section = section
        self.start = start
        self.shift = Fraction(shift)
        self.stride = stride
        self.alternating = alternating
        self.range_key = range_key

    def exponent(self, n: int) -> Fraction:
        """Exponent (in q-units) carrying the n-th count in the theta series"""
        return self.stride * n + self.shift

    def sign(self, n: int) -> int:
        return -1 if self.alternating and n % 2 else 1

    def default_max(self) -> int:
        return int(get_config(f"engine.orders.{self.range_key}", 300))

    def rows(self, max_n: int) -> List[Tuple[int, int, int, bool]]:
        """(n, brute-force count, closed formula, match) for start <= n <= max_n"""
        counts = rep_counts(self.form, max_n)
        rows = []
        for n in range(self.start, max_n + 1):
            expected = self.formula(n)
            rows.append((n, counts[n], expected, counts[n] == expected))
        return rows

    def series_terms(self, order: Fraction) -> List[Tuple[Fraction, int]]:
        """(exponent, signed value) pairs of the formula side below q^order"""
        terms = []
        if self.start > 0 and self.exponent(0) < order:
            terms.append((self.exponent(0), self.sign(0) * rep_count(self.form, 0)))
        n = self.start
        while self.exponent(n) < order:
            terms.append((self.exponent(n), self.sign(n) * self.formula(n)))
            n += 1
        return terms

    def __repr__(self) -> str:
        return f"FormTheorem({self.name}: {self.form.render()})"


def _square(*coefficients: int) -> List[Tuple[int, str]]:
    return [(c, "square") for c in coefficients]


def _triangular(*coefficients: int) -> List[Tuple[int, str]]:
    return [(c, "triangular") for c in coefficients]


def _s4(n: int) -> int:
    return 8 * sigma(n) - 32 * sigma(Fraction(n, 4))


def _t4(n: int) -> int:
    return 16 * sigma(2 * n + 1)


def _s2(n: int) -> int:
    return 12 * sigma(n) - 36 * sigma(Fraction(n, 3))


def _s1133(n: int) -> int:
    sign = 1 if (n - 1) % 2 == 0 else -1
    return 4 * sign * (sigma(n) - 4 * sigma(Fraction(n, 2)) - 3 * sigma(Fraction(n, 3))
                       + 12 * sigma(Fraction(n, 6)))


def _s12(n: int) -> int:
    return (6 * sigma(n) - 12 * sigma(Fraction(n, 2)) + 18 * sigma(Fraction(n, 3))
            - 36 * sigma(Fraction(n, 6)))


def _s1122(n: int) -> int:
    return (4 * sigma(n) - 4 * sigma(Fraction(n, 2)) + 8 * sigma(Fraction(n, 4))
            - 32 * sigma(Fraction(n, 8)))


def _m1244(n: int) -> int:
    return 4 * char8_weighted_n_over_d(n + 1)


def _m1144(n: int) -> int:
    m = n + 1
    return 4 * (sigma(m) + sigma(Fraction(m, 2)) - 10 * sigma(Fraction(m, 4)) + 8 * sigma(Fraction(m, 8)))


def _m1224(n: int) -> int:
    return 2 * char8_weighted_n_over_d(2 * n + 1)


def _s1112(n: int) -> int:
    return 8 * char8_weighted_n_over_d(n) - 2 * char8_weighted_d(n)


def _s1222(n: int) -> int:
    return 4 * char8_weighted_n_over_d(n) - 2 * char8_weighted_d(n)


def _m1114(n: int) -> int:
    return 4 * char8_weighted_n_over_d(2 * n + 1) - 2 * char8_weighted_d(2 * n + 1)


def _m1444(n: int) -> int:
    return 2 * char8_weighted_n_over_d(2 * n + 3) - 2 * char8_weighted_d(2 * n + 3)


FORM_THEOREMS: Dict[str, FormTheorem] = {t.name: t for t in [
    FormTheorem("s4", "S_4", QFormSpec("s4", _square(1, 1, 1, 1)), _s4,
                "S_4(n)= 8σ(n)-32σ(n/4)", "4", start=1),
    FormTheorem("t4", "T_4", QFormSpec("t4", _triangular(1, 1, 1, 1)), _t4,
                "T_4(n)=16σ(2n+1)", "4", shift=Fraction(1), stride=2, range_key="triangular"),
    FormTheorem("s2", "s_2", QFormSpec("s2", [(1, "hex"), (1, "hex")]), _s2,
                "s_2(n)=12σ(n)-36σ(n/3)", "5", start=1),
    FormTheorem("s1133", "S_{1,1,3,3}", QFormSpec("s1133", _square(1, 1, 3, 3)), _s1133,
                "4(-1)^{n-1}(σ(n)-4σ(n/2)-3σ(n/3)+12σ(n/6))", "5", start=1, alternating=True),
    FormTheorem("s12", "s_{1,2}", QFormSpec("s12", [(1, "hex"), (2, "hex")]), _s12,
                "6σ(n)-12σ(n/2)+18σ(n/3)-36σ(n/6)", "5", start=1),
    FormTheorem("s1122", "S_{1,1,2,2}", QFormSpec("s1122", _square(1, 1, 2, 2)), _s1122,
                "4σ(n)-4σ(n/2)+8σ(n/4)-32σ(n/8)", "6", start=1, range_key="representation_gamma8"),
    FormTheorem("m1244", "M_{1,2-4,4}", QFormSpec("m1244", _square(1, 2) + _triangular(4, 4)), _m1244,
                "4Σ_{d|n+1}", "6", shift=Fraction(1), range_key="representation_gamma8"),
    FormTheorem("m1144", "M_{1,1-4,4}", QFormSpec("m1144", _square(1, 1) + _triangular(4, 4)), _m1144,
                "-10σ((n+1)/4)+8σ", "6", shift=Fraction(1), range_key="representation_gamma8"),
    FormTheorem("m1224", "M_{1,2,2-4}", QFormSpec("m1224", _square(1, 2, 2) + _triangular(4)), _m1224,
                "2Σ_{d|2n+1}", "6", shift=Fraction(1, 2), range_key="representation_gamma8"),
    FormTheorem("s1112", "S_{1,1,1,2}", QFormSpec("s1112", _square(1, 1, 1, 2)), _s1112,
                "8Σ_{d|n}(n/d)(8/d)", "6", start=1, range_key="representation_gamma8"),
    FormTheorem("s1222", "S_{1,2,2,2}", QFormSpec("s1222", _square(1, 2, 2, 2)), _s1222,
                "4Σ_{d|n}(n/d)", "6", start=1, range_key="representation_gamma8"),
    FormTheorem("m1114", "M_{1,1,1-4}", QFormSpec("m1114", _square(1, 1, 1) + _triangular(4)), _m1114,
                "4Σ_{d|2n+1}", "6", shift=Fraction(1, 2), range_key="representation_gamma8"),
    FormTheorem("m1444", "M_{1-4,4,4}", QFormSpec("m1444", _square(1) + _triangular(4, 4, 4)), _m1444,
                "2Σ_{d|2n+3}", "6", shift=Fraction(3, 2), range_key="representation_gamma8"),
]}


def get_form(name: str) -> FormTheorem:
    try:
        return FORM_THEOREMS[name]
    except KeyError:
        raise UnknownForm(f"unknown form {name!r}; known forms: {', '.join(FORM_THEOREMS)}") from None
