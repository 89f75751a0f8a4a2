"""
Divisor functions with congruence conditions.

Every function is extended by 0 to non-integral and non-positive rational
arguments, so sigma(n/4) reads the same as in a displayed formula.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple, Union

from sympy import divisors as _sympy_divisors

Number = Union[int, Fraction]


def _positive_int(x: Number) -> Optional[int]:
    x = Fraction(x)
    if x.denominator != 1 or x <= 0:
        return None
    return x.numerator


@lru_cache(maxsize=65536)
def divisor_list(n: int) -> Tuple[int, ...]:
    return tuple(_sympy_divisors(n))


def char8(m: int) -> int:
    """The character (8/m)"""
    if m < 1:
        raise ValueError(f"(8/m) needs a positive argument, got {m}")
    r = m % 8
    if r in (1, 7):
        return 1
    if r in (3, 5):
        return -1
    return 0


def _sigma(n: int) -> int:
    return sum(divisor_list(n))


def _sigma_star(n: int) -> int:
    return sum(d for d in divisor_list(n) if (n // d) % 2)


def _d_cong(n: int, j: int, k: int) -> int:
    return sum(1 for d in divisor_list(n) if d % k == j % k)


def _d_cong_star(n: int, j: int, k: int) -> int:
    return sum(1 for d in divisor_list(n) if d % k == j % k and (n // d) % 2)


def _delta(n: int) -> int:
    return _d_cong(n, 1, 3) - _d_cong(n, 2, 3)


def _delta_star(n: int) -> int:
    return _d_cong_star(n, 1, 3) - _d_cong_star(n, 2, 3)


def _epsilon(n: int) -> int:
    return _d_cong(n, 1, 6) + _d_cong(n, 2, 6) - _d_cong(n, 4, 6) - _d_cong(n, 5, 6)


def _epsilon_star(n: int) -> int:
    return _d_cong_star(n, 1, 6) + _d_cong_star(n, 2, 6) - _d_cong_star(n, 4, 6) - _d_cong_star(n, 5, 6)


def _char8_weighted_n_over_d(n: int) -> int:
    return sum((n // d) * char8(d) for d in divisor_list(n))


def _char8_weighted_d(n: int) -> int:
    return sum(d * char8(d) for d in divisor_list(n))


_KINDS: Dict[str, Callable[..., int]] = {
    "sigma": _sigma,
    "sigma_star": _sigma_star,
    "d_cong": _d_cong,
    "d_cong_star": _d_cong_star,
    "delta": _delta,
    "delta_star": _delta_star,
    "epsilon": _epsilon,
    "epsilon_star": _epsilon_star,
    "char8_weighted_n_over_d": _char8_weighted_n_over_d,
    "char8_weighted_d": _char8_weighted_d,
}

_PARAMETRISED = {"d_cong", "d_cong_star"}


class DivisorFn:
    """A named arithmetic function n -> Z, zero off the positive integers"""

    __slots__ = ("kind", "params", "_fn")

    def __init__(self, kind: str, *params: int):
        if kind not in _KINDS:
            raise ValueError(f"unknown divisor function kind: {kind}")
        expected = 2 if kind in _PARAMETRISED else 0
        if len(params) != expected:
            raise ValueError(f"{kind} takes {expected} parameters, got {len(params)}")
        if expected and params[1] < 1:
            raise ValueError(f"modulus must be positive, got {params[1]}")
        self.kind = kind
        self.params = tuple(int(p) for p in params)
        self._fn = _KINDS[kind]

    def __call__(self, x: Number) -> int:
        n = _positive_int(x)
        if n is None:
            return 0
        return self._fn(n, *self.params)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorFn):
            return NotImplemented
        return (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self) -> int:
        return hash((self.kind, self.params))

    def __repr__(self) -> str:
        args = f"({', '.join(map(str, self.params))})" if self.params else ""
        return f"{self.kind}{args}"


def divisor_eval(f: DivisorFn, x: Number) -> int:
    return f(x)


sigma = DivisorFn("sigma")
sigma_star = DivisorFn("sigma_star")
delta = DivisorFn("delta")
delta_star = DivisorFn("delta_star")
epsilon = DivisorFn("epsilon")
epsilon_star = DivisorFn("epsilon_star")
char8_weighted_n_over_d = DivisorFn("char8_weighted_n_over_d")
char8_weighted_d = DivisorFn("char8_weighted_d")


def d_cong(j: int, k: int) -> DivisorFn:
    return DivisorFn("d_cong", j, k)


def d_cong_star(j: int, k: int) -> DivisorFn:
    return DivisorFn("d_cong_star", j, k)


