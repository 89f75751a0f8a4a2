"""
Convolution sums of divisor functions, the theorems that evaluate them, and
the bridge from integer sequences to q-series.
"""

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.algebra.cyclotomic import CycloNum
from src.arith.divisors import DivisorFn, delta, delta_star, epsilon_star, sigma
from src.series.qseries import AnalyticSeries, QSeries, _grid_index
from src.theta.generators import engine_defaults
from src.utils.config import get_config
from src.utils.errors import UnknownIdentity


def conv_sum(f: DivisorFn, g: DivisorFn, n: int) -> int:
    """sum_{k=1}^{n-1} f(k) g(n-k)"""
    return sum(f(k) * g(n - k) for k in range(1, n))


def weighted_conv_sum(f: DivisorFn, g: DivisorFn, n: int) -> int:
    """sum over (k, l) in N^2 with 2k + l = n of f(k) g(l)"""
    return sum(f(k) * g(n - 2 * k) for k in range(1, (n - 1) // 2 + 1))


def farkas_sum(n: int) -> int:
    """3 sum_{k=0}^{n} delta(3k+1) delta(3(n-k)+1)"""
    return 3 * sum(delta(3 * k + 1) * delta(3 * (n - k) + 1) for k in range(n + 1))


def seq_to_series(values: Iterable[Tuple[int, int]], exponent: Callable[[int], Fraction], order,
                  grid: Optional[int] = None, ring_order: Optional[int] = None) -> AnalyticSeries:
    """sum f(n) q^e(n) over the given (n, f(n)) pairs with e(n) < order"""
    grid, ring_order = engine_defaults(grid, ring_order)
    order = Fraction(order)
    terms = {}
    last = None
    for n, value in values:
        e = Fraction(exponent(n))
        if last is not None and e <= last:
            raise ValueError(f"sequence exponents must increase strictly, got {e} after {last}")
        last = e
        if e >= order or not value:
            continue
        terms[_grid_index(e, grid)] = CycloNum.embed(value, ring_order)
    return AnalyticSeries(0, QSeries(terms, order, grid, ring_order))


class ConvolutionTheorem:
    """lhs(n) = rhs(n) for start <= n"""

    def __init__(self, name: str, lhs: Callable[[int], int], rhs: Callable[[int], int],
                 anchor: str, start: int, range_key: str = "convolution", section: str = "5"):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.anchor = anchor
        self.start = start
        self.range_key = range_key
        self.section = section

    def default_max(self) -> int:
        return int(get_config(f"engine.orders.{self.range_key}", 300))

    def rows(self, max_n: int) -> List[Tuple[int, int, int, bool]]:
        rows = []
        for n in range(self.start, max_n + 1):
            left, right = self.lhs(n), self.rhs(n)
            rows.append((n, left, right, left == right))
        return rows

    def __repr__(self) -> str:
        return f"ConvolutionTheorem({self.name})"


def _s(n: int, k: int) -> int:
    return sigma(Fraction(n, k))


def _delta_eps_rhs(n: int) -> int:
    if n % 2:
        return 0
    return _s(n, 2) - 2 * _s(n, 4) - _s(n, 6) + 2 * _s(n, 12)


CONVOLUTION_THEOREMS: Dict[str, ConvolutionTheorem] = {t.name: t for t in [
    ConvolutionTheorem(
        "conv_delta_delta", lambda n: conv_sum(delta_star, delta_star, n),
        lambda n: _s(n, 2) - 2 * _s(n, 3) + _s(n, 6),
        "σ(n/2)-2σ(n/3)+σ(n/6)", start=2),
    ConvolutionTheorem(
        "conv_eps_eps", lambda n: conv_sum(epsilon_star, epsilon_star, n),
        lambda n: _s(n, 2) + 2 * _s(n, 3) - 11 * _s(n, 6) + 8 * _s(n, 12),
        "11σ(n/6)+8σ(n/12)", start=2),
    ConvolutionTheorem(
        "conv_delta_eps", lambda n: conv_sum(delta_star, epsilon_star, n), _delta_eps_rhs,
        "if n is odd", start=2),
    ConvolutionTheorem(
        "conv_weighted_delta_delta", lambda n: weighted_conv_sum(delta_star, delta_star, n),
        lambda n: _s(n, 3) - _s(n, 4) - _s(n, 6) + _s(n, 12),
        "σ(n/3)-σ(n/4)-σ(n/6)+σ(n/12)", start=3),
    ConvolutionTheorem(
        "conv_weighted_delta_eps", lambda n: weighted_conv_sum(delta_star, epsilon_star, n),
        lambda n: _s(n, 3) + _s(n, 4) - 5 * _s(n, 6) + 3 * _s(n, 12),
        "σ(n/3)+σ(n/4)-5σ(n/6)+3σ(n/12)", start=3),
    ConvolutionTheorem(
        "farkas_remark", lambda n: sigma(3 * n + 2), farkas_sum,
        "σ(3n+2)", start=0, range_key="remark"),
]}


def get_convolution(name: str) -> ConvolutionTheorem:
    try:
        return CONVOLUTION_THEOREMS[name]
    except KeyError:
        raise UnknownIdentity(
            f"unknown convolution {name!r}; known: {', '.join(CONVOLUTION_THEOREMS)}") from None
