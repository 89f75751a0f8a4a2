"""
Truncated sparse q-series on a fixed exponent grid.

A QSeries stores terms n -> c meaning c * q^(n/E), and a validity bound
valid_to (in q-units): every coefficient with exponent < valid_to is exact.
An AnalyticSeries is pi^p times a QSeries body, which keeps the pi and 2*pi*i
prefactors of derivatives symbolic.
"""

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from src.algebra.cyclotomic import DEFAULT_ORDER, CycloNum, imag_unit
from src.utils.errors import (
    BeyondValidity,
    GridMismatch,
    OffGrid,
    PiPowerMismatch,
    RingMismatch,
    ZeroLeading,
)

DEFAULT_GRID = 48

Scalar = Union[int, Fraction, CycloNum]


def _grid_index(e: Fraction, grid: int) -> int:
    n = Fraction(e) * grid
    if n.denominator != 1:
        raise OffGrid(f"exponent {e} is not on the 1/{grid} grid")
    return n.numerator


def _limit(valid_to: Fraction, grid: int) -> int:
    """Smallest grid index that is no longer valid"""
    return math.ceil(Fraction(valid_to) * grid)


class QSeries:
    __slots__ = ("grid", "ring_order", "valid_to", "terms")

    def __init__(self, terms: Dict[int, CycloNum], valid_to, grid: int = DEFAULT_GRID,
                 ring_order: int = DEFAULT_ORDER):
        self.grid = grid
        self.ring_order = ring_order
        self.valid_to = Fraction(valid_to)
        limit = _limit(self.valid_to, grid)
        self.terms: Dict[int, CycloNum] = {n: c for n, c in terms.items() if n < limit and not c.is_zero()}

    # constructors

    @classmethod
    def zero(cls, valid_to, grid: int = DEFAULT_GRID, ring_order: int = DEFAULT_ORDER) -> "QSeries":
        return cls({}, valid_to, grid, ring_order)

    @classmethod
    def constant(cls, c: Scalar, valid_to, grid: int = DEFAULT_GRID,
                 ring_order: int = DEFAULT_ORDER) -> "QSeries":
        return cls({0: _as_cyclo(c, ring_order)}, valid_to, grid, ring_order)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Tuple[Fraction, Scalar]], valid_to,
                          grid: int = DEFAULT_GRID, ring_order: int = DEFAULT_ORDER) -> "QSeries":
        """Build from (exponent in q-units, coefficient) pairs, summing repeats"""
        terms: Dict[int, CycloNum] = {}
        for e, c in coefficients:
            n = _grid_index(e, grid)
            value = _as_cyclo(c, ring_order)
            terms[n] = terms[n] + value if n in terms else value
        return cls(terms, valid_to, grid, ring_order)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> List[int]:
        return sorted(self.terms)

    def leading(self) -> Tuple[int, CycloNum]:
        if not self.terms:
            raise ZeroLeading(f"series is zero up to q^{self.valid_to}")
        n = min(self.terms)
        return n, self.terms[n]

    @property
    def order(self) -> Fraction:
        """Least stored exponent in q-units; a zero series reports its validity bound"""
        if not self.terms:
            return self.valid_to
        return Fraction(min(self.terms), self.grid)

    def coeff_at(self, e) -> CycloNum:
        e = Fraction(e)
        if e >= self.valid_to:
            raise BeyondValidity(f"coefficient of q^{e} requested but series is valid below q^{self.valid_to}")
        n = e * self.grid
        if n.denominator != 1:
            return CycloNum.zero(self.ring_order)
        return self.terms.get(n.numerator, CycloNum.zero(self.ring_order))

    # arithmetic

    def _check(self, other: "QSeries"):
        if self.grid != other.grid:
            raise GridMismatch(f"grids differ: {self.grid} vs {other.grid}")
        if self.ring_order != other.ring_order:
            raise RingMismatch(f"coefficient rings differ: {self.ring_order} vs {other.ring_order}")

    def _like(self, terms: Dict[int, CycloNum], valid_to) -> "QSeries":
        return QSeries(terms, valid_to, self.grid, self.ring_order)

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        terms = dict(self.terms)
        for n, c in other.terms.items():
            terms[n] = terms[n] + c if n in terms else c
        return self._like(terms, min(self.valid_to, other.valid_to))

    def __neg__(self) -> "QSeries":
        return self._like({n: -c for n, c in self.terms.items()}, self.valid_to)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scalar_mul(self, c: Scalar) -> "QSeries":
        c = _as_cyclo(c, self.ring_order)
        return self._like({n: c * v for n, v in self.terms.items()}, self.valid_to)

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        valid_to = min(self.valid_to + other.order, other.valid_to + self.order)
        limit = _limit(valid_to, self.grid)
        left = sorted(self.terms.items())
        right = sorted(other.terms.items())
        if len(left) > len(right):
            left, right = right, left
        acc: Dict[int, CycloNum] = {}
        for a, ca in left:
            for b, cb in right:
                n = a + b
                if n >= limit:
                    break
                p = ca * cb
                acc[n] = acc[n] + p if n in acc else p
        return self._like(acc, valid_to)

    def shift(self, e) -> "QSeries":
        """Multiply by q^e"""
        k = _grid_index(Fraction(e), self.grid)
        return self._like({n + k: c for n, c in self.terms.items()}, self.valid_to + Fraction(e))

    def invert(self) -> "QSeries":
        a, c0 = self.leading()
        inv_lead = c0.inv()
        # normalised 1 + h with h supported on positive exponents
        h = sorted((n - a, c * inv_lead) for n, c in self.terms.items() if n != a)
        rel_limit = _limit(self.valid_to, self.grid) - a
        step = 0
        for n, _ in h:
            step = math.gcd(step, n)
        one = CycloNum.one(self.ring_order)
        u: Dict[int, CycloNum] = {0: one}
        if step:
            for n in range(step, rel_limit, step):
                total = None
                for k, hk in h:
                    if k > n:
                        break
                    prev = u.get(n - k)
                    if prev is not None:
                        p = hk * prev
                        total = p if total is None else total + p
                if total is not None and not total.is_zero():
                    u[n] = -total
        valid_to = self.valid_to - 2 * Fraction(a, self.grid)
        return self._like({n - a: inv_lead * c for n, c in u.items()}, valid_to)

    def power(self, exponent: int) -> "QSeries":
        if exponent < 0:
            return self.invert().power(-exponent)
        result: Optional[QSeries] = None
        base = self
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            exponent >>= 1
            if exponent:
                base = base * base
        if result is None:
            return QSeries.constant(1, self.valid_to - self.order, self.grid, self.ring_order)
        return result

    def euler_op(self) -> "QSeries":
        """q d/dq: c q^e -> e c q^e"""
        return self._like({n: c * Fraction(n, self.grid) for n, c in self.terms.items()}, self.valid_to)

    def rescale(self, k) -> "QSeries":
        k = Fraction(k)
        if k <= 0:
            raise ValueError(f"tau multiplier must be positive, got {k}")
        terms = {}
        for n, c in self.terms.items():
            m = n * k
            if m.denominator != 1:
                raise OffGrid(f"q^({n}/{self.grid}) rescaled by {k} leaves the 1/{self.grid} grid")
            terms[m.numerator] = c
        return self._like(terms, self.valid_to * k)

    def truncate(self, valid_to) -> "QSeries":
        return self._like(self.terms, min(self.valid_to, Fraction(valid_to)))

    def restricted(self, bound) -> Dict[int, CycloNum]:
        limit = _limit(Fraction(bound), self.grid)
        return {n: c for n, c in self.terms.items() if n < limit}

    def __repr__(self) -> str:
        shown = ", ".join(f"q^{Fraction(n, self.grid)}: {self.terms[n].render()}" for n in self.exponents()[:6])
        more = ", ..." if len(self.terms) > 6 else ""
        return f"QSeries({{{shown}{more}}}, valid_to={self.valid_to})"


def _as_cyclo(c: Scalar, ring_order: int) -> CycloNum:
    if isinstance(c, CycloNum):
        if c.order != ring_order:
            raise RingMismatch(f"coefficient in Q(zeta_{c.order}) used in a Q(zeta_{ring_order}) series")
        return c
    return CycloNum.embed(c, ring_order)


class Divergence:
    """First exponent where two series disagree"""

    __slots__ = ("exponent", "lhs", "rhs", "lhs_pi", "rhs_pi")

    def __init__(self, exponent: Fraction, lhs: CycloNum, rhs: CycloNum, lhs_pi: int = 0, rhs_pi: int = 0):
        self.exponent = exponent
        self.lhs = lhs
        self.rhs = rhs
        self.lhs_pi = lhs_pi
        self.rhs_pi = rhs_pi

    def __repr__(self) -> str:
        return f"Divergence(q^{self.exponent}: {self.lhs.render()} != {self.rhs.render()})"


class AnalyticSeries:
    """pi^pi_power * body"""

    __slots__ = ("pi_power", "body")

    def __init__(self, pi_power: int, body: QSeries):
        self.body = body
        self.pi_power = 0 if body.is_zero() else int(pi_power)

    @classmethod
    def of(cls, body: QSeries, pi_power: int = 0) -> "AnalyticSeries":
        return cls(pi_power, body)

    # convenient views

    @property
    def grid(self) -> int:
        return self.body.grid

    @property
    def ring_order(self) -> int:
        return self.body.ring_order

    @property
    def valid_to(self) -> Fraction:
        return self.body.valid_to

    @property
    def order(self) -> Fraction:
        return self.body.order

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def coeff_at(self, e) -> CycloNum:
        return self.body.coeff_at(e)

    # arithmetic

    def _join_pi(self, other: "AnalyticSeries") -> int:
        if self.is_zero():
            return other.pi_power
        if other.is_zero() or self.pi_power == other.pi_power:
            return self.pi_power
        raise PiPowerMismatch(f"cannot add pi^{self.pi_power} and pi^{other.pi_power} series")

    def __add__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        return AnalyticSeries(self._join_pi(other), self.body + other.body)

    def __sub__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        return AnalyticSeries(self._join_pi(other), self.body - other.body)

    def __neg__(self) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power, -self.body)

    def __mul__(self, other) -> "AnalyticSeries":
        if isinstance(other, AnalyticSeries):
            return AnalyticSeries(self.pi_power + other.pi_power, self.body * other.body)
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        return self * other.invert()

    def __pow__(self, exponent: int) -> "AnalyticSeries":
        return self.pow(exponent)

    def scalar_mul(self, c: Scalar) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power, self.body.scalar_mul(c))

    def scale(self, c: Scalar, pi_power: int = 0) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power + pi_power, self.body.scalar_mul(c))

    def invert(self) -> "AnalyticSeries":
        return AnalyticSeries(-self.pi_power, self.body.invert())

    def pow(self, exponent: int) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power * exponent, self.body.power(exponent))

    def rescale_tau(self, k) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power, self.body.rescale(k))

    def tau_deriv(self) -> "AnalyticSeries":
        two_i = imag_unit(self.ring_order) * 2
        return AnalyticSeries(self.pi_power + 1, self.body.euler_op().scalar_mul(two_i))

    def tau_dlog(self) -> "AnalyticSeries":
        two_i = imag_unit(self.ring_order) * 2
        body = self.body.euler_op() * self.body.invert()
        return AnalyticSeries(1, body.scalar_mul(two_i))

    def truncate(self, valid_to) -> "AnalyticSeries":
        return AnalyticSeries(self.pi_power, self.body.truncate(valid_to))

    def __repr__(self) -> str:
        return f"pi^{self.pi_power} * {self.body!r}"


# module-level operations

def monomial(pi_power: int, c: Scalar, e, valid_to, grid: int = DEFAULT_GRID,
             ring_order: int = DEFAULT_ORDER) -> AnalyticSeries:
    e = Fraction(e)
    n = _grid_index(e, grid)
    coeff = _as_cyclo(c, ring_order)
    if not coeff.is_zero() and e >= Fraction(valid_to):
        raise BeyondValidity(f"monomial q^{e} lies beyond its validity bound {valid_to}")
    return AnalyticSeries(pi_power, QSeries({n: coeff}, valid_to, grid, ring_order))


def zero_series(valid_to, grid: int = DEFAULT_GRID, ring_order: int = DEFAULT_ORDER) -> AnalyticSeries:
    return AnalyticSeries(0, QSeries.zero(valid_to, grid, ring_order))


def constant_series(c: Scalar, valid_to, grid: int = DEFAULT_GRID,
                    ring_order: int = DEFAULT_ORDER, pi_power: int = 0) -> AnalyticSeries:
    return AnalyticSeries(pi_power, QSeries.constant(c, valid_to, grid, ring_order))


def add(f: AnalyticSeries, g: AnalyticSeries) -> AnalyticSeries:
    return f + g


def sub(f: AnalyticSeries, g: AnalyticSeries) -> AnalyticSeries:
    return f - g


def mul(f: AnalyticSeries, g: AnalyticSeries) -> AnalyticSeries:
    return f * g


def scalar_mul(c: Scalar, f: AnalyticSeries) -> AnalyticSeries:
    return f.scalar_mul(c)


def invert(f: AnalyticSeries) -> AnalyticSeries:
    return f.invert()


def rescale_tau(f: AnalyticSeries, k) -> AnalyticSeries:
    return f.rescale_tau(k)


def tau_dlog(f: AnalyticSeries) -> AnalyticSeries:
    return f.tau_dlog()


def tau_deriv(f: AnalyticSeries) -> AnalyticSeries:
    return f.tau_deriv()


def coeff_at(f: AnalyticSeries, e) -> CycloNum:
    return f.coeff_at(e)


def eq_upto(f: AnalyticSeries, g: AnalyticSeries, bound) -> Optional[Divergence]:
    """None when f and g agree below q^bound, else the first divergence"""
    bound = Fraction(bound)
    if bound > min(f.valid_to, g.valid_to):
        raise BeyondValidity(
            f"comparison up to q^{bound} but operands are valid below q^{f.valid_to} and q^{g.valid_to}")
    f.body._check(g.body)
    left = f.body.restricted(bound)
    right = g.body.restricted(bound)
    if left and right and f.pi_power != g.pi_power:
        raise PiPowerMismatch(f"comparing pi^{f.pi_power} with pi^{g.pi_power}")
    zero = CycloNum.zero(f.ring_order)
    for n in sorted(set(left) | set(right)):
        a = left.get(n, zero)
        b = right.get(n, zero)
        if a != b:
            return Divergence(Fraction(n, f.grid), a, b, f.pi_power, g.pi_power)
    return None


def render_coefficient(c: CycloNum, pi_power: int = 0) -> str:
    """Exact text form of c * pi^p"""
    text = c.render()
    if pi_power == 0 or c.is_zero():
        return text
    if c.as_rational() is not None and "/" in text:
        text = f"({text})"
    return f"{text}*pi^{pi_power}"
