"""
Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(M)-1) of
Q[x]/Phi_M(x) and are always reduced, so equality is coordinate equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import divisors, mobius, totient

from src.utils.errors import CycloDivisionByZero, OrderMismatch, UnsupportedOrder

Rational = Union[int, Fraction]

DEFAULT_ORDER = 48


class IntPolynomial:
    """Integer polynomial, low degree first, no trailing zeros"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        items = [int(c) for c in coeffs]
        while items and items[-1] == 0:
            items.pop()
        self.coeffs: Tuple[int, ...] = tuple(items)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntPolynomial(out)

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient by a monic divisor; raises if the division leaves a remainder"""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise ValueError("exact_div needs a monic divisor")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            if any(rem):
                raise ValueError("division is not exact")
            return IntPolynomial(())
        quot = [0] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c:
                quot[k - d] = c
                for j, b in enumerate(divisor.coeffs):
                    if b:
                        rem[k - d + j] -= c * b
        if any(rem[:d]):
            raise ValueError("division is not exact")
        return IntPolynomial(quot)

    def evaluate(self, point: "CycloNum") -> "CycloNum":
        """Horner evaluation at a field element"""
        acc = CycloNum.zero(point.order)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


@lru_cache(maxsize=None)
def cyclo_poly(M: int) -> IntPolynomial:
    """Phi_M as the exact quotient prod_{d|M} (x^d - 1)^mu(M/d)"""
    if M < 1:
        raise ValueError(f"cyclotomic order must be positive, got {M}")
    numerator = IntPolynomial((1,))
    denominator = IntPolynomial((1,))
    for d in divisors(M):
        mu = int(mobius(M // d))
        if mu == 0:
            continue
        factor = IntPolynomial([-1] + [0] * (d - 1) + [1])
        if mu == 1:
            numerator = numerator * factor
        else:
            denominator = denominator * factor
    return numerator.exact_div(denominator)


class _Field:
    """Per-order tables: degree, sparse low part of Phi_M and the root table"""

    def __init__(self, M: int):
        self.order = M
        self.phi = int(totient(M))
        poly = cyclo_poly(M)
        # x^phi = -sum_{j<phi} a_j x^j
        self.low = [(j, a) for j, a in enumerate(poly.coeffs[:-1]) if a]
        self.zero_coords = (Fraction(0),) * self.phi
        self._roots: List[Tuple[Fraction, ...]] = [self._root_coords(k) for k in range(M)]

    def reduce_ints(self, values: List[int]) -> List[int]:
        phi = self.phi
        for k in range(len(values) - 1, phi - 1, -1):
            c = values[k]
            if c:
                values[k] = 0
                base = k - phi
                for j, a in self.low:
                    values[base + j] -= c * a
        return values[:phi] + [0] * max(0, phi - len(values))

    def _root_coords(self, k: int) -> Tuple[Fraction, ...]:
        values = [0] * (k + 1)
        values[k] = 1
        return tuple(Fraction(v) for v in self.reduce_ints(values))

    def root(self, k: int) -> Tuple[Fraction, ...]:
        return self._roots[k % self.order]


@lru_cache(maxsize=None)
def _field(M: int) -> _Field:
    if M < 1:
        raise ValueError(f"cyclotomic order must be positive, got {M}")
    return _Field(M)


def _int_vector(coeffs: Sequence[Fraction]) -> Tuple[List[Tuple[int, int]], int]:
    """Sparse integer numerators over a common denominator"""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = den * c.denominator // gcd(den, c.denominator)
    sparse = [(i, c.numerator * (den // c.denominator)) for i, c in enumerate(coeffs) if c]
    return sparse, den


class CycloNum:
    """Immutable element of Q(zeta_M) in reduced power-basis coordinates"""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence[Rational]):
        field = _field(order)
        values = [Fraction(c) for c in coeffs]
        if len(values) > field.phi:
            ints_den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in values), 1)
            ints = [int(v * ints_den) for v in values]
            values = [Fraction(v, ints_den) for v in field.reduce_ints(ints)]
        elif len(values) < field.phi:
            values = values + [Fraction(0)] * (field.phi - len(values))
        self.order = order
        self.coeffs: Tuple[Fraction, ...] = tuple(values)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple[Fraction, ...]) -> "CycloNum":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "CycloNum":
        return cls._raw(order, _field(order).zero_coords)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "CycloNum":
        return cls.embed(1, order)

    @classmethod
    def embed(cls, value: Rational, order: int = DEFAULT_ORDER) -> "CycloNum":
        field = _field(order)
        return cls._raw(order, (Fraction(value),) + field.zero_coords[1:])

    # predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_rational(self) -> Optional[Fraction]:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # arithmetic

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise OrderMismatch(f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.embed(other, self.order)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def __add__(self, other) -> "CycloNum":
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.order, (self.coeffs[0] + other,) + self.coeffs[1:])
        other = self._coerce(other)
        return CycloNum._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloNum":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycloNum":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycloNum":
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        left = self.as_rational()
        if left is not None:
            return CycloNum._raw(self.order, tuple(left * b for b in other.coeffs))
        right = other.as_rational()
        if right is not None:
            return CycloNum._raw(self.order, tuple(a * right for a in self.coeffs))

        field = _field(self.order)
        sa, da = _int_vector(self.coeffs)
        sb, db = _int_vector(other.coeffs)
        product = [0] * (2 * field.phi - 1)
        for i, a in sa:
            for j, b in sb:
                product[i + j] += a * b
        den = da * db
        return CycloNum._raw(self.order, tuple(Fraction(v, den) for v in field.reduce_ints(product)))

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        if self.is_zero():
            raise CycloDivisionByZero("inverse of zero in the cyclotomic field")
        r = self.as_rational()
        if r is not None:
            return CycloNum.embed(1 / r, self.order)
        modulus = [Fraction(c) for c in cyclo_poly(self.order).coeffs]
        g, s = _ext_euclid(list(self.coeffs), modulus)
        scale = 1 / g[0]
        return CycloNum(self.order, [c * scale for c in s])

    def __truediv__(self, other) -> "CycloNum":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise CycloDivisionByZero("division by rational zero")
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "CycloNum":
        return self._coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "CycloNum":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = CycloNum.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "CycloNum":
        """Complex conjugation zeta -> zeta^-1"""
        field = _field(self.order)
        acc = [Fraction(0)] * field.phi
        for j, c in enumerate(self.coeffs):
            if c:
                for idx, v in enumerate(field.root(-j)):
                    if v:
                        acc[idx] += c * v
        return CycloNum._raw(self.order, tuple(acc))

    # comparison / rendering

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def render(self) -> str:
        r = self.as_rational()
        if r is not None:
            return str(r)
        return f"zeta{self.order}[{', '.join(str(c) for c in self.coeffs)}]"

    def __repr__(self) -> str:
        return f"CycloNum({self.render()})"


def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: List[Fraction], den: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    if len(num) < len(den):
        return [], num
    lead = den[-1]
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(den):
                num[k + j] -= c * b
    return _poly_trim(quot), _poly_trim(num[:len(den) - 1])


def _poly_sub_mul(a: List[Fraction], q: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """a - q*b"""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] -= x * y
    return _poly_trim(out)


def _ext_euclid(a: List[Fraction], m: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Return (g, s) with s*a = g mod m and g = gcd(a, m)"""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0: List[Fraction] = []
    s1: List[Fraction] = [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise CycloDivisionByZero("element is not invertible modulo the cyclotomic polynomial")
    return r0, s0


# public operations

def make_root(M: int, k: int) -> CycloNum:
    return CycloNum._raw(M, _field(M).root(k))


def add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def neg(a: CycloNum) -> CycloNum:
    return -a


def inv(a: CycloNum) -> CycloNum:
    return a.inv()


def as_rational(a: CycloNum) -> Optional[Fraction]:
    return a.as_rational()


def sqrt2(M: int = DEFAULT_ORDER) -> CycloNum:
    if M % 8:
        raise UnsupportedOrder(f"sqrt2 needs an order divisible by 8, got {M}")
    return make_root(M, M // 8) + make_root(M, -(M // 8))


def sqrt3(M: int = DEFAULT_ORDER) -> CycloNum:
    if M % 12:
        raise UnsupportedOrder(f"sqrt3 needs an order divisible by 12, got {M}")
    return make_root(M, M // 12) + make_root(M, -(M // 12))


def imag_unit(M: int = DEFAULT_ORDER) -> CycloNum:
    if M % 4:
        raise UnsupportedOrder(f"i needs an order divisible by 4, got {M}")
    return make_root(M, M // 4)


def phase(M: int, turns: Fraction) -> CycloNum:
    """exp(2 pi i * turns) as a root of unity of order M"""
    k = Fraction(turns) * M
    if k.denominator != 1:
        raise UnsupportedOrder(f"exp(2 pi i * {turns}) is not a {M}-th root of unity")
    return make_root(M, k.numerator)
