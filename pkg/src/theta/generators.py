"""
Series generators for theta constants with rational characteristics,
Dedekind eta, eta quotients and the hexagonal lattice sum a(q).

Two theta generators are kept side by side: the defining sum and the Jacobi
triple product. They are checked against each other by the selftest.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.cyclotomic import CycloNum, imag_unit, make_root
from src.series.qseries import AnalyticSeries, QSeries, _grid_index, _limit
from src.utils.config import get_config
from src.utils.errors import OffGrid, UnsupportedCharacteristic, UnsupportedOrder

logger = logging.getLogger("ThetaGen")

MAX_Z_ORDER = 3


def engine_defaults(grid: Optional[int] = None, ring_order: Optional[int] = None) -> Tuple[int, int]:
    """Fill in the grid E and ring order M from the engine config"""
    if grid is None:
        grid = int(get_config("engine.grid", 48))
    if ring_order is None:
        ring_order = int(get_config("engine.ring", 48))
    return grid, ring_order


class ThetaSpec:
    """One theta-constant symbol theta^(m)[eps, eps'](0, k tau)"""

    __slots__ = ("eps", "eps_prime", "tau_mult", "z_order")

    def __init__(self, eps, eps_prime, tau_mult=1, z_order: int = 0):
        self.eps = Fraction(eps)
        self.eps_prime = Fraction(eps_prime)
        self.tau_mult = Fraction(tau_mult)
        self.z_order = int(z_order)
        if self.eps.denominator not in (1, 2):
            raise UnsupportedCharacteristic(f"eps must have denominator 1 or 2, got {self.eps}")
        if self.tau_mult <= 0:
            raise UnsupportedCharacteristic(f"tau multiplier must be positive, got {self.tau_mult}")
        if self.z_order < 0:
            raise UnsupportedOrder(f"negative z-derivative order {self.z_order}")

    def render(self) -> str:
        return f"theta[{self.eps},{self.eps_prime}]{chr(39) * self.z_order}({self.tau_mult}t)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaSpec):
            return NotImplemented
        return (self.eps, self.eps_prime, self.tau_mult, self.z_order) == \
            (other.eps, other.eps_prime, other.tau_mult, other.z_order)

    def __hash__(self) -> int:
        return hash((self.eps, self.eps_prime, self.tau_mult, self.z_order))

    def __repr__(self) -> str:
        return f"ThetaSpec({self.render()})"


class EtaQuotientSpec:
    """prod eta(k tau)^a over (k, a) factors"""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Tuple]):
        merged: Dict[Fraction, int] = {}
        for k, a in factors:
            k = Fraction(k)
            if k <= 0:
                raise ValueError(f"eta tau multiplier must be positive, got {k}")
            merged[k] = merged.get(k, 0) + int(a)
        if not merged:
            raise ValueError("eta quotient needs at least one factor")
        self.factors: Tuple[Tuple[Fraction, int], ...] = tuple(sorted(merged.items()))

    @property
    def leading_exponent(self) -> Fraction:
        return sum((k * a for k, a in self.factors), Fraction(0)) / 24

    def __repr__(self) -> str:
        return "EtaQuotientSpec(" + " ".join(f"eta({k}t)^{a}" for k, a in self.factors) + ")"


# theta

def _theta_terms(eps: Fraction, eps_prime: Fraction, tau_mult: Fraction, order: Fraction,
                 grid: int, ring_order: int) -> Iterator[Tuple[int, Fraction, CycloNum]]:
    """(grid index, r, phase) for r = n + eps/2 with tau_mult r^2 / 2 < order"""
    if order <= 0:
        return
    radius = math.isqrt(math.ceil(2 * order / tau_mult)) + 2
    for n in range(-radius - 1, radius + 1):
        r = n + eps / 2
        e = tau_mult * r * r / 2
        if e >= order:
            continue
        idx = e * grid
        if idx.denominator != 1:
            raise UnsupportedCharacteristic(
                f"exponent {e} of theta[{eps},{eps_prime}]({tau_mult}t) is off the 1/{grid} grid")
        root = r * eps_prime / 2 * ring_order
        if root.denominator != 1:
            raise UnsupportedCharacteristic(
                f"phase of theta[{eps},{eps_prime}] is not a {ring_order}-th root of unity")
        yield idx.numerator, r, make_root(ring_order, root.numerator)


def _theta_entries(eps, eps_prime, tau_mult, max_m: int, order, grid: int, ring_order: int,
                   factorial_scaled: bool) -> List[AnalyticSeries]:
    eps, eps_prime, tau_mult, order = Fraction(eps), Fraction(eps_prime), Fraction(tau_mult), Fraction(order)
    two_i = imag_unit(ring_order) * 2
    prefactors = [CycloNum.one(ring_order)]
    for m in range(1, max_m + 1):
        value = prefactors[-1] * two_i
        prefactors.append(value)
    accs: List[Dict[int, CycloNum]] = [{} for _ in range(max_m + 1)]
    for idx, r, phase in _theta_terms(eps, eps_prime, tau_mult, order, grid, ring_order):
        for m in range(max_m + 1):
            if m and r == 0:
                break
            weight = r ** m
            if factorial_scaled:
                weight /= math.factorial(m)
            term = phase * weight
            acc = accs[m]
            acc[idx] = acc[idx] + term if idx in acc else term
    return [
        AnalyticSeries(m, QSeries(acc, order, grid, ring_order).scalar_mul(prefactors[m]))
        for m, acc in enumerate(accs)
    ]


def theta_series(spec: ThetaSpec, order, grid: Optional[int] = None,
                 ring_order: Optional[int] = None) -> AnalyticSeries:
    """theta^(m)[eps, eps'](0, k tau) by direct summation, valid below q^order"""
    grid, ring_order = engine_defaults(grid, ring_order)
    if spec.z_order > MAX_Z_ORDER:
        raise UnsupportedOrder(f"z-derivative order {spec.z_order} exceeds {MAX_Z_ORDER}")
    entries = _theta_entries(spec.eps, spec.eps_prime, spec.tau_mult, spec.z_order, order,
                             grid, ring_order, factorial_scaled=False)
    result = entries[spec.z_order]
    logger.debug(f"{spec.render()} to q^{order}: {len(result.body.terms)} terms")
    return result


def theta(eps, eps_prime, tau_mult=1, z_order: int = 0, order=30,
          grid: Optional[int] = None, ring_order: Optional[int] = None) -> AnalyticSeries:
    return theta_series(ThetaSpec(eps, eps_prime, tau_mult, z_order), order, grid, ring_order)


def theta_triple_product(eps, eps_prime, tau_mult, order, grid: Optional[int] = None,
                         ring_order: Optional[int] = None) -> AnalyticSeries:
    """theta[eps, eps'](0, k tau) from the Jacobi triple product in x = q^(k/2)"""
    grid, ring_order = engine_defaults(grid, ring_order)
    eps, eps_prime, k, order = Fraction(eps), Fraction(eps_prime), Fraction(tau_mult), Fraction(order)
    if eps.denominator not in (1, 2):
        raise UnsupportedCharacteristic(f"eps must have denominator 1 or 2, got {eps}")

    def root(turns: Fraction) -> CycloNum:
        idx = turns * ring_order
        if idx.denominator != 1:
            raise UnsupportedCharacteristic(f"phase exp(2 pi i {turns}) is not a {ring_order}-th root of unity")
        return make_root(ring_order, idx.numerator)

    def binomial(c: CycloNum, x_power: Fraction) -> QSeries:
        """1 + c x^x_power"""
        e = k * x_power / 2
        try:
            n = _grid_index(e, grid)
        except OffGrid as exc:
            raise UnsupportedCharacteristic(str(exc)) from exc
        terms = {0: CycloNum.one(ring_order)}
        terms[n] = terms[n] + c if n in terms else c
        return QSeries(terms, order, grid, ring_order)

    plus = root(eps_prime / 2)
    minus = root(-eps_prime / 2)
    minus_one = CycloNum.embed(-1, ring_order)

    body = QSeries.constant(1, order, grid, ring_order)
    n = 1
    while True:
        exps = [2 * n, 2 * n - 1 + eps, 2 * n - 1 - eps]
        if min(k * x / 2 for x in exps) >= order:
            break
        body = body * binomial(minus_one, exps[0])
        body = body * binomial(plus, exps[1])
        body = body * binomial(minus, exps[2])
        if body.is_zero():
            break
        n += 1

    lead = k * eps * eps / 8
    try:
        body = body.shift(lead).scalar_mul(root(eps * eps_prime / 4))
    except OffGrid as exc:
        raise UnsupportedCharacteristic(str(exc)) from exc
    return AnalyticSeries(0, body.truncate(order))


# eta

def _pentagonal(k: Fraction, order: Fraction, grid: int, ring_order: int) -> QSeries:
    """prod (1 - q^(k n)) as sum_j (-1)^j q^(k j(3j-1)/2), valid below q^order"""
    terms: Dict[int, CycloNum] = {}
    if order > 0:
        bound = math.isqrt(math.ceil(2 * order / (3 * k))) + 2
        for j in range(-bound, bound + 1):
            e = k * j * (3 * j - 1) / 2
            if e >= order:
                continue
            terms[_grid_index(e, grid)] = CycloNum.embed(-1 if j % 2 else 1, ring_order)
    return QSeries(terms, order, grid, ring_order)


def eta_series(tau_mult, order, grid: Optional[int] = None,
               ring_order: Optional[int] = None) -> AnalyticSeries:
    """eta(k tau) via the pentagonal-number theorem"""
    grid, ring_order = engine_defaults(grid, ring_order)
    k, order = Fraction(tau_mult), Fraction(order)
    lead = k / 24
    _grid_index(lead, grid)
    return AnalyticSeries(0, _pentagonal(k, order - lead, grid, ring_order).shift(lead))


def eta_product(tau_mult, order, grid: Optional[int] = None,
                ring_order: Optional[int] = None) -> AnalyticSeries:
    """eta(k tau) from the raw product q^(k/24) prod (1 - q^(k n))"""
    grid, ring_order = engine_defaults(grid, ring_order)
    k, order = Fraction(tau_mult), Fraction(order)
    lead = k / 24
    body_order = order - lead
    body = QSeries.constant(1, body_order, grid, ring_order)
    n = 1
    while k * n < body_order:
        factor = QSeries({0: CycloNum.one(ring_order), _grid_index(k * n, grid): CycloNum.embed(-1, ring_order)},
                         body_order, grid, ring_order)
        body = body * factor
        n += 1
    return AnalyticSeries(0, body.shift(lead))


def eta_quotient(spec: EtaQuotientSpec, order, grid: Optional[int] = None,
                 ring_order: Optional[int] = None) -> AnalyticSeries:
    """prod eta(k tau)^a, valid below q^order; negative leading exponents allowed"""
    grid, ring_order = engine_defaults(grid, ring_order)
    order = Fraction(order)
    lead = spec.leading_exponent
    _grid_index(lead, grid)
    # the pentagonal bodies are units with leading term 1, so powers and
    # inverses keep their full validity
    body_order = order - lead
    body = QSeries.constant(1, body_order, grid, ring_order)
    for k, a in spec.factors:
        if a:
            body = body * _pentagonal(k, body_order, grid, ring_order).power(a)
    return AnalyticSeries(0, body.truncate(body_order).shift(lead))


def eta_quotient_of(*factors: Tuple, order=30, grid: Optional[int] = None,
                    ring_order: Optional[int] = None) -> AnalyticSeries:
    return eta_quotient(EtaQuotientSpec(factors), order, grid, ring_order)


# a(q)

def a_series(order, grid: Optional[int] = None, ring_order: Optional[int] = None) -> AnalyticSeries:
    """a(q) = sum q^(m^2 + mn + n^2) by brute-force double sum"""
    grid, ring_order = engine_defaults(grid, ring_order)
    order = Fraction(order)
    top = _limit(order, 1)
    if top <= 0:
        return AnalyticSeries(0, QSeries.zero(order, grid, ring_order))
    bound = math.isqrt(4 * top // 3 + 1) + 1
    m = np.arange(-bound, bound + 1, dtype=np.int64)
    values = (m[:, None] ** 2 + m[:, None] * m[None, :] + m[None, :] ** 2).ravel()
    counts = np.bincount(values[values < top], minlength=top)
    terms = {int(n) * grid: CycloNum.embed(int(c), ring_order) for n, c in enumerate(counts) if c}
    return AnalyticSeries(0, QSeries(terms, order, grid, ring_order))
