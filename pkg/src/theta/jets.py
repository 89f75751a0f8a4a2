"""
z-jets of theta functions: the Taylor coefficients of theta[eps, eps'](z, k tau)
at z = 0, each one a q-series. Entry m holds theta^(m)/m!.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from src.algebra.cyclotomic import imag_unit
from src.series.qseries import AnalyticSeries, QSeries
from src.theta.generators import ThetaSpec, _theta_entries, engine_defaults
from src.utils.errors import UnsupportedOrder

logger = logging.getLogger("ThetaJet")

MAX_JET_ORDER = 4


class ThetaJet:
    __slots__ = ("spec", "max_order", "coeffs")

    def __init__(self, spec: Optional[ThetaSpec], coeffs: List[AnalyticSeries]):
        if not coeffs:
            raise ValueError("a jet needs at least its constant entry")
        self.spec = spec
        self.coeffs = list(coeffs)
        self.max_order = len(self.coeffs) - 1

    @property
    def valid_to(self) -> Fraction:
        return min(c.valid_to for c in self.coeffs)

    def __getitem__(self, m: int) -> AnalyticSeries:
        return self.coeffs[m]

    def __add__(self, other: "ThetaJet") -> "ThetaJet":
        top = min(self.max_order, other.max_order)
        return ThetaJet(None, [self.coeffs[m] + other.coeffs[m] for m in range(top + 1)])

    def __sub__(self, other: "ThetaJet") -> "ThetaJet":
        top = min(self.max_order, other.max_order)
        return ThetaJet(None, [self.coeffs[m] - other.coeffs[m] for m in range(top + 1)])

    def __mul__(self, other) -> "ThetaJet":
        if isinstance(other, ThetaJet):
            return jet_mul(self, other)
        return ThetaJet(None, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        head = self.spec.render() if self.spec else "jet"
        return f"ThetaJet({head}, z^{self.max_order})"


def theta_jet(eps, eps_prime, tau_mult, max_order: int, order, grid: Optional[int] = None,
              ring_order: Optional[int] = None) -> ThetaJet:
    if not 0 <= max_order <= MAX_JET_ORDER:
        raise UnsupportedOrder(f"jet order {max_order} outside 0..{MAX_JET_ORDER}")
    grid, ring_order = engine_defaults(grid, ring_order)
    spec = ThetaSpec(eps, eps_prime, tau_mult)
    coeffs = _theta_entries(spec.eps, spec.eps_prime, spec.tau_mult, max_order, order,
                            grid, ring_order, factorial_scaled=True)
    logger.debug(f"jet of {spec.render()} to z^{max_order}, q^{order}")
    return ThetaJet(spec, coeffs)


def jet_scalar(series: AnalyticSeries, max_order: int) -> ThetaJet:
    """A z-constant jet"""
    zero = AnalyticSeries(0, QSeries.zero(series.valid_to, series.grid, series.ring_order))
    return ThetaJet(None, [series] + [zero] * max_order)


def jet_mul(a: ThetaJet, b: ThetaJet) -> ThetaJet:
    """Cauchy product in z, truncated at the smaller order"""
    top = min(a.max_order, b.max_order)
    coeffs = []
    for m in range(top + 1):
        total = None
        for i in range(m + 1):
            p = a.coeffs[i] * b.coeffs[m - i]
            total = p if total is None else total + p
        coeffs.append(total)
    return ThetaJet(None, coeffs)


def jet_invert(a: ThetaJet) -> ThetaJet:
    """1/a in z; the constant entry must have a leading term"""
    u = a.coeffs[0].invert()
    coeffs = [u]
    for m in range(1, a.max_order + 1):
        total = None
        for i in range(1, m + 1):
            p = a.coeffs[i] * coeffs[m - i]
            total = p if total is None else total + p
        coeffs.append(-(u * total))
    return ThetaJet(None, coeffs)


def jet_derivative(a: ThetaJet) -> ThetaJet:
    """d/dz; the jet loses one order"""
    if a.max_order == 0:
        raise UnsupportedOrder("cannot differentiate a jet of order 0")
    return ThetaJet(None, [a.coeffs[m + 1].scalar_mul(m + 1) for m in range(a.max_order)])


def jet_truncate(a: ThetaJet, max_order: int) -> ThetaJet:
    return ThetaJet(a.spec, a.coeffs[:max_order + 1])


def heat_equation_sides(eps, eps_prime, tau_mult, order, grid: Optional[int] = None,
                        ring_order: Optional[int] = None) -> Tuple[AnalyticSeries, AnalyticSeries]:
    """(theta'', (4 pi i / k) d/dtau theta) for theta[eps, eps'](0, k tau)"""
    grid, ring_order = engine_defaults(grid, ring_order)
    jet = theta_jet(eps, eps_prime, tau_mult, 2, order, grid, ring_order)
    second = jet[2].scalar_mul(2)
    four_i = imag_unit(ring_order) * 4 / Fraction(tau_mult)
    drift = jet[0].tau_deriv().scale(four_i, 1)
    return second, drift
