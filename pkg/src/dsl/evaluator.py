"""
Lowering of expression trees to series operations.

EvalContext fixes the working order, grid and ring for one evaluation and
memoises the theta and eta atoms, so identities that reuse the same theta
constants build each of them once.
"""

import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from src.algebra.cyclotomic import CycloNum, imag_unit, sqrt2, sqrt3
from src.dsl.parser import (
    Add, Const, Div, Dlog, Dtau, Eta, IntPow, Mul, Neg, Node, PiPow, RationalLit, Rescale, Sub, Theta,
    parse,
)
from src.series.qseries import AnalyticSeries, QSeries
from src.theta.generators import (
    EtaQuotientSpec, ThetaSpec, a_series, engine_defaults, eta_quotient, theta_series,
)
from src.theta.jets import ThetaJet, theta_jet
from src.utils.errors import EvalError, QSeriesError

logger = logging.getLogger("Evaluator")

Scalar = Tuple[CycloNum, int]


class EvalContext:
    def __init__(self, order, grid: Optional[int] = None, ring_order: Optional[int] = None):
        self.order = Fraction(order)
        self.grid, self.ring_order = engine_defaults(grid, ring_order)
        self._cache: Dict[tuple, AnalyticSeries] = {}

    def _memo(self, key: tuple, build) -> AnalyticSeries:
        value = self._cache.get(key)
        if value is None:
            value = build()
            self._cache[key] = value
        return value

    # atoms

    def theta(self, eps, eps_prime, tau_mult=1, z_order: int = 0) -> AnalyticSeries:
        spec = ThetaSpec(eps, eps_prime, tau_mult, z_order)
        return self._memo(("theta", spec), lambda: theta_series(spec, self.order, self.grid, self.ring_order))

    def eta(self, *factors) -> AnalyticSeries:
        spec = EtaQuotientSpec(factors)
        return self._memo(("eta", spec.factors),
                          lambda: eta_quotient(spec, self.order, self.grid, self.ring_order))

    def log_deriv(self, eps, eps_prime, tau_mult=1) -> AnalyticSeries:
        """theta'/theta"""
        key = ("L", Fraction(eps), Fraction(eps_prime), Fraction(tau_mult))
        return self._memo(key, lambda: self.theta(eps, eps_prime, tau_mult, 1)
                          / self.theta(eps, eps_prime, tau_mult))

    def second_ratio(self, eps, eps_prime, tau_mult=1) -> AnalyticSeries:
        """theta''/theta"""
        key = ("R2", Fraction(eps), Fraction(eps_prime), Fraction(tau_mult))
        return self._memo(key, lambda: self.theta(eps, eps_prime, tau_mult, 2)
                          / self.theta(eps, eps_prime, tau_mult))

    def third_ratio(self) -> AnalyticSeries:
        """theta'''[1,1] / theta'[1,1]"""
        return self._memo(("R3",), lambda: self.theta(1, 1, 1, 3) / self.theta(1, 1, 1, 1))

    def a(self, tau_mult=1) -> AnalyticSeries:
        """a(q^k)"""
        k = Fraction(tau_mult)
        return self._memo(("a", k), lambda: a_series(self.order / k, self.grid, self.ring_order).rescale_tau(k))

    def jet(self, eps, eps_prime, tau_mult=1, max_order: int = 4) -> ThetaJet:
        key = ("jet", Fraction(eps), Fraction(eps_prime), Fraction(tau_mult), int(max_order))
        return self._memo(key, lambda: theta_jet(eps, eps_prime, tau_mult, max_order, self.order,
                                                 self.grid, self.ring_order))

    def constant(self, c, pi_power: int = 0) -> AnalyticSeries:
        if isinstance(c, CycloNum):
            value = c
        else:
            value = CycloNum.embed(c, self.ring_order)
        return AnalyticSeries(pi_power, QSeries.constant(value, self.order, self.grid, self.ring_order))

    def zero(self) -> AnalyticSeries:
        return AnalyticSeries(0, QSeries.zero(self.order, self.grid, self.ring_order))

    # constants

    @property
    def i(self) -> CycloNum:
        return imag_unit(self.ring_order)

    @property
    def sqrt2(self) -> CycloNum:
        return sqrt2(self.ring_order)

    @property
    def sqrt3(self) -> CycloNum:
        return sqrt3(self.ring_order)


def _scalar(node: Node, ctx: EvalContext) -> Optional[Scalar]:
    """(c, p) when the subtree is the constant c * pi^p"""
    if isinstance(node, RationalLit):
        return CycloNum.embed(node.value, ctx.ring_order), 0
    if isinstance(node, PiPow):
        return CycloNum.one(ctx.ring_order), node.power
    if isinstance(node, Const):
        return getattr(ctx, node.name), 0
    if isinstance(node, Neg):
        inner = _scalar(node.operand, ctx)
        return None if inner is None else (-inner[0], inner[1])
    if isinstance(node, (Mul, Div, Add, Sub)):
        left = _scalar(node.left, ctx)
        right = _scalar(node.right, ctx)
        if left is None or right is None:
            return None
        if isinstance(node, Mul):
            return left[0] * right[0], left[1] + right[1]
        if isinstance(node, Div):
            if right[0].is_zero():
                raise EvalError("division by zero constant", node.span)
            return left[0] / right[0], left[1] - right[1]
        if left[1] != right[1] and not left[0].is_zero() and not right[0].is_zero():
            return None
        power = left[1] if not left[0].is_zero() else right[1]
        value = left[0] + right[0] if isinstance(node, Add) else left[0] - right[0]
        return value, power if not value.is_zero() else 0
    if isinstance(node, IntPow):
        base = _scalar(node.base, ctx)
        if base is None:
            return None
        if base[0].is_zero() and node.exponent < 0:
            raise EvalError("zero constant raised to a negative power", node.span)
        return base[0] ** node.exponent, base[1] * node.exponent
    return None


def _eta_factors(node: Node) -> Optional[Dict[Fraction, int]]:
    """Exponents of a product/quotient made only of eta atoms"""
    if isinstance(node, Eta):
        return {node.tau_mult: 1}
    if isinstance(node, IntPow):
        inner = _eta_factors(node.base)
        return None if inner is None else {k: a * node.exponent for k, a in inner.items()}
    if isinstance(node, (Mul, Div)):
        left = _eta_factors(node.left)
        right = _eta_factors(node.right)
        if left is None or right is None:
            return None
        sign = 1 if isinstance(node, Mul) else -1
        merged = dict(left)
        for k, a in right.items():
            merged[k] = merged.get(k, 0) + sign * a
        return merged
    return None


def evaluate_in(node: Node, ctx: EvalContext) -> AnalyticSeries:
    try:
        return _evaluate(node, ctx)
    except EvalError:
        raise
    except QSeriesError as exc:
        raise EvalError(str(exc), node.span) from exc


def _evaluate(node: Node, ctx: EvalContext) -> AnalyticSeries:
    scalar = _scalar(node, ctx)
    if scalar is not None:
        return ctx.constant(scalar[0], scalar[1])

    factors = _eta_factors(node)
    if factors is not None:
        return ctx.eta(*factors.items())

    try:
        if isinstance(node, Theta):
            return ctx.theta(node.eps, node.eps_prime, node.tau_mult, node.derivs)
        if isinstance(node, Neg):
            return -evaluate_in(node.operand, ctx)
        if isinstance(node, Add):
            return evaluate_in(node.left, ctx) + evaluate_in(node.right, ctx)
        if isinstance(node, Sub):
            return evaluate_in(node.left, ctx) - evaluate_in(node.right, ctx)
        if isinstance(node, Mul):
            left = _scalar(node.left, ctx)
            if left is not None:
                return evaluate_in(node.right, ctx).scale(left[0], left[1])
            right = _scalar(node.right, ctx)
            if right is not None:
                return evaluate_in(node.left, ctx).scale(right[0], right[1])
            return evaluate_in(node.left, ctx) * evaluate_in(node.right, ctx)
        if isinstance(node, Div):
            right = _scalar(node.right, ctx)
            if right is not None:
                if right[0].is_zero():
                    raise EvalError("division by zero constant", node.span)
                return evaluate_in(node.left, ctx).scale(right[0].inv(), -right[1])
            return evaluate_in(node.left, ctx) * evaluate_in(node.right, ctx).invert()
        if isinstance(node, IntPow):
            return evaluate_in(node.base, ctx).pow(node.exponent)
        if isinstance(node, Dtau):
            return evaluate_in(node.operand, ctx).tau_deriv()
        if isinstance(node, Dlog):
            return evaluate_in(node.operand, ctx).tau_dlog()
        if isinstance(node, Rescale):
            inner = EvalContext(ctx.order / node.k, ctx.grid, ctx.ring_order)
            return evaluate_in(node.operand, inner).rescale_tau(node.k)
    except EvalError:
        raise
    except QSeriesError as exc:
        raise EvalError(str(exc), node.span) from exc
    raise EvalError(f"cannot evaluate {type(node).__name__}", node.span)


def evaluate(expr: Union[str, Node], order, grid: Optional[int] = None,
             ring_order: Optional[int] = None) -> AnalyticSeries:
    """Parse (if needed) and evaluate an expression, valid below q^order"""
    node = parse(expr) if isinstance(expr, str) else expr
    ctx = EvalContext(order, grid, ring_order)
    logger.debug(f"evaluating {expr if isinstance(expr, str) else type(expr).__name__} to q^{order}")
    return evaluate_in(node, ctx)
