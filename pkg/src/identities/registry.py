"""
The identity registry: every displayed theorem, formula and proof step that
the workbench can check, as an executable pair of sides.

Series identities are mostly written in the expression language and lowered
by the evaluator; the rest (hexagonal sums, divisor-function series, jets,
the odd-prime cusp expression) use native builders over an EvalContext.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple, Union

from src.arith.convolution import CONVOLUTION_THEOREMS, seq_to_series
from src.arith.divisors import delta_star, epsilon, epsilon_star
from src.arith.forms import FORM_THEOREMS, FormTheorem
from src.dsl.evaluator import EvalContext, evaluate_in
from src.dsl.parser import parse
from src.identities.farkas_kra import FK_GRID, FK_VANISHING, fk_cusp_expression, fk_ring_order
from src.series.qseries import AnalyticSeries
from src.theta.generators import eta_product, eta_series, theta_triple_product
from src.theta.jets import ThetaJet, heat_equation_sides, jet_derivative, jet_invert, jet_mul
from src.utils.config import get_config
from src.utils.errors import UnknownIdentity

logger = logging.getLogger("Registry")

SERIES = "series_identity"
SEQUENCE = "sequence_identity"
JET = "jet_identity"

Side = Union[str, Callable[[EvalContext], AnalyticSeries]]


class IdentityCase:
    """One checkable identity.

    Series cases carry lhs/rhs (expression text or a builder over an
    EvalContext) or a `sides` builder returning both at once. Jet cases carry
    `sides(ctx, z_order)` returning two ThetaJets. Sequence cases carry a
    FormTheorem or ConvolutionTheorem whose rows are compared for n <= N.
    """

    def __init__(self, name: str, kind: str, section: str, anchor: str,
                 lhs: Optional[Side] = None, rhs: Optional[Side] = None,
                 sides: Optional[Callable] = None, sequence=None,
                 order_key: Optional[str] = None, grid: Optional[int] = None,
                 ring_order: Optional[int] = None):
        self.name = name
        self.kind = kind
        self.section = section
        self.anchor = anchor
        self.lhs = lhs
        self.rhs = rhs
        self.sides = sides
        self.sequence = sequence
        self.order_key = order_key or {SERIES: "series", JET: "jet"}.get(kind)
        self.grid = grid
        self.ring_order = ring_order

    @property
    def lhs_expr(self) -> Optional[str]:
        return self.lhs if isinstance(self.lhs, str) else None

    @property
    def rhs_expr(self) -> Optional[str]:
        return self.rhs if isinstance(self.rhs, str) else None

    def default_order(self) -> Fraction:
        if self.kind == SEQUENCE:
            return Fraction(self.sequence.default_max())
        return Fraction(get_config(f"engine.orders.{self.order_key}", 30))

    def default_z_order(self) -> int:
        return int(get_config("engine.orders.jet_z", 4))

    def context(self, order) -> EvalContext:
        return EvalContext(order, self.grid, self.ring_order)

    def build(self, ctx: EvalContext, z_order: Optional[int] = None):
        """Both sides at the context's working order"""
        if self.kind == JET:
            return self.sides(ctx, self.default_z_order() if z_order is None else z_order)
        if self.kind != SERIES:
            raise TypeError(f"{self.name} is a {self.kind}; compare its rows instead")
        if self.sides is not None:
            return self.sides(ctx)
        return _side(self.lhs, ctx), _side(self.rhs, ctx)

    def __repr__(self) -> str:
        return f"IdentityCase({self.name}, {self.kind}, §{self.section})"


def _side(side: Side, ctx: EvalContext) -> AnalyticSeries:
    if isinstance(side, str):
        return evaluate_in(_parsed(side), ctx)
    return side(ctx)


@lru_cache(maxsize=512)
def _parsed(text: str):
    return parse(text)


# expression helpers

def _th(char: str, k="1", m: int = 0) -> str:
    return f"theta[{char}]{chr(39) * m}({k}t)"


def _L(char: str, k="1") -> str:
    """theta'/theta"""
    return f"{_th(char, k, 1)}/{_th(char, k)}"


def _R2(char: str, k="1") -> str:
    """theta''/theta"""
    return f"{_th(char, k, 2)}/{_th(char, k)}"


_R3 = f"{_th('1,1', '1', 3)}/{_th('1,1', '1', 1)}"


def _sq(text: str) -> str:
    return f"({text})^2"


def _cusp(eta_expr: str, squares, c: int) -> Tuple[str, str]:
    """Dlog(eta quotient) = -1/(2 pi i c) * sum of squared log-derivatives"""
    total = " + ".join(_sq(_L(ch)) for ch in squares)
    if len(squares) > 1:
        total = f"({total})"
    return f"Dlog({eta_expr})", f"-1/({2 * c}*i*pi)*{total}"


def _fk_lemma(e: Fraction, ep: Fraction, d: Fraction, dp: Fraction) -> Tuple[str, str]:
    """theta[e,e']theta[d,d'] as the sum of two products at 2 tau"""
    s, t = (e + d) / 2, (e - d) / 2
    lhs = f"{_th(f'{e},{ep}')}*{_th(f'{d},{dp}')}"
    rhs = (f"{_th(f'{s},{ep + dp}', '2')}*{_th(f'{t},{ep - dp}', '2')} + "
           f"{_th(f'{s + 1},{ep + dp}', '2')}*{_th(f'{t + 1},{ep - dp}', '2')}")
    return lhs, rhs


# native builders

def _formula_series(theorem: FormTheorem) -> Callable[[EvalContext], AnalyticSeries]:
    def build(ctx: EvalContext) -> AnalyticSeries:
        return seq_to_series(theorem.series_terms(ctx.order), lambda e: e, ctx.order, ctx.grid, ctx.ring_order)
    return build


def _divisor_series(fn, step: Fraction, constant: int = 0, weight: int = 1):
    """constant + weight * sum_{n>=1} fn(n) q^(step n)"""
    def build(ctx: EvalContext) -> AnalyticSeries:
        top = int(ctx.order / step) + 1
        values = [(0, constant)] + [(n, weight * fn(n)) for n in range(1, top + 1)]
        return seq_to_series(values, lambda n: step * n, ctx.order, ctx.grid, ctx.ring_order)
    return build


def _prop_l13(ctx: EvalContext) -> AnalyticSeries:
    """-(pi/sqrt3) a(q)"""
    return ctx.a().scale(-ctx.sqrt3 / 3, 1)


def _prop_l23(ctx: EvalContext) -> AnalyticSeries:
    return _divisor_series(epsilon, Fraction(1), constant=1, weight=2)(ctx).scale(-ctx.sqrt3, 1)


def _prop_l0(fn):
    def build(ctx: EvalContext) -> AnalyticSeries:
        return _divisor_series(fn, Fraction(1, 2))(ctx).scale(ctx.sqrt3 * -2, 1)
    return build


def _heat(eps, eps_prime, tau_mult=1):
    def sides(ctx: EvalContext):
        return heat_equation_sides(eps, eps_prime, tau_mult, ctx.order, ctx.grid, ctx.ring_order)
    return sides


def _triple(eps, eps_prime) -> Callable[[EvalContext], AnalyticSeries]:
    def build(ctx: EvalContext) -> AnalyticSeries:
        return theta_triple_product(eps, eps_prime, 1, ctx.order, ctx.grid, ctx.ring_order)
    return build


def _eta_sides(ctx: EvalContext):
    return (eta_series(1, ctx.order, ctx.grid, ctx.ring_order),
            eta_product(1, ctx.order, ctx.grid, ctx.ring_order))


def _fk_sides(k: int):
    def sides(ctx: EvalContext):
        return fk_cusp_expression(k, ctx), ctx.zero()
    return sides


def _two_theta_jets(ctx: EvalContext, z_order: int) -> Tuple[ThetaJet, ThetaJet]:
    """theta^2[1,2/3] theta^2[1,0](z) + theta^2[1,0] theta[1,2/3](z) theta[1,4/3](z)
    = theta^2[1,1/3] theta^2[1,1](z)"""
    third, two_thirds, four_thirds = Fraction(1, 3), Fraction(2, 3), Fraction(4, 3)
    j10 = ctx.jet(1, 0, 1, z_order)
    j23 = ctx.jet(1, two_thirds, 1, z_order)
    j43 = ctx.jet(1, four_thirds, 1, z_order)
    j11 = ctx.jet(1, 1, 1, z_order)
    t10, t13, t23 = ctx.theta(1, 0), ctx.theta(1, third), ctx.theta(1, two_thirds)
    lhs = jet_mul(j10, j10) * (t23 * t23) + jet_mul(j23, j43) * (t10 * t10)
    rhs = jet_mul(j11, j11) * (t13 * t13)
    return lhs, rhs


def _dlog_square_jets(eps, eps_prime):
    """(theta'/theta)^2 against theta''/theta - (log theta)'' along z"""
    def sides(ctx: EvalContext, z_order: int) -> Tuple[ThetaJet, ThetaJet]:
        jet = ctx.jet(eps, eps_prime, 1, z_order)
        inverse = jet_invert(jet)
        first = jet_derivative(jet)
        second = jet_derivative(first)
        log_deriv = jet_mul(first, inverse)
        return jet_mul(log_deriv, log_deriv), jet_mul(second, inverse) - jet_derivative(log_deriv)
    return sides


# registry

_HALF, _THIRD, _QUARTER = "1/2", "1/3", "1/4"

_TRIPLE_PRODUCT_CHARS = [
    ("00", 0, 0), ("10", 1, 0), ("01", 0, 1), ("11", 1, 1),
    ("1_half", 1, Fraction(1, 2)), ("0_half", 0, Fraction(1, 2)),
    ("1_third", 1, Fraction(1, 3)), ("1_2thirds", 1, Fraction(2, 3)),
    ("0_third", 0, Fraction(1, 3)), ("0_2thirds", 0, Fraction(2, 3)),
    ("1_quarter", 1, Fraction(1, 4)), ("1_3quarters", 1, Fraction(3, 4)),
    ("0_quarter", 0, Fraction(1, 4)), ("0_3quarters", 0, Fraction(3, 4)),
]

_HEAT_CHARS = [
    ("00", 0, 0), ("10", 1, 0), ("01", 0, 1), ("1_half", 1, Fraction(1, 2)), ("1_third", 1, Fraction(1, 3)),
]

# theta-product side of each representation theorem
_FORM_THETA: Dict[str, Side] = {
    "s4": "theta[0,0](2t)^4",
    "t4": "theta[1,0](2t)^4",
    "s2": lambda ctx: ctx.a() * ctx.a(),
    "s1133": "theta[0,1](2t)^2*theta[0,1](6t)^2",
    "s12": lambda ctx: ctx.a() * ctx.a(2),
    "s1122": "theta[0,0](2t)^2*theta[0,0](4t)^2",
    "m1244": "theta[0,0](2t)*theta[0,0](4t)*theta[1,0](4t)^2",
    "m1144": "theta[0,0](2t)^2*theta[1,0](4t)^2",
    "m1224": "theta[0,0](2t)*theta[0,0](4t)^2*theta[1,0](4t)",
    "s1112": "theta[0,0](2t)^3*theta[0,0](4t)",
    "s1222": "theta[0,0](2t)*theta[0,0](4t)^3",
    "m1114": "theta[0,0](2t)^3*theta[1,0](4t)",
    "m1444": "theta[0,0](2t)*theta[1,0](4t)^3",
}

# registry names of the representation theorems
_FORM_NAMES = {
    "s4": "four_squares", "t4": "four_triangular", "s2": "hex2", "s1133": "s1133", "s12": "s12_hex",
    "s1122": "s1122", "m1244": "m_1244", "m1144": "m_1144", "m1224": "m_1224", "s1112": "s1112",
    "s1222": "s1222", "m1114": "m_1114", "m1444": "m_1444",
}

_S1133_ETA = "(eta(1t)^2*eta(3t)^2/(eta(2t)*eta(6t)))^2"


def _build_registry() -> Tuple[IdentityCase, ...]:
    cases = []

    def series(name, section, anchor, lhs=None, rhs=None, **kw):
        cases.append(IdentityCase(name, SERIES, section, anchor, lhs, rhs, **kw))

    # §1 and §2 structure
    series("jacobi_derivative", "1", "Jacobi's derivative formula",
           _th("1,1", "1", 1), "-pi*theta[0,0](1t)*theta[1,0](1t)*theta[0,1](1t)")
    series("fk_lemma_squares", "2", "theta^2[0,0](0,tau) = theta^2[0,0](0,2tau) + theta^2[1,0](0,2tau)",
           *_fk_lemma(Fraction(0), Fraction(0), Fraction(0), Fraction(0)))
    series("fk_lemma_duplication", "2", "theta^2[1,0](0,tau) = 2theta[0,0](0,2tau)theta[1,0](0,2tau)",
           *_fk_lemma(Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
    series("fk_lemma_thirds", "2", "For all characteristics",
           *_fk_lemma(Fraction(1), Fraction(1, 3), Fraction(1), Fraction(2, 3)))
    for tag, e, ep in _HEAT_CHARS:
        series(f"heat_equation_{tag}", "2", "heat equation", sides=_heat(e, ep))
    for tag, e, ep in _TRIPLE_PRODUCT_CHARS:
        series(f"triple_product_{tag}", "2", "Jacobi's triple product identity",
               _th(f"{e},{ep}"), _triple(e, ep))
    series("eta_pentagonal", "2", "eta(tau) = q^(1/24) prod (1-q^n)", sides=_eta_sides, order_key="eta")

    # §3 derivative formulas
    series("deriv_1_half", "3", "recall the following derivative formulas",
           _th("1,1/2", "1", 1), "-pi*theta[0,0](2t)^2*theta[1,1/2](1t)")
    series("deriv_0_half", "3", "recall the following derivative formulas",
           _th("0,1/2", "1", 1), "-pi*theta[1,0](2t)^2*theta[0,1/2](1t)")
    series("deriv_1_third", "3", "recall the following derivative formulas", _L("1,1/3"),
           "1/6*theta[1,1]'(1t)*(theta[1,1/3](1t)^4 - 3*theta[1,2/3](1t)^4)"
           "/(theta[1,0](1t)*theta[1,1/3](1t)*theta[1,2/3](1t)^3)")
    series("deriv_2_thirds", "3", "recall the following derivative formulas", _L("1,2/3"),
           "1/3*theta[1,1]'(1t)*theta[1,1/3](1t)^4/(theta[1,0](1t)*theta[1,1/3](1t)*theta[1,2/3](1t)^3)")
    series("deriv_1_quarter", "3", "recall the following derivative formulas", _th("1,1/4", "1", 1),
           "-pi*theta[1,1/4](1t)*theta[0,0](4t)*(sqrt2*theta[0,0](2t) - theta[0,0](4t))")
    series("deriv_3_quarters", "3", "recall the following derivative formulas", _th("1,3/4", "1", 1),
           "-pi*theta[1,3/4](1t)*theta[0,0](4t)*(sqrt2*theta[0,0](2t) + theta[0,0](4t))")
    series("deriv_0_quarter", "3", "recall the following derivative formulas", _th("0,1/4", "1", 1),
           "-pi*theta[0,1/4](1t)*theta[1,0](4t)*(sqrt2*theta[0,0](2t) - theta[1,0](4t))")
    series("deriv_0_3quarters", "3", "recall the following derivative formulas", _th("0,3/4", "1", 1),
           "-pi*theta[0,3/4](1t)*theta[1,0](4t)*(sqrt2*theta[0,0](2t) + theta[1,0](4t))")

    # §4 level 4
    series("cusp_gamma4_1half", "4", "log η(4τ)/η(τ)", *_cusp("eta(4t)/eta(1t)", ["1,1/2"], 2))
    series("cusp_gamma4_0half", "4", "η^3(2τ)/η^2(τ) η(4τ)",
           *_cusp("eta(2t)^3/(eta(1t)^2*eta(4t))", ["0,1/2"], 2))

    # §5 level 6
    series("cusp_gamma6_1third", "5", "log η(3τ)/η(τ)", *_cusp("eta(3t)/eta(1t)", ["1,1/3"], 1))
    series("cusp_gamma6_2thirds", "5", "η^4(6τ)/η^3(τ) η(3τ)",
           *_cusp("eta(6t)^4/(eta(1t)^3*eta(3t))", ["1,2/3"], 1))
    series("cusp_gamma6_0third", "5", "η^4(3τ/2)/η^3(τ) η(3τ)",
           *_cusp("eta(3/2t)^4/(eta(1t)^3*eta(3t))", ["0,1/3"], 1))
    series("cusp_gamma6_0_2thirds", "5", "η^{11}(3τ)",
           *_cusp("eta(3t)^11/(eta(1t)^3*eta(3/2t)^4*eta(6t)^4)", ["0,2/3"], 1))
    series("prop_gamma6_l13", "5", "−π/√3 a(q)", _L("1,1/3"), _prop_l13)
    series("prop_gamma6_l23", "5", "d_{1,6}+d_{2,6}-d_{4,6}-d_{5,6}", _L("1,2/3"), _prop_l23)
    series("prop_gamma6_l0_13", "5", "δ*(n)", _L("0,1/3"), _prop_l0(delta_star))
    series("prop_gamma6_l0_23", "5", "ε*(n)", _L("0,2/3"), _prop_l0(epsilon_star))
    series("prop_gamma6_halving_1", "5", "for j=1,2",
           f"{_L('1,1/3')} - {_L('1,2/3')}", f"-2*{_L('1,1/3', '2')}")
    series("prop_gamma6_halving_0_13", "5", "for j=1,2",
           _L("0,1/3"), f"{_L('1,1/3', '1/2')} - {_L('1,1/3')}")
    series("prop_gamma6_halving_0_23", "5", "for j=1,2",
           _L("0,2/3"), f"{_L('1,2/3', '1/2')} - {_L('1,2/3')}")
    series("rel_thm_1third", "5", "Res(φ(z), 0)=0",
           f"3*{_R2('1,1/3')} - {_R3} + 6*{_sq(_L('1,1/3'))}", "0")
    series("rel_1133_first", "5", "Res(ψ(z), 0)=0",
           f"{_R2('1,1/3')} + 2*{_R2('1,2/3')} - {_R3} - 4*{_L('1,1/3')}*{_L('1,2/3')}"
           f" + 2*{_sq(_L('1,2/3'))}", "0")
    series("rel_1133_second", "5", "The heat equation and the derivative formulas imply",
           "4*i*pi*Dlog(theta[1,1/3](1t)*theta[1,2/3](1t)^2/theta[1,1]'(1t))",
           "-2/3*theta[1,1]'(1t)^2*theta[1,1/3](1t)^2/(theta[1,0](1t)^2*theta[1,2/3](1t)^2)")
    series("s1133_theta_quotient", "5", "Jacobi's triple product identity yields",
           "theta[1,1]'(1t)^2*theta[1,1/3](1t)^2/(theta[1,0](1t)^2*theta[1,2/3](1t)^2)",
           f"3*pi^2*{_S1133_ETA}")
    series("rel_two_theta_z2", "5", "Comparing the coefficients of the term z^2",
           f"{_R2('1,0')} - {_R2('1,2/3')}"
           " - theta[1,1]'(1t)^2*theta[1,1/3](1t)^2/(theta[1,0](1t)^2*theta[1,2/3](1t)^2)"
           f" + {_sq(_L('1,2/3'))}", "0")
    series("rel_gamma6_2thirds_log", "5", "The heat equation and",
           "2*i*pi*Dlog(theta[1,0](1t)^2*theta[1,1/3](1t)^3*theta[1,2/3](1t)^4/theta[1,1]'(1t)^3)",
           f"-1*{_sq(_L('1,2/3'))}")
    series("product_gamma6_2thirds", "5", "-3√3/(2π^3)",
           "theta[1,0](1t)^2*theta[1,1/3](1t)^3*theta[1,2/3](1t)^4/theta[1,1]'(1t)^3",
           "-3*sqrt3/2*pi^-3*(eta(6t)^4/(eta(1t)^3*eta(3t)))")
    series("product_third_tau_2tau", "5", "η(τ)η(3τ)/η(2τ)η(6τ)",
           f"{_L('1,1/3')}*{_L('1,1/3', '2')}", "i*pi*Dlog(eta(1t)*eta(3t)/(eta(2t)*eta(6t)))")
    series("conv_delta_eps_series", "5", "δ*(n)ε*(n)",
           f"{_L('0,1/3')}*{_L('0,2/3')}", "-2*i*pi*Dlog(eta(3t)*eta(2t)^3/(eta(1t)^3*eta(6t)))")
    series("s1133_series", "5", "4(-1)^{n-1}(σ(n)-4σ(n/2)-3σ(n/3)+12σ(n/6))",
           _S1133_ETA, _formula_series(FORM_THEOREMS["s1133"]))

    # §6 level 8
    series("cusp_gamma8_1quarters", "6", "η^3(8τ)/η^2(τ) η(4τ)",
           *_cusp("eta(8t)^3/(eta(1t)^2*eta(4t))", ["1,1/4", "1,3/4"], 2))
    series("cusp_gamma8_0quarters", "6", "η^8(4τ)",
           *_cusp("eta(4t)^8/(eta(1t)^2*eta(2t)^3*eta(8t)^3)", ["0,1/4", "0,3/4"], 2))
    for tag, char, sign in [("1_quarter", "1,1/4", "+"), ("1_3quarters", "1,3/4", "-"),
                            ("0_quarter", "0,1/4", "+"), ("0_3quarters", "0,3/4", "-")]:
        series(f"rel_second_deriv_{tag}", "6", "follows from direct calculation",
               f"{_R2('1,1/2')} + 2*{_R2(char)} - {_R3} {sign} 4*{_L('1,1/2')}*{_L(char)}"
               f" + 2*{_sq(_L(char))}", "0")
    series("second_deriv_diff_1quarters", "6", "Subtracting both sides",
           f"{_R2('1,1/4')} - {_R2('1,3/4')}", "-4*sqrt2*pi^2*theta[0,0](2t)*theta[0,0](4t)*theta[1,0](4t)^2")
    series("second_deriv_diff_0quarters", "6", "Subtracting both sides",
           f"{_R2('0,1/4')} - {_R2('0,3/4')}", "-4*sqrt2*pi^2*theta[0,0](2t)*theta[0,0](4t)^2*theta[1,0](4t)")
    series("log_deriv_1122", "6", "η^2(τ) η(4τ)/η(2τ) η^2(8τ)",
           "4*i*pi*Dlog(eta(1t)^2*eta(4t)/(eta(2t)*eta(8t)^2))", "4*pi^2*theta[0,0](2t)^2*theta[0,0](4t)^2")
    series("log_deriv_1144", "6", "η^2(τ) η(2τ) η^2(8τ)/η^5(4τ)",
           "4*i*pi*Dlog(eta(1t)^2*eta(2t)*eta(8t)^2/eta(4t)^5)", "4*pi^2*theta[0,0](2t)^2*theta[1,0](4t)^2")

    # representation theorems: counts and theta series
    for key, theorem in FORM_THEOREMS.items():
        name = _FORM_NAMES[key]
        cases.append(IdentityCase(name, SEQUENCE, theorem.section, theorem.anchor, sequence=theorem))
        series_name = "s1133_theta" if key == "s1133" else f"{name}_series"
        series(series_name, theorem.section, theorem.anchor, _FORM_THETA[key], _formula_series(theorem))

    # convolution sums
    for name, theorem in CONVOLUTION_THEOREMS.items():
        cases.append(IdentityCase(name, SEQUENCE, theorem.section, theorem.anchor, sequence=theorem))

    # jets
    cases.append(IdentityCase("jet_two_theta_sum", JET, "5", "Substituting z=1/2, 1/6, and 0",
                              sides=_two_theta_jets))
    for tag, e, ep in [("1quarter", 1, Fraction(1, 4)), ("0quarter", 0, Fraction(1, 4))]:
        cases.append(IdentityCase(f"jet_dlog_square_{tag}", JET, "6", "can be proved by direct calculation",
                                  sides=_dlog_square_jets(e, ep)))

    # odd prime cusp expression
    for k in get_config("engine.fk_vanishing", FK_VANISHING):
        anchor = "a cusp form for k = 11" if k == 11 else "identically zero provided k ≤ 13, k ≠ 11"
        series(f"farkas_kra_k{k}", "1", anchor, sides=_fk_sides(k),
               order_key="fk", grid=FK_GRID, ring_order=fk_ring_order(k))

    names = [c.name for c in cases]
    if len(set(names)) != len(names):
        raise ValueError("duplicate identity names in the registry")
    return tuple(cases)


_REGISTRY: Optional[Tuple[IdentityCase, ...]] = None


def registry() -> Tuple[IdentityCase, ...]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build_registry()
        logger.debug(f"registry holds {len(_REGISTRY)} identities")
    return _REGISTRY


def get_case(name: str) -> IdentityCase:
    for case in registry():
        if case.name == name:
            return case
    raise UnknownIdentity(f"unknown identity {name!r}; use `verify --list` to see the registry")
