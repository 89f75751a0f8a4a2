"""
Test Expression Language

Parsing, error offsets, rendering and evaluation of theta/eta expressions.
"""

import sys
import os
import random
from fractions import Fraction

# Add src to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from src.algebra.cyclotomic import CycloNum, imag_unit, sqrt3
from src.dsl.evaluator import EvalContext, evaluate, evaluate_in
from src.dsl.parser import (
    Add, Const, Div, Dlog, Eta, IntPow, Mul, Neg, PiPow, RationalLit, Rescale, Sub, Theta, parse, render,
)
from src.identities.registry import registry
from src.series.qseries import eq_upto
from src.theta.generators import eta_quotient_of, theta
from src.utils.errors import EvalError, ExprSyntaxError, PiPowerMismatch

ORDER = 10


def test_parse_theta_atom():
    node = parse("theta[1,1/3]''(2t)")
    assert node == Theta(Fraction(1), Fraction(1, 3), 2, Fraction(2))
    assert node.span == (0, 18)
    assert parse("theta[0,-1/2](1/2t)") == Theta(Fraction(0), Fraction(-1, 2), 0, Fraction(1, 2))


def test_parse_precedence():
    node = parse("1 + 2*pi^2")
    assert node == Add(RationalLit(Fraction(1)), Mul(RationalLit(Fraction(2)), IntPow(PiPow(1), 2)))
    quotient = parse("eta(2t)^5/eta(1t)^-2")
    assert quotient == Div(IntPow(Eta(Fraction(2)), 5), IntPow(Eta(Fraction(1)), -2))
    # unary minus binds to the atom before '^'
    assert parse("-i^2") == IntPow(Neg(Const("i")), 2)
    assert parse("Dlog(eta(4t))") == Dlog(Eta(Fraction(4)))


def test_unicode_prime():
    assert parse("theta[1,1]′(1t)") == parse("theta[1,1]'(1t)")


def test_error_offset_at_end_of_input():
    with pytest.raises(ExprSyntaxError) as info:
        parse("theta[1,1](1t")
    assert info.value.offset == 14
    assert ")" in info.value.expected


@pytest.mark.parametrize("text,offset", [
    ("foo", 1),
    ("1 +", 4),
    ("eta(0t)", 5),
    ("theta[1,1/0](1t)", 11),
    ("theta[1,1](1t) theta[0,0](1t)", 16),
    ("2^x", 3),
    ("(1 + 2", 7),
])
def test_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_render_round_trip_on_registry_expressions():
    seen = 0
    for case in registry():
        for text in (case.lhs_expr, case.rhs_expr):
            if text is None:
                continue
            node = parse(text)
            assert parse(render(node)) == node, text
            seen += 1
    assert seen > 50


def test_render_rescale_is_rejected():
    with pytest.raises(ValueError):
        render(Rescale(Eta(Fraction(1)), Fraction(2)))


def test_constant_folding():
    eight = evaluate("2^3", ORDER)
    assert eight.pi_power == 0
    assert eight.coeff_at(0) == 8
    assert eight.body.exponents() == [0]
    folded = evaluate("sqrt3*sqrt3/(2*pi)", ORDER)
    assert folded.pi_power == -1
    assert folded.coeff_at(0) == Fraction(3, 2)
    assert evaluate("i*i + 1", ORDER).is_zero()


def test_dlog_constant_term():
    d = evaluate("Dlog(theta[1,0](1t))", ORDER)
    assert d.pi_power == 1
    assert d.coeff_at(0) == imag_unit() * Fraction(2, 8)


def test_theta_power():
    s4 = evaluate("theta[0,0](2t)^4", ORDER)
    assert [s4.coeff_at(n) for n in range(5)] == [1, 8, 24, 32, 24]


def test_eta_monomial_goes_to_eta_quotient():
    direct = evaluate("eta(2t)^5/(eta(1t)^2*eta(4t)^2)", ORDER)
    assert eq_upto(direct, eta_quotient_of((2, 5), (1, -2), (4, -2), order=ORDER), ORDER) is None
    assert eq_upto(direct, theta(0, 0, 2, order=ORDER), ORDER) is None


def test_scaled_theta():
    node = parse("sqrt3*theta[0,0](2t)")
    value = evaluate(node, ORDER)
    assert value.coeff_at(1) == sqrt3() * 2


def test_dtau_pi_power():
    d = evaluate("Dtau(theta[0,0](2t))", ORDER)
    assert d.pi_power == 1
    assert d.coeff_at(1) == imag_unit() * 4


def test_rescale_node():
    ctx = EvalContext(ORDER)
    doubled = evaluate_in(Rescale(Theta(Fraction(0), Fraction(0), 0, Fraction(1)), Fraction(2)), ctx)
    assert doubled.valid_to == ORDER
    assert eq_upto(doubled, theta(0, 0, 2, order=ORDER), ORDER) is None


def test_context_memoises_atoms():
    ctx = EvalContext(ORDER)
    assert ctx.theta(1, 0) is ctx.theta(1, 0)
    assert ctx.eta((1, 1)) is ctx.eta((1, 1))


def test_pi_power_mismatch_is_an_eval_error():
    with pytest.raises(EvalError) as info:
        evaluate("theta[0,0](1t) + Dtau(theta[0,0](1t))", ORDER)
    assert info.value.span == (0, 37)


def test_inverting_zero_is_an_eval_error():
    with pytest.raises(EvalError) as info:
        evaluate("theta[1,1](1t)^-1", ORDER)
    assert info.value.span is not None
    assert info.value.span[0] == 0


def test_division_by_zero_constant():
    with pytest.raises(EvalError):
        evaluate("theta[0,0](1t)/(1 - 1)", ORDER)


LEAVES = [
    Theta(Fraction(0), Fraction(0), 0, Fraction(1)),
    Theta(Fraction(1), Fraction(0), 0, Fraction(2)),
    Theta(Fraction(0), Fraction(1), 0, Fraction(1)),
    Theta(Fraction(1), Fraction(1, 3), 1, Fraction(1)),
    Eta(Fraction(1)),
    Eta(Fraction(2)),
    RationalLit(Fraction(3, 2)),
    RationalLit(Fraction(-2)),
]


def random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(LEAVES)
    kind = rng.choice([Add, Sub, Mul, Mul, Neg, IntPow])
    if kind is Neg:
        return Neg(random_tree(rng, depth - 1))
    if kind is IntPow:
        return IntPow(random_tree(rng, depth - 1), rng.randint(1, 3))
    return kind(random_tree(rng, depth - 1), random_tree(rng, depth - 1))


def combine(node, ctx):
    """Evaluate children and apply the series operation for the node"""
    if isinstance(node, (Theta, Eta)):
        return evaluate_in(node, ctx)
    if isinstance(node, RationalLit):
        return ctx.constant(CycloNum.embed(node.value, ctx.ring_order), 0)
    if isinstance(node, Neg):
        return -combine(node.operand, ctx)
    if isinstance(node, IntPow):
        return combine(node.base, ctx).pow(node.exponent)
    left, right = combine(node.left, ctx), combine(node.right, ctx)
    if isinstance(node, Add):
        return left + right
    if isinstance(node, Sub):
        return left - right
    return left * right


def test_evaluation_is_a_homomorphism():
    rng = random.Random(31)
    checked = 0
    while checked < 30:
        node = random_tree(rng, 3)
        ctx = EvalContext(6)
        try:
            expected = combine(node, EvalContext(6))
        except PiPowerMismatch:
            with pytest.raises(EvalError):
                evaluate_in(node, ctx)
            continue
        value = evaluate_in(node, ctx)
        bound = min(value.valid_to, expected.valid_to)
        assert bound > 0, node
        assert eq_upto(value, expected, bound) is None, node
        checked += 1


if __name__ == "__main__":
    print("=" * 60)
    print("Expression Language Test")
    print("=" * 60)
    test_parse_theta_atom()
    test_error_offset_at_end_of_input()
    test_render_round_trip_on_registry_expressions()
    test_eta_monomial_goes_to_eta_quotient()
    print("✓ DSL tests passed")
