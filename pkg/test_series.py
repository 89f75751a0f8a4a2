"""
Test Q-Series Arithmetic

Validity bookkeeping, inversion, rescaling, derivatives and exact comparison.
"""

import sys
import os
import random
from fractions import Fraction

# Add src to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from src.algebra.cyclotomic import CycloNum, imag_unit, make_root
from src.series.qseries import (
    AnalyticSeries, QSeries, constant_series, eq_upto, monomial, render_coefficient, zero_series,
)
from src.utils.errors import (
    BeyondValidity, GridMismatch, OffGrid, PiPowerMismatch, RingMismatch, ZeroLeading,
)


def series(pairs, valid_to, grid=48):
    return QSeries.from_coefficients([(Fraction(e), c) for e, c in pairs], valid_to, grid)


def test_geometric_inverse():
    one_minus_q = series([(0, 1), (1, -1)], 10)
    inv = one_minus_q.invert()
    assert inv.valid_to == 10
    for n in range(10):
        assert inv.coeff_at(n) == 1
    assert inv.coeff_at(Fraction(1, 2)) == 0
    print("✓ 1/(1-q) = sum q^n")


def test_inverse_with_leading_power():
    f = series([(1, 1), (2, -1)], 5)  # q(1-q)
    inv = f.invert()
    assert inv.valid_to == 3
    assert inv.order == -1
    for e in range(-1, 3):
        assert inv.coeff_at(e) == 1


def test_product_validity():
    f = series([(0, 1), (1, 1)], 5)
    g = series([(Fraction(1, 2), 1)], 4)
    h = f * g
    # min(5 + 1/2, 4 + 0)
    assert h.valid_to == 4
    assert h.coeff_at(Fraction(1, 2)) == 1
    assert h.coeff_at(Fraction(3, 2)) == 1


def test_terms_beyond_validity_are_dropped():
    f = series([(0, 1), (3, 7)], 2)
    assert f.exponents() == [0]
    with pytest.raises(BeyondValidity):
        f.coeff_at(2)


def test_shift_and_rescale():
    f = series([(0, 1), (Fraction(1, 2), 3)], 4)
    shifted = f.shift(Fraction(1, 4))
    assert shifted.valid_to == Fraction(17, 4)
    assert shifted.coeff_at(Fraction(3, 4)) == 3
    doubled = f.rescale(2)
    assert doubled.valid_to == 8
    assert doubled.coeff_at(1) == 3
    halved = f.rescale(Fraction(1, 2))
    assert halved.valid_to == 2
    assert halved.coeff_at(Fraction(1, 4)) == 3


def test_off_grid():
    with pytest.raises(OffGrid):
        series([(Fraction(1, 5), 1)], 2)
    f = series([(Fraction(1, 48), 1)], 2)
    with pytest.raises(OffGrid):
        f.rescale(Fraction(1, 2))


def test_mismatched_operands():
    f = series([(0, 1)], 3, grid=48)
    g = series([(0, 1)], 3, grid=24)
    with pytest.raises(GridMismatch):
        f + g
    h = QSeries.constant(CycloNum.one(24), 3, 48, 24)
    with pytest.raises(RingMismatch):
        f * h


def test_zero_has_no_leading_term():
    with pytest.raises(ZeroLeading):
        QSeries.zero(5).invert()


def test_power():
    f = series([(0, 1), (1, 1)], 6)
    cube = f.power(3)
    assert [cube.coeff_at(e) for e in range(5)] == [1, 3, 3, 1, 0]
    assert f.power(-1).coeff_at(3) == -1
    assert f.power(0).coeff_at(0) == 1


def test_tau_derivative_carries_two_pi_i():
    f = AnalyticSeries.of(series([(0, 5), (2, 1)], 6))
    d = f.tau_deriv()
    assert d.pi_power == 1
    assert d.coeff_at(0) == 0
    assert d.coeff_at(2) == imag_unit() * 4


def test_log_derivative_constant_term():
    # d/dtau log(q^(1/8) (1 + q)) has constant term 2 pi i / 8
    f = AnalyticSeries.of(series([(Fraction(1, 8), 1), (Fraction(9, 8), 1)], 6))
    d = f.tau_dlog()
    assert d.pi_power == 1
    assert d.coeff_at(0) == imag_unit() * Fraction(1, 4)
    assert d.coeff_at(1) == imag_unit() * 2


def test_pi_power_bookkeeping():
    a = constant_series(1, 5, pi_power=1)
    b = constant_series(2, 5, pi_power=2)
    with pytest.raises(PiPowerMismatch):
        a + b
    # zero adopts the other operand's pi power
    assert (a + zero_series(5)).pi_power == 1
    assert (a * b).pi_power == 3
    assert a.invert().pi_power == -1


def test_eq_upto_reports_first_divergence():
    f = AnalyticSeries.of(series([(0, 1), (1, 2), (2, 3)], 6))
    g = AnalyticSeries.of(series([(0, 1), (1, 2), (2, 4)], 6))
    assert eq_upto(f, g, 2) is None
    d = eq_upto(f, g, 3)
    assert d.exponent == 2
    assert d.lhs == 3 and d.rhs == 4
    with pytest.raises(BeyondValidity):
        eq_upto(f, g, 7)


def test_monomial_bounds():
    m = monomial(0, 3, Fraction(1, 2), 2)
    assert m.coeff_at(Fraction(1, 2)) == 3
    with pytest.raises(BeyondValidity):
        monomial(0, 1, 3, 2)


def test_render_coefficient():
    assert render_coefficient(CycloNum.embed(3)) == "3"
    assert render_coefficient(CycloNum.embed(Fraction(1, 2)), 1) == "(1/2)*pi^1"
    assert render_coefficient(CycloNum.embed(-2), 2) == "-2*pi^2"
    assert render_coefficient(CycloNum.zero(), 3) == "0"


def random_series(rng, lead, valid_to, step=Fraction(1, 4)):
    """Nonzero leading coefficient at q^lead, sparse random terms after it"""
    pairs = [(Fraction(lead), make_root(48, rng.randint(1, 23)) + rng.choice([-3, -2, -1, 1, 2, 3]))]
    e = Fraction(lead) + step
    while e < valid_to:
        if rng.random() < 0.6:
            c = CycloNum.embed(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            if rng.random() < 0.3:
                c = c + make_root(48, rng.randrange(48))
            pairs.append((e, c))
        e += step
    return QSeries.from_coefficients(pairs, valid_to)


def agree(a, b, bound):
    assert bound <= min(a.valid_to, b.valid_to)
    return a.restricted(bound) == b.restricted(bound)


LEADS = [Fraction(0), Fraction(1, 4), Fraction(1, 2)]


def test_multiplication_commutes_and_associates():
    rng = random.Random(7)
    for _ in range(10):
        f, g, h = (random_series(rng, rng.choice(LEADS), 4) for _ in range(3))
        fg, gf = f * g, g * f
        assert fg.valid_to == gf.valid_to
        assert agree(fg, gf, fg.valid_to)
        left, right = (f * g) * h, f * (g * h)
        assert left.valid_to == right.valid_to
        assert agree(left, right, left.valid_to)


def test_double_inverse_is_identity():
    rng = random.Random(11)
    for _ in range(10):
        f = random_series(rng, rng.choice(LEADS), 4)
        back = f.invert().invert()
        assert back.valid_to == f.valid_to
        assert agree(back, f, f.valid_to)
        unit = f * f.invert()
        assert agree(unit, QSeries.constant(1, unit.valid_to), unit.valid_to)


def test_log_derivative_is_additive():
    rng = random.Random(13)
    for _ in range(8):
        f = AnalyticSeries(0, random_series(rng, rng.choice(LEADS), 4))
        g = AnalyticSeries(rng.randint(0, 2), random_series(rng, rng.choice(LEADS), 4))
        whole = (f * g).tau_dlog()
        parts = f.tau_dlog() + g.tau_dlog()
        bound = min(whole.valid_to, parts.valid_to)
        assert bound > 0
        assert eq_upto(whole, parts, bound) is None


def test_validity_bound_is_sound():
    # results computed from truncated inputs agree with the untruncated ones below their bound
    rng = random.Random(17)
    for _ in range(6):
        full_f = random_series(rng, rng.choice(LEADS), 8)
        full_g = random_series(rng, rng.choice(LEADS), 8)
        f, g = full_f.truncate(3), full_g.truncate(3)
        product = f * g
        assert product.valid_to == 3 + min(f.order, g.order)
        assert agree(product, full_f * full_g, product.valid_to)
        inverse = f.invert()
        assert inverse.valid_to == 3 - 2 * f.order
        assert agree(inverse, full_f.invert(), inverse.valid_to)
        for exponent in (2, 3, -2):
            power = f.power(exponent)
            assert 0 < power.valid_to <= full_f.power(exponent).valid_to
            assert agree(power, full_f.power(exponent), power.valid_to)


if __name__ == "__main__":
    test_geometric_inverse()
    test_inverse_with_leading_power()
    test_tau_derivative_carries_two_pi_i()
    test_log_derivative_constant_term()
    print("✓ Series tests passed")
