"""
Test Theta and Eta Generators

Cross-checks the two theta generators, the two eta generators, a few classical
expansions and the z-jets.
"""

import sys
import os
from fractions import Fraction

# Add src to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from src.algebra.cyclotomic import imag_unit
from src.series.qseries import eq_upto
from src.theta.generators import (
    a_series, eta_product, eta_quotient_of, eta_series, theta, theta_triple_product,
)
from src.theta.jets import (
    heat_equation_sides, jet_derivative, jet_invert, jet_mul, jet_scalar, jet_truncate, theta_jet,
)
from src.utils.errors import UnsupportedCharacteristic, UnsupportedOrder

ORDER = 12


def coefficients(series, upto):
    return [series.coeff_at(n) for n in range(upto)]


def test_theta_constant_of_two_tau():
    t = theta(0, 0, 2, order=ORDER)
    assert coefficients(t, 10) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    assert t.pi_power == 0


def test_theta_half_characteristic():
    t = theta(1, 0, 1, order=ORDER)
    # 2 q^(1/8) (1 + q + q^3 + q^6 + ...)
    assert t.coeff_at(Fraction(1, 8)) == 2
    assert t.coeff_at(Fraction(9, 8)) == 2
    assert t.coeff_at(Fraction(17, 8)) == 0
    assert t.coeff_at(Fraction(25, 8)) == 2


def test_theta_signs():
    t = theta(0, 1, 2, order=ORDER)
    assert coefficients(t, 5) == [1, -2, 0, 0, 2]


@pytest.mark.parametrize("eps,eps_prime,k", [
    (0, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 2), (1, 0, 2), (0, 1, 2),
    (1, Fraction(1, 3), 1), (1, Fraction(1, 2), 1), (0, Fraction(1, 3), 1),
])
def test_triple_product_agrees_with_sum(eps, eps_prime, k):
    direct = theta(eps, eps_prime, k, order=ORDER)
    product = theta_triple_product(eps, eps_prime, k, ORDER)
    assert eq_upto(direct, product, ORDER) is None


@pytest.mark.parametrize("k", [1, 2, 3, Fraction(1, 2)])
def test_pentagonal_eta_agrees_with_product(k):
    assert eq_upto(eta_series(k, 40), eta_product(k, 40), 40) is None


def test_eta_quotient_theta_identity():
    # eta(2t)^5 / (eta(t)^2 eta(4t)^2) = sum q^(n^2)
    quotient = eta_quotient_of((2, 5), (1, -2), (4, -2), order=ORDER)
    assert eq_upto(quotient, theta(0, 0, 2, order=ORDER), ORDER) is None


def test_eta_quotient_single_factor():
    assert eq_upto(eta_quotient_of((1, 1), order=ORDER), eta_series(1, ORDER), ORDER) is None


def test_eta_negative_leading_exponent():
    inv = eta_quotient_of((1, -1), order=ORDER)
    assert inv.order == Fraction(-1, 24)
    # 1/eta = q^(-1/24) sum p(n) q^n
    partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n, p in enumerate(partitions):
        assert inv.coeff_at(n - Fraction(1, 24)) == p


def test_a_series():
    a = a_series(ORDER)
    assert coefficients(a, 8) == [1, 6, 0, 6, 6, 0, 0, 12]


@pytest.mark.parametrize("eps,eps_prime,k", [
    (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, Fraction(1, 3), 1), (1, Fraction(1, 2), 2),
])
def test_heat_equation(eps, eps_prime, k):
    second, drift = heat_equation_sides(eps, eps_prime, k, ORDER)
    assert second.pi_power == 2 and drift.pi_power == 2
    assert eq_upto(second, drift, ORDER) is None


def test_jet_entries_match_derivatives():
    jet = theta_jet(1, 1, 1, 3, ORDER)
    assert jet[0].is_zero()
    assert eq_upto(jet[1], theta(1, 1, 1, 1, order=ORDER), ORDER) is None
    third = theta(1, 1, 1, 3, order=ORDER)
    # entry 3 holds theta'''/3!
    assert eq_upto(jet[3].scalar_mul(6), third, ORDER) is None


def test_jet_algebra():
    jet = theta_jet(0, 0, 1, 4, ORDER)
    unit = jet_mul(jet, jet_invert(jet))
    assert unit[0].coeff_at(0) == 1
    for m in range(1, 5):
        assert unit[m].is_zero()
    d = jet_derivative(jet)
    assert d.max_order == 3
    assert eq_upto(d[1], jet[2].scalar_mul(2), ORDER) is None
    assert jet_truncate(jet, 2).max_order == 2


def test_scalar_jets_scale_entrywise():
    s = theta(0, 0, 2, order=ORDER)
    jet = theta_jet(1, Fraction(1, 3), 1, 3, ORDER)
    scaled = jet_mul(jet_scalar(s, 3), jet)
    for m in range(4):
        assert eq_upto(scaled[m], s * jet[m], ORDER) is None
    assert all(entry.is_zero() for entry in jet_derivative(jet_scalar(s, 2)).coeffs)


def test_first_derivative_of_odd_theta():
    # theta'[1,1](0, tau) = -2 pi q^(1/8) (1 - 3q + ...)
    d = theta(1, 1, 1, 1, order=ORDER)
    assert d.pi_power == 1
    assert d.coeff_at(Fraction(1, 8)) == -2
    assert d.coeff_at(Fraction(9, 8)) == 6


def test_unsupported_inputs():
    with pytest.raises(UnsupportedCharacteristic):
        theta(Fraction(1, 3), 0, 1, order=ORDER)
    with pytest.raises(UnsupportedOrder):
        theta(1, 1, 1, 4, order=ORDER)
    with pytest.raises(UnsupportedOrder):
        theta_jet(0, 0, 1, 5, ORDER)
    with pytest.raises(UnsupportedCharacteristic):
        # phase exp(2 pi i / 10) lives outside Q(zeta_48)
        theta(1, Fraction(1, 5), 1, order=ORDER)


def test_tau_derivative_prefactor():
    d = theta(0, 0, 2, order=ORDER).tau_deriv()
    assert d.pi_power == 1
    assert d.coeff_at(1) == imag_unit() * 4


if __name__ == "__main__":
    print("=" * 60)
    print("Theta Generator Test")
    print("=" * 60)
    test_theta_constant_of_two_tau()
    test_eta_quotient_theta_identity()
    test_heat_equation(1, Fraction(1, 3), 1)
    test_jet_algebra()
    print("✓ Theta generator tests passed")
