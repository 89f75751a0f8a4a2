"""
Test Arithmetic Layer

Divisor functions, brute-force representation counts against the closed
formulas, and the convolution sums.
"""

import sys
import os
import random
from fractions import Fraction

# Add src to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from src.arith.convolution import (
    CONVOLUTION_THEOREMS, conv_sum, farkas_sum, get_convolution, seq_to_series, weighted_conv_sum,
)
from src.arith.divisors import (
    DivisorFn, char8, d_cong, d_cong_star, delta, delta_star, divisor_eval, epsilon, epsilon_star, sigma,
    sigma_star,
)
from src.arith.forms import FORM_THEOREMS, QFormSpec, get_form, rep_count, rep_counts
from src.theta.generators import a_series
from src.utils.errors import UnknownForm, UnknownIdentity


def test_sigma_extends_by_zero():
    assert sigma(12) == 28
    assert sigma(Fraction(12, 4)) == 4
    assert sigma(Fraction(3, 2)) == 0
    assert sigma(0) == 0
    assert sigma(-6) == 0


def test_congruence_divisor_functions():
    assert d_cong(1, 3)(7) == 2
    assert delta(7) == 2
    assert delta(2) == 0  # 1 - 1
    assert epsilon(5) == 0
    assert epsilon(4) == 1  # 1 + 2 - 4
    assert sigma_star(4) == 4
    assert sigma_star(6) == 8
    assert delta_star(2) == -1  # only d = 2 has odd cofactor


def test_char8():
    assert [char8(m) for m in range(1, 9)] == [1, 0, -1, 0, -1, 0, 1, 0]
    with pytest.raises(ValueError):
        char8(0)


def test_divisor_fn_validation():
    with pytest.raises(ValueError):
        DivisorFn("tau")
    with pytest.raises(ValueError):
        DivisorFn("d_cong", 1)
    assert d_cong(1, 3) == DivisorFn("d_cong", 1, 3)


def test_spot_counts():
    s4 = get_form("s4").form
    assert rep_count(s4, 0) == 1
    assert rep_count(s4, 1) == 8
    assert rep_count(s4, 2) == 24
    t4 = get_form("t4")
    counts = rep_counts(t4.form, 2)
    assert counts[0] == 16
    assert counts[1] == 64
    assert t4.formula(0) == 16 and t4.formula(1) == 64
    assert rep_count(get_form("s2").form, 1) == 12


@pytest.mark.parametrize("name,value", [("m1144", 4), ("m1224", 2), ("m1444", 8), ("m1244", 4), ("m1114", 2)])
def test_boundary_counts(name, value):
    theorem = get_form(name)
    n, count, formula, match = theorem.rows(0)[0]
    assert n == 0
    assert count == value
    assert match


@pytest.mark.parametrize("name", sorted(FORM_THEOREMS))
def test_form_theorem_rows(name):
    theorem = FORM_THEOREMS[name]
    rows = theorem.rows(40)
    assert rows
    bad = [row for row in rows if not row[3]]
    assert not bad, f"{name}: {bad[:3]}"


def test_series_terms_carry_exponents():
    s1133 = get_form("s1133")
    terms = dict(s1133.series_terms(Fraction(4)))
    # constant term is the count at 0, odd exponents flip sign
    assert terms[Fraction(0)] == 1
    assert terms[Fraction(1)] == -4
    assert terms[Fraction(2)] == 4
    t4 = get_form("t4")
    exponents = [e for e, _ in t4.series_terms(Fraction(6))]
    assert exponents == [1, 3, 5]


def test_form_rendering():
    assert get_form("s4").form.render() == "x^2 + y^2 + z^2 + w^2"
    assert QFormSpec("mixed", [(1, "square"), (4, "triangular")]).render() == "x^2 + 4t_y"
    with pytest.raises(ValueError):
        QFormSpec("bad", [(1, "cube")])


def test_unknown_form():
    with pytest.raises(UnknownForm):
        get_form("s5")


def test_convolution_definitions():
    assert conv_sum(sigma, sigma, 2) == 1
    assert conv_sum(sigma, sigma, 3) == 2 * sigma(1) * sigma(2)
    # 2k + l = 5: (1, 3), (2, 1)
    assert weighted_conv_sum(sigma, sigma, 5) == sigma(1) * sigma(3) + sigma(2) * sigma(1)
    assert farkas_sum(0) == 3


@pytest.mark.parametrize("name", sorted(CONVOLUTION_THEOREMS))
def test_convolution_theorems(name):
    theorem = CONVOLUTION_THEOREMS[name]
    rows = theorem.rows(60)
    bad = [row for row in rows if not row[3]]
    assert not bad, f"{name}: {bad[:3]}"


def test_unknown_convolution():
    with pytest.raises(UnknownIdentity):
        get_convolution("conv_sigma_sigma")


def test_seq_to_series():
    s = seq_to_series([(0, 1), (1, 2), (2, 3)], lambda n: Fraction(n), 2)
    assert s.coeff_at(0) == 1
    assert s.coeff_at(1) == 2
    assert s.valid_to == 2
    half = seq_to_series([(0, 5), (1, 7)], lambda n: Fraction(2 * n + 1, 2), 3)
    assert half.coeff_at(Fraction(1, 2)) == 5
    assert half.coeff_at(Fraction(3, 2)) == 7
    with pytest.raises(ValueError):
        seq_to_series([(0, 1), (1, 1)], lambda n: Fraction(0), 2)


def test_delta_eps_rows_at_even_n():
    rows = {row[0]: row for row in get_convolution("conv_delta_eps").rows(36)}
    for n, value in [(6, 3), (12, 3), (18, 9), (24, 3), (30, 18), (36, 9)]:
        assert rows[n] == (n, value, value, True)
    assert all(rows[n][1] == 0 for n in range(3, 37, 2))


def test_char8_completely_multiplicative():
    top = 10 ** 4
    for m in range(1, top + 1):
        cm = char8(m)
        for n in range(1, top // m + 1):
            assert char8(m * n) == cm * char8(n)


def test_starred_functions_against_a_sieve():
    top = 10 ** 4
    sig_star = [0] * (top + 1)
    cong_star = {(j, k): [0] * (top + 1) for j, k in [(1, 3), (2, 3), (1, 6), (5, 6)]}
    for d in range(1, top + 1):
        for cofactor in range(1, top // d + 1, 2):
            n = d * cofactor
            sig_star[n] += d
            for (j, k), table in cong_star.items():
                if d % k == j:
                    table[n] += 1
    for n in range(1, top + 1):
        assert sigma_star(n) == sig_star[n]
        for (j, k), table in cong_star.items():
            assert divisor_eval(d_cong_star(j, k), n) == table[n]
        assert delta_star(n) == cong_star[(1, 3)][n] - cong_star[(2, 3)][n]


def test_a_series_divisor_formula():
    top = 500
    a = a_series(top + 1)
    assert a.coeff_at(0) == 1
    for n in range(1, top + 1):
        assert a.coeff_at(n) == 6 * (d_cong(1, 3)(n) - d_cong(2, 3)(n))


@pytest.mark.parametrize("name", ["s1133", "m1244", "s1112", "m1444"])
def test_rep_counts_ignore_term_order(name):
    terms = list(get_form(name).form.terms)
    expected = rep_counts(get_form(name).form, 60)
    rng = random.Random(20240613)
    for _ in range(4):
        rng.shuffle(terms)
        assert rep_counts(QFormSpec("shuffled", terms), 60) == expected
    assert rep_counts(QFormSpec("reversed", terms[::-1]), 60) == expected


def test_divisor_eval_extends_by_zero():
    assert divisor_eval(sigma, 6) == 12
    assert divisor_eval(epsilon_star, Fraction(5, 2)) == 0
    assert divisor_eval(delta, -3) == 0


if __name__ == "__main__":
    print("=" * 60)
    print("Arithmetic Test")
    print("=" * 60)
    test_spot_counts()
    for form in sorted(FORM_THEOREMS):
        test_form_theorem_rows(form)
        print(f"✓ {form}")
    for conv in sorted(CONVOLUTION_THEOREMS):
        test_convolution_theorems(conv)
        print(f"✓ {conv}")
