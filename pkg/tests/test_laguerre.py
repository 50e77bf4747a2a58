"""Coefficient construction and evaluation against independent oracles."""

from fractions import Fraction

import mpmath as mp
import pytest

from lagzero import laguerre
from lagzero.errors import DomainError
from lagzero.laguerre import LaguerreSpec


def test_parse_alpha_exact_forms():
    assert laguerre.parse_alpha("-32.4") == Fraction(-162, 5)
    assert laguerre.parse_alpha("-31.999999") == Fraction(-31999999, 1000000)
    assert laguerre.parse_alpha(-7) == Fraction(-7)
    assert laguerre.parse_alpha(Fraction(3, 7)) == Fraction(3, 7)


def test_parse_alpha_rejects_binary_floats():
    # a float has already destroyed dist(alpha, Z); refuse it loudly
    with pytest.raises(DomainError):
        laguerre.parse_alpha(-32.4)
    with pytest.raises(DomainError):
        laguerre.parse_alpha("not a number")


def test_default_precision_floor_and_growth():
    assert laguerre.default_precision(1) == 256
    assert laguerre.default_precision(48) == 256
    assert laguerre.default_precision(80) == 4 * 80 + 64


def test_degree_one_closed_form():
    # L_1^(a)(z) = 1 + a - z
    spec = LaguerreSpec.create(1, Fraction(-5, 3), 128)
    coeffs = laguerre.build_coefficients(spec)
    assert coeffs.exact == (Fraction(-2, 3), Fraction(-1))


def test_degree_two_closed_form():
    # L_2^(a)(z) = z^2/2 - (a+2) z + (a+1)(a+2)/2, checked at a = -3/2
    spec = LaguerreSpec.create(2, Fraction(-3, 2), 128)
    coeffs = laguerre.build_coefficients(spec)
    assert coeffs.exact == (Fraction(-1, 8), Fraction(-1, 2), Fraction(1, 2))


@pytest.mark.parametrize(
    "n,alpha,x",
    [
        (5, Fraction(-5, 2), "1.3"),
        (8, Fraction(-17, 4), "0.7"),
        (12, Fraction(7, 3), "2.25"),
    ],
)
def test_eval_against_mpmath_laguerre(n, alpha, x):
    # mpmath computes L_n^(a) through the confluent hypergeometric series,
    # a fully independent code path from the binomial-sum coefficients
    spec = LaguerreSpec.create(n, alpha, 320)
    with mp.workprec(320):
        x = mp.mpf(x)
        mine = laguerre.eval_laguerre(spec, x)
        ref = mp.laguerre(n, mp.mpf(alpha.numerator) / alpha.denominator, x)
        assert abs(mine - ref) <= mp.mpf(2) ** -240 * abs(ref)


def test_eval_poly_matches_horner_by_hand():
    coeffs = (mp.mpf(2), mp.mpf(-3), mp.mpf(1))  # (z-1)(z-2)
    assert laguerre.eval_poly(coeffs, mp.mpf(2), 128) == 0
    assert laguerre.eval_poly(coeffs, mp.mpf(0), 128) == 2


def test_integer_parameter_reduction_identity():
    # L_7^(-3)(z) = (4!/7!) (-z)^3 L_4^(3)(z) pointwise
    s7 = LaguerreSpec.create(7, -3, 320)
    s4 = LaguerreSpec.create(4, 3, 320)
    with mp.workprec(320):
        for z in (mp.mpf("0.9"), mp.mpc(2, 1)):
            lhs = laguerre.eval_laguerre(s7, z)
            rhs = mp.mpf(24) / 5040 * (-z) ** 3 * laguerre.eval_laguerre(s4, z)
            assert abs(lhs - rhs) <= mp.mpf(2) ** -200


def test_integer_reduction_bookkeeping():
    mult, reduced = laguerre.integer_reduction(7, -3)
    assert mult == 3
    assert reduced.n == 4
    assert reduced.alpha == Fraction(3)
    with pytest.raises(DomainError):
        laguerre.integer_reduction(7, Fraction(-1, 2))


def test_monic_rescaled_is_monic_and_consistent():
    spec = LaguerreSpec.create(6, Fraction(1, 2), 320)
    mon = laguerre.monic_rescaled(spec)
    assert mon.exact[-1] == 1
    assert mon.degree == 6
    # P(z) = (-1)^n n!/n^n L_n(n z)
    with mp.workprec(320):
        z = mp.mpf("0.83")
        pv = laguerre.eval_poly(mon.coeffs, z, 320)
        lv = laguerre.eval_laguerre(spec, 6 * z) * mp.mpf(720) / 6**6
        assert abs(pv - lv) <= mp.mpf(2) ** -200


def test_monic_rescaled_explicit_scale():
    # reduced polynomials evaluate at the original n*z scaling
    spec = LaguerreSpec.create(2, Fraction(1), 256)
    mon4 = laguerre.monic_rescaled(spec, scale=4)
    with mp.workprec(256):
        z = mp.mpf("0.6")
        pv = laguerre.eval_poly(mon4.coeffs, z, 256)
        lv = laguerre.eval_laguerre(spec, 4 * z) * mp.mpf(2) / 16
        assert abs(pv - lv) <= mp.mpf(2) ** -200


def test_coefficient_list_reround():
    spec = LaguerreSpec.create(9, Fraction(-22, 7), 128)
    lo = laguerre.build_coefficients(spec)
    hi = lo.at_precision(512)
    assert hi.precision_bits == 512
    assert hi.exact == lo.exact
    with mp.workprec(512):
        k = 4
        exact = mp.mpf(lo.exact[k].numerator) / lo.exact[k].denominator
        assert abs(hi.coeffs[k] - exact) <= abs(exact) * mp.mpf(2) ** -500


def test_spec_validation():
    with pytest.raises(DomainError):
        LaguerreSpec.create(-1, Fraction(1, 2))
    with pytest.raises(DomainError):
        LaguerreSpec(3, Fraction(1, 2), 32)
    spec = LaguerreSpec.create(40, "-32.4")
    assert spec.A_n == Fraction(81, 100)
    spec.require_theorem_range()
    with pytest.raises(DomainError):
        LaguerreSpec.create(40, "-80").require_theorem_range()
