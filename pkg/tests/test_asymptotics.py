"""Asymptotic formulas checked against exact polynomial evaluation."""

import dataclasses
import math
from fractions import Fraction

import mpmath as mp
import pytest

from lagzero import asymptotics, harness, laguerre, landscape, measure
from lagzero.asymptotics import AsymptoticPrediction, Regime
from lagzero.errors import DomainError


def test_prediction_structure(ctx80):
    pred = asymptotics.outer_ratio(ctx80, 40, 4.0)
    assert isinstance(pred, AsymptoticPrediction)
    assert pred.regime is Regime.OUTER
    assert pred.claimed_error_order == "O(1/n)"
    with pytest.raises(dataclasses.FrozenInstanceError):
        pred.value = 0


def test_outer_value_frozen(ctx80):
    pred = asymptotics.outer_ratio(ctx80, 40, 4.0)
    assert abs(pred.value - mp.mpf("1.0137281948387775")) <= 1e-12
    assert mp.im(pred.value) == 0


def test_outer_far_field(ctx80):
    # a(z) -> 1, so N11 -> 1
    pred = asymptotics.outer_ratio(ctx80, 40, 1e6)
    assert abs(pred.value - 1) <= 1e-12


def test_outer_clearance(ctx80):
    # beta2 ~ 2.0944 and the loop disk has radius beta1 ~ 0.3056; both
    # probes sit closer than the 0.2 clearance
    with pytest.raises(DomainError):
        asymptotics.outer_ratio(ctx80, 40, 2.2)
    with pytest.raises(DomainError):
        asymptotics.outer_ratio(ctx80, 40, 0.3)
    asymptotics.outer_ratio(ctx80, 40, 2.3)


def test_outer_convergence(ctx80):
    # integer alpha = -0.8 n keeps A_n fixed while n doubles
    errs = {}
    for n in (30, 60):
        spec = laguerre.LaguerreSpec.create(n, Fraction(-4 * n, 5))
        coeffs = laguerre.monic_rescaled(spec, scale=n)
        with mp.workprec(spec.precision_bits):
            p = laguerre.eval_poly(coeffs.coeffs, mp.mpc(4),
                                   spec.precision_bits)
            g = landscape.g_eval(ctx80, 4.0)
            ratio = p * mp.e ** (-n * g)
            n11 = asymptotics.outer_ratio(ctx80, n, 4.0).value
            errs[n] = float(abs(ratio - n11))
    assert errs[30] <= 5e-4
    assert errs[60] <= 0.7 * errs[30]


def test_oscillatory_decay():
    # relative error at a fixed interior point should drop like 1/n
    errs = {}
    for n in (40, 80):
        alpha = Fraction(-81 * n, 100)
        pred = asymptotics.oscillatory_value(n, alpha, 1.3)
        with mp.workprec(4 * n + 256):
            a_mp = mp.mpf(alpha.numerator) / alpha.denominator
            exact = mp.laguerre(n, a_mp, n * mp.mpf("1.3"))
            errs[n] = float(abs((pred.value - exact) / exact))
    assert errs[40] <= 0.05
    assert errs[80] <= 0.7 * errs[40]


def test_oscillatory_window():
    # window is [beta1 + 0.1 span, beta2 - 0.1 span], about [0.49, 1.89]
    with pytest.raises(DomainError):
        asymptotics.oscillatory_value(40, "-32.4", 0.35)
    with pytest.raises(DomainError):
        asymptotics.oscillatory_value(40, "-32.4", 2.0)
    asymptotics.oscillatory_value(40, "-32.4", 1.3)


def test_oscillatory_needs_interior_ratio():
    with pytest.raises(DomainError):
        asymptotics.oscillatory_value(40, 2, 1.3)
    with pytest.raises(DomainError):
        asymptotics.oscillatory_value(40, -50, 1.3)


def test_phase_at_midpoint(ctx81):
    # the arcsine term vanishes at the midpoint of [beta1, beta2]
    mid = float((ctx81.beta1 + ctx81.beta2) / 2)
    ph = asymptotics.oscillatory_phase(40, Fraction(-81 * 40, 100), mid)
    with mp.workprec(256):
        want = 40 * mp.pi * measure.cdf_from_beta2(ctx81, mid)
        assert abs(ph - want) <= 1e-12


def test_sign_changes_count_real_zeros():
    # the cosine's sign changes inside the window should match the exact
    # real zeros there, off by at most one (window-edge zeros)
    zset, _, _, _ = harness.compute_zeros(25, "-10.5")
    ctx = landscape.make_context(Fraction(21, 50))
    b1, b2 = float(ctx.beta1), float(ctx.beta2)
    lo = b1 + 0.1 * (b2 - b1)
    hi = b2 - 0.1 * (b2 - b1)
    inside = [z for z in zset.zeros
              if z.imag == 0 and lo < float(z.real) < hi]
    grid = [lo + (hi - lo) * k / 400 for k in range(401)]
    vals = [asymptotics.oscillatory_value(25, Fraction(-21, 2), x).value
            for x in grid]
    signs = [1 if v > 0 else -1 for v in vals]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    assert abs(changes - len(inside)) <= 1


def test_nth_root_converges(ctx80):
    spec = measure.make_measure(ctx80, 0.0)
    diffs = {}
    for n in (20, 40):
        alpha = Fraction(-4 * n, 5) - Fraction(3, 10)
        emp, prd = asymptotics.nth_root_exponent(n, alpha, spec, 4.0)
        diffs[n] = abs(emp - prd)
    assert diffs[20] <= 6e-3
    assert diffs[40] <= diffs[20]


def test_nth_root_prediction_r_insensitive(ctx80):
    # U_mu at an exterior point does not depend on r
    preds = []
    for r in (0.0, 3.0, math.inf):
        spec = measure.make_measure(ctx80, r)
        _, prd = asymptotics.nth_root_exponent(20, -16, spec, 4.0)
        preds.append(prd)
    assert max(preds) - min(preds) <= 2e-6


def test_nth_root_far_field(ctx80):
    # U_mu(z) ~ log|z| for large z since mu has total mass 1
    spec = measure.make_measure(ctx80, 0.0)
    _, prd = asymptotics.nth_root_exponent(20, -16, spec, 1e3)
    assert abs(prd - math.log(1e3)) <= 1e-2
