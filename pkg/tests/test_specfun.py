"""Special-function tests; expected values come from independent oracles."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from thinned_tw import airy_ref, specfun
from thinned_tw.errors import DomainError

mp.mp.dps = 40


# ---------------------------------------------------------------- oracles

def mp_airy_series(x, terms=200):
    """Maclaurin pair series for (Ai, Ai') in extended precision."""
    x = mp.mpf(x)
    c1 = 1 / (mp.mpf(3) ** mp.mpf("2/3") * mp.gamma(mp.mpf(2) / 3))
    c2 = 1 / (mp.mpf(3) ** mp.mpf("1/3") * mp.gamma(mp.mpf(1) / 3))
    f = mp.mpf(1)
    g = x
    fp = mp.mpf(0)
    gp = mp.mpf(1)
    t, s = mp.mpf(1), x
    x3 = x ** 3
    for k in range(terms):
        t = t * x3 / ((3 * k + 2) * (3 * k + 3))
        s = s * x3 / ((3 * k + 3) * (3 * k + 4))
        f += t
        g += s
        if x != 0:
            fp += (3 * k + 3) * t / x
            gp += (3 * k + 4) * s / x
    return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
              -691.0 / 2730, 7.0 / 6, -3617.0 / 510)


def stirling_log_gamma(z, shift_to=10.0):
    """Recursion-shifted Stirling evaluation of ln Gamma (principal branch)."""
    z = complex(z)
    k = 0
    while abs(z + k) < shift_to:
        k += 1
    w = z + k
    series = sum(b / ((2 * n + 1) * (2 * n + 2) * w ** (2 * n + 1))
                 for n, b in enumerate(_BERNOULLI))
    val = (w - 0.5) * np.log(w) - w + 0.5 * math.log(2.0 * math.pi) + series
    for j in range(k):
        val -= np.log(z + j)
    return complex(val)


def euler_maclaurin_zeta(s, n_terms=24, k_max=8):
    """Euler-Maclaurin continuation of zeta(s); valid for complex s near -1."""
    s = complex(s)
    total = sum(n ** (-s) for n in range(1, n_terms))
    total += n_terms ** (1.0 - s) / (s - 1.0) + 0.5 * n_terms ** (-s)
    fact = [1.0]
    for i in range(1, 2 * k_max + 2):
        fact.append(fact[-1] * i)
    for k in range(1, k_max + 1):
        poch = 1.0 + 0.0j
        for j in range(2 * k - 1):
            poch *= s + j
        total += _BERNOULLI[k - 1] / fact[2 * k] * poch \
            * n_terms ** (-s - 2 * k + 1.0)
    return total


def euler_maclaurin_zeta_prime(s, h=1e-20):
    """Complex-step derivative of the Euler-Maclaurin continuation."""
    return euler_maclaurin_zeta(complex(s, h)).imag / h


# ---------------------------------------------------------------- airy

def test_airy_at_origin_closed_form():
    pair = specfun.airy(0.0)
    assert pair.ai == pytest.approx(
        1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0)), rel=1e-15)
    assert pair.aip == pytest.approx(
        -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0)), rel=1e-15)


def test_airy_decay_model_at_ten():
    pair = specfun.airy(10.0)
    model = 10.0 ** -0.25 * math.exp(-(2.0 / 3.0) * 10.0 ** 1.5) \
        / (2.0 * math.sqrt(math.pi))
    assert pair.ai / model == pytest.approx(1.0, abs=5e-3)


def test_airy_against_extended_precision_series():
    for x in (-5.0, -3.3, -1.0, 0.7, 2.5, 4.9):
        ai, aip = mp_airy_series(x)
        pair = specfun.airy(x)
        assert pair.ai == pytest.approx(ai, rel=1e-12)
        assert pair.aip == pytest.approx(aip, rel=1e-12)


def test_airy_regime_overlap_window():
    # series (extended precision) vs asymptotic reference vs production
    for x in np.linspace(8.0, 10.0, 11):
        for sign in (1.0, -1.0):
            xx = float(sign * x)
            ai_s, aip_s = mp_airy_series(xx, terms=300)
            ai_a, aip_a = airy_ref.asymptotic_pair(xx)
            assert ai_a == pytest.approx(ai_s, rel=1e-12)
            assert aip_a == pytest.approx(aip_s, rel=1e-12)
            pair = specfun.airy(xx)
            assert pair.ai == pytest.approx(ai_s, rel=1e-12)
            assert pair.aip == pytest.approx(aip_s, rel=1e-12)


def test_airy_float_series_reference_small_range():
    for x in np.linspace(-5.0, 5.0, 21):
        ai, aip = airy_ref.series_pair(float(x))
        pair = specfun.airy(float(x))
        assert pair.ai == pytest.approx(ai, rel=2e-13, abs=1e-290)
        assert pair.aip == pytest.approx(aip, rel=2e-13, abs=1e-290)


def test_airy_positive_side_invariants():
    for x in (0.0, 0.5, 2.0, 7.7, 30.0):
        pair = specfun.airy(x)
        assert 0.0 < pair.ai <= specfun.airy(0.0).ai
        assert pair.aip < 0.0


def test_airy_graceful_underflow():
    pair = specfun.airy(1500.0)
    assert pair.ai == 0.0
    assert pair.underflowed


@given(st.floats(min_value=-10.0, max_value=10.0))
def test_airy_derivative_consistency(x):
    h = 1e-5
    hi, lo = specfun.airy(x + h), specfun.airy(x - h)
    fd = (hi.ai - lo.ai) / (2.0 * h)
    assert fd == pytest.approx(specfun.airy(x).aip, abs=1e-8)


def test_airy_domain_errors():
    with pytest.raises(DomainError):
        specfun.airy(float("nan"))
    with pytest.raises(DomainError):
        specfun.airy(float("inf"))
    with pytest.raises(DomainError):
        specfun.airy(2500.0)


# ---------------------------------------------------------------- log_gamma

def test_log_gamma_trivial_points():
    assert specfun.log_gamma(1.0).value == pytest.approx(0.0, abs=1e-15)
    assert specfun.log_gamma(0.5).value.real == pytest.approx(
        0.5 * math.log(math.pi), rel=1e-14)
    assert specfun.log_gamma(0.5).value.imag == 0.0


def test_log_gamma_against_stirling_oracle():
    for z in (1 + 1j, 3.5 - 2j, -2.5 + 0.3j, 0.25 + 4j, 12.0 + 0j):
        got = specfun.log_gamma(z).value
        want = stirling_log_gamma(z)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_log_gamma_recursion_invariant():
    for z in (0.3 + 0.7j, 2.0 + 5j, 4.2 - 1.1j, 0.9):
        z = complex(z)
        lhs = specfun.log_gamma(z + 1).value - specfun.log_gamma(z).value \
            - np.log(z)
        assert abs(lhs) < 1e-13


@given(st.complex_numbers(min_magnitude=0.05, max_magnitude=30.0,
                          allow_infinity=False, allow_nan=False))
def test_log_gamma_conjugate_symmetry(z):
    if z.imag == 0.0 and z.real <= 0.0:
        return
    a = specfun.log_gamma(complex(z.real, -z.imag)).value
    b = specfun.log_gamma(z).value.conjugate()
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_log_gamma_pole_rejection():
    for z in (0.0, -1.0, -7.0):
        with pytest.raises(DomainError):
            specfun.log_gamma(z)


# ---------------------------------------------------------------- Barnes G

def test_barnes_v0_is_zero():
    assert specfun.log_barnes_g_product(0.0) == 0.0


def test_barnes_two_resolution_agreement():
    for v in (0.5, 1.0, 5.0, 20.0):
        a = specfun._barnes_segment_quad(v, 64)
        b = specfun._barnes_segment_quad(v, 128)
        assert a == pytest.approx(b, abs=1e-12)


def test_barnes_against_mpmath():
    for v in (0.3, 1.0, 2.5, 10.0):
        z = 1j * v / (2 * math.pi)
        want = float(2 * mp.re(mp.log(mp.barnesg(1 + mp.mpc(z)))))
        assert specfun.log_barnes_g_product(v) == pytest.approx(want, abs=1e-12)


def test_barnes_imaginary_part_vanishes_by_symmetry():
    # ln G(1+iy) + ln G(1-iy) is real: the quadrature result is real by
    # construction (2 Re), so check the underlying conjugate pair directly
    for v in (0.7, 3.0):
        z = 1j * v / (2 * math.pi)
        total = mp.log(mp.barnesg(1 + mp.mpc(z))) + mp.log(mp.barnesg(1 - mp.mpc(z)))
        assert abs(float(mp.im(total))) < 1e-25


def test_barnes_even_in_v():
    # depends on v only through v^2: compare the segment quadrature at +-v
    for v in (0.9, 4.0):
        plus = specfun._barnes_segment_quad(v, 96)
        minus = specfun._barnes_segment_quad(-v, 96)
        assert plus == pytest.approx(minus, abs=1e-13)


def test_barnes_domain_errors():
    with pytest.raises(DomainError):
        specfun.log_barnes_g_product(-0.5)
    with pytest.raises(DomainError):
        specfun.log_barnes_g_product(51.0)


# ---------------------------------------------------------------- zeta'(-1)

def test_zeta_prime_minus_one_against_euler_maclaurin():
    want = euler_maclaurin_zeta_prime(-1.0)
    assert specfun.zeta_prime_minus_one() == pytest.approx(want, abs=1e-12)


def test_zeta_prime_minus_one_against_mpmath():
    want = float(mp.zeta(-1, derivative=1))
    assert specfun.zeta_prime_minus_one() == pytest.approx(want, abs=1e-15)


def test_tau_constants():
    zp = specfun.zeta_prime_minus_one()
    assert specfun.tau_beta(2) > 0.0
    assert specfun.tau_beta(2) == pytest.approx(2 ** (1 / 24) * math.exp(zp), rel=1e-15)
    prod = specfun.tau_beta(1) * specfun.tau_beta(4)
    assert prod == pytest.approx(2.0 ** (-46.0 / 48.0) * math.exp(zp), rel=1e-14)
