"""Reference Airy evaluators used to cross-check the production routine.

Two independent regimes:

* ``series_pair`` sums the Maclaurin pair solutions f, g with compensated
  (Kahan) accumulation; trustworthy to ~1e-13 relative for |x| <= 5, after
  which the alternating cancellation eats double precision.
* ``asymptotic_pair`` sums the Poincare expansions (monotone form for x > 0,
  phase/amplitude form for x < 0) truncated at the smallest term; error is
  O(exp(-(4/3)|x|^{3/2})), below 1e-13 relative for |x| >= 8.

The overlap between series-at-extended-precision (see the test suite) and
these expansions is the self-test the production function is held to.
"""

from __future__ import annotations

import math

__all__ = ["series_pair", "asymptotic_pair", "SERIES_MAX", "ASYMPTOTIC_MIN"]

SERIES_MAX = 5.0
ASYMPTOTIC_MIN = 8.0

_AI0 = 0.3550280538878172392600632   # 1/(3^{2/3} Gamma(2/3))
_AIP0 = -0.2588194037928067984051836  # -1/(3^{1/3} Gamma(1/3))


def _kahan_add(total, comp, term):
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def series_pair(x: float, max_terms: int = 200) -> tuple[float, float]:
    """(Ai, Ai') from the Maclaurin pair series with compensated summation."""
    x = float(x)
    x3 = x * x * x
    # f = sum t_k x^{3k}, g = sum s_k x^{3k+1}; derivatives term by term
    f, fc = 1.0, 0.0
    fp, fpc = 0.0, 0.0
    g, gc = x, 0.0
    gp, gpc = 1.0, 0.0
    t = 1.0
    s = x
    for k in range(max_terms):
        t = t * x3 / ((3 * k + 2) * (3 * k + 3))
        s = s * x3 / ((3 * k + 3) * (3 * k + 4))
        f, fc = _kahan_add(f, fc, t)
        g, gc = _kahan_add(g, gc, s)
        if x != 0.0:
            fp, fpc = _kahan_add(fp, fpc, (3 * k + 3) * t / x)
            gp, gpc = _kahan_add(gp, gpc, (3 * k + 4) * s / x)
        if abs(t) < 1e-20 * abs(f) and abs(s) < 1e-20 * max(abs(g), 1e-300):
            break
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return ai, aip


def _u_coefficients(n: int) -> list[float]:
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1)
                 / ((2 * k - 1) * 216.0 * k))
    return u


_U = _u_coefficients(40)
_V = [-(6 * k + 1) / (6 * k - 1) * _U[k] if k else 1.0 for k in range(len(_U))]


def _poincare_sum(coeffs, zeta: float) -> float:
    """Sum coeffs[k] (-1)^k zeta^{-k}, truncated at the smallest term."""
    total = 0.0
    prev = math.inf
    sign = 1.0
    for k, c in enumerate(coeffs):
        term = sign * c * zeta ** (-k)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        sign = -sign
    return total


def asymptotic_pair(x: float) -> tuple[float, float]:
    """(Ai, Ai') from the Poincare expansions, |x| >= ~7 required."""
    x = float(x)
    if x > 0.0:
        zeta = (2.0 / 3.0) * x ** 1.5
        pre = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
        ai = pre * x ** -0.25 * _poincare_sum(_U, zeta)
        aip = -pre * x ** 0.25 * _poincare_sum(_V, zeta)
        return ai, aip
    z = -x
    zeta = (2.0 / 3.0) * z ** 1.5
    c, s = math.cos(zeta - math.pi / 4.0), math.sin(zeta - math.pi / 4.0)
    even_u = _poincare_sum(_U[0::2], zeta * zeta)
    odd_u = _poincare_sum(_U[1::2], zeta * zeta) / zeta
    even_v = _poincare_sum(_V[0::2], zeta * zeta)
    odd_v = _poincare_sum(_V[1::2], zeta * zeta) / zeta
    ai = (c * even_u + s * odd_u) / (math.sqrt(math.pi) * z ** 0.25)
    aip = (s * even_v - c * odd_v) * z ** 0.25 / math.sqrt(math.pi)
    return ai, aip
