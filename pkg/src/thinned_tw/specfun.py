"""Special functions: Airy Ai/Ai', complex log-Gamma, Barnes-G products, zeta'(-1).

Everything here is a pure function of its arguments; there is no global
mutable state, so concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as sp

from .errors import DomainError
from .quadrature import gauss_legendre

__all__ = [
    "AiryPair",
    "LogGammaValue",
    "airy",
    "airy_arrays",
    "log_gamma",
    "arg_gamma",
    "log_barnes_g_product",
    "zeta_prime_minus_one",
    "tau_beta",
    "AIRY_ARG_MAX",
]

# Arguments beyond this magnitude are rejected; on the positive side Ai
# underflows long before, on the negative side phase accuracy degrades.
AIRY_ARG_MAX = 2000.0

# zeta'(-1) = 1/12 - ln A  (A the Glaisher-Kinkelin constant); the test
# suite re-derives this by Euler-Maclaurin continuation.
_ZETA_PRIME_MINUS_ONE = -0.16542114370045092921391966

_BARNES_V_MAX = 50.0
_BARNES_ORDER = 64


@dataclass(frozen=True)
class AiryPair:
    """Value of Ai and Ai' at a real argument."""

    ai: float
    aip: float
    x: float

    @property
    def underflowed(self) -> bool:
        """True when Ai(x) underflowed to zero (graceful, not an error)."""
        return self.x > 0.0 and self.ai == 0.0


@dataclass(frozen=True)
class LogGammaValue:
    """Principal branch of ln Gamma at a complex argument."""

    z: complex
    value: complex


def airy(x: float) -> AiryPair:
    """Evaluate Ai(x) and Ai'(x) on the real line.

    Relative accuracy is ~1e-13 for |x| <= 200; for large positive x the
    value underflows gracefully to 0 (see ``AiryPair.underflowed``).
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"airy: argument must be finite, got {x!r}")
    if abs(x) > AIRY_ARG_MAX:
        raise DomainError(f"airy: |x| <= {AIRY_ARG_MAX:g} required, got {x!r}")
    ai, aip, _, _ = sp.airy(x)
    if not math.isfinite(ai):  # AMOS underflow reporting leaves nan for huge x
        ai, aip = 0.0, 0.0
    return AiryPair(ai=float(ai), aip=float(aip), x=x)


def airy_arrays(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (Ai, Ai') used by the kernel builder; no domain checks."""
    ai, aip, _, _ = sp.airy(x)
    return ai, aip


def log_gamma(z: complex) -> LogGammaValue:
    """Principal branch of ln Gamma(z); poles raise a domain error."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise DomainError(f"log_gamma: pole at nonpositive integer {z!r}")
    return LogGammaValue(z=z, value=complex(sp.loggamma(z)))


def arg_gamma(z: complex) -> float:
    """arg Gamma(z) through the principal branch of ln Gamma."""
    return log_gamma(z).value.imag


def _barnes_segment_quad(v: float, order: int) -> float:
    """2 Re ln G(1 + iv/2pi) from the antiderivative identity.

    ln G(1+z) = (z/2) ln 2pi - z(z+1)/2 + z ln Gamma(1+z)
                - int_0^z ln Gamma(1+x) dx,
    integrated along the straight segment from 0 to z = iv/2pi.
    """
    z = 1j * v / (2.0 * np.pi)
    rule = gauss_legendre(order)
    t = 0.5 * (rule.nodes + 1.0)  # map to (0,1)
    integral = 0.5 * np.sum(rule.weights * sp.loggamma(1.0 + t * z)) * z
    ln_g = (z / 2.0) * np.log(2.0 * np.pi) - z * (z + 1.0) / 2.0 \
        + z * sp.loggamma(1.0 + z) - integral
    return float(2.0 * ln_g.real)


def log_barnes_g_product(v: float) -> float:
    """ln[G(1 + iv/2pi) G(1 - iv/2pi)] for v >= 0; real by conjugate symmetry."""
    v = float(v)
    if not math.isfinite(v) or v < 0.0:
        raise DomainError(f"log_barnes_g_product: v >= 0 required, got {v!r}")
    if v > _BARNES_V_MAX:
        raise DomainError(f"log_barnes_g_product: v <= {_BARNES_V_MAX:g} required")
    if v == 0.0:
        return 0.0
    return _barnes_segment_quad(v, 2 * _BARNES_ORDER)


def zeta_prime_minus_one() -> float:
    """zeta'(-1), accurate to better than 1e-14."""
    return _ZETA_PRIME_MINUS_ONE


def tau_beta(beta: int) -> float:
    """Left-tail constants tau_1, tau_2, tau_4 of the gamma=1 distributions."""
    zp = zeta_prime_minus_one()
    if beta == 1:
        return 2.0 ** (-11.0 / 48.0) * math.exp(0.5 * zp)
    if beta == 2:
        return 2.0 ** (1.0 / 24.0) * math.exp(zp)
    if beta == 4:
        return 2.0 ** (-35.0 / 48.0) * math.exp(0.5 * zp)
    raise DomainError(f"tau_beta: beta must be 1, 2 or 4, got {beta!r}")
