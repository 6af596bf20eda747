"""Closed-form tail and transition expansions of the thinned distributions.

Each evaluator returns a :class:`TailEvaluation` carrying the value together
with the claimed error order as metadata, so the verification harness can fit
residuals against the right power of |s| instead of asserting absolute
agreement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import arg_gamma, log_barnes_g_product, tau_beta, zeta_prime_minus_one

__all__ = [
    "TailName",
    "TailEvaluation",
    "C_BETA",
    "G_BETA",
    "ln_f2_left",
    "ln_f1_left",
    "ln_f4_left",
    "right_tail",
    "right_tail_complement",
    "weibull_limit",
    "transition_ln_f2",
    "transition_p",
    "phase",
    "dlnf2_ds_expansion",
    "u_as_oscillatory",
]

C_BETA = {1: 1.0 / (4.0 * math.sqrt(math.pi)),
          2: 1.0 / (16.0 * math.pi),
          4: 1.0 / (512.0 * math.pi)}

G_BETA = {1: 2.0 / (3.0 * math.pi),
          2: 2.0 / (3.0 * math.pi),
          4: 1.0 / (3.0 * math.pi)}


class TailName(str, enum.Enum):
    F2_LEFT = "F2_left"
    F1_LEFT = "F1_left"
    F4_LEFT = "F4_left"
    RIGHT_TAIL_BETA = "right_tail_beta"
    WEIBULL_BETA = "weibull_beta"
    TRANSITION = "transition"
    DLNF2_DS = "dlnF2_ds"
    PHASE = "phase"
    U_AS_OSCILLATORY = "u_as_oscillatory"


@dataclass(frozen=True)
class TailEvaluation:
    name: TailName
    value: float
    claimed_error_order: str


def _check_beta(beta: int) -> int:
    if beta not in (1, 2, 4):
        raise DomainError(f"beta must be 1, 2 or 4, got {beta!r}")
    return int(beta)


def _check_v(v: float) -> float:
    v = float(v)
    if not math.isfinite(v) or v < 0.0:
        raise DomainError(f"v >= 0 required, got {v!r}")
    return v


def _arg_gamma_of_neg_iv(v: float) -> float:
    """arg Gamma(-iv/2pi); the single code path shared by every phase user."""
    return arg_gamma(complex(0.0, -v / (2.0 * math.pi)))


def ln_f2_left(s: float, v: float) -> TailEvaluation:
    """Three-term left expansion of ln F2 plus the Barnes-G constant."""
    v = _check_v(v)
    if s > -1.0:
        raise DomainError(f"ln_f2_left: s <= -1 required, got {s!r}")
    value = -(2.0 * v / (3.0 * math.pi)) * (-s) ** 1.5 \
        + (v * v / (4.0 * math.pi ** 2)) * math.log(8.0 * (-s) ** 1.5) \
        + log_barnes_g_product(v)
    return TailEvaluation(TailName.F2_LEFT, value,
                          "O(v^3 |s|^{-3/2} + v |s|^{-1})")


def ln_f1_left(s: float, v: float) -> TailEvaluation:
    """Left expansion of ln F1; the G-product enters at doubled argument."""
    v = _check_v(v)
    if s > -1.0:
        raise DomainError(f"ln_f1_left: s <= -1 required, got {s!r}")
    value = -(2.0 * v / (3.0 * math.pi)) * (-s) ** 1.5 \
        + (v * v / (2.0 * math.pi ** 2)) * math.log(8.0 * (-s) ** 1.5) \
        + 0.5 * log_barnes_g_product(2.0 * v) \
        + 0.5 * math.log(2.0 / (1.0 + math.exp(v)))
    return TailEvaluation(TailName.F1_LEFT, value, "O(|s|^{-3/4})")


def ln_f4_left(s: float, v: float) -> TailEvaluation:
    """Left expansion of ln F4 with the quartic-root constant term."""
    v = _check_v(v)
    if s > -1.0:
        raise DomainError(f"ln_f4_left: s <= -1 required, got {s!r}")
    sqrt_gamma = math.sqrt(-math.expm1(-v))  # sqrt(1 - e^{-v})
    bracket = 0.5 * ((1.0 + sqrt_gamma) / (1.0 - sqrt_gamma)) ** 0.25 \
        + 0.5 * ((1.0 - sqrt_gamma) / (1.0 + sqrt_gamma)) ** 0.25
    value = -(v / (3.0 * math.pi)) * (-s) ** 1.5 \
        + (v * v / (8.0 * math.pi ** 2)) * math.log(8.0 * (-s) ** 1.5) \
        + 0.5 * log_barnes_g_product(v) + math.log(bracket)
    return TailEvaluation(TailName.F4_LEFT, value, "O(|s|^{-3/4})")


def right_tail_complement(s: float, gamma: float, beta: int) -> float:
    """c_beta gamma^{beta/2} s^{-3 beta/4} exp(-(2 beta/3) s^{3/2})."""
    beta = _check_beta(beta)
    if s < 1.0:
        raise DomainError(f"right_tail: s >= 1 required, got {s!r}")
    if not (0.0 <= gamma <= 1.0):
        raise DomainError(f"right_tail: gamma in [0, 1] required, got {gamma!r}")
    return C_BETA[beta] * gamma ** (beta / 2.0) * s ** (-0.75 * beta) \
        * math.exp(-(2.0 * beta / 3.0) * s ** 1.5)


def right_tail(s: float, gamma: float, beta: int) -> TailEvaluation:
    """Displayed right-tail approximation to F_beta(s, gamma)."""
    value = 1.0 - right_tail_complement(s, gamma, beta)
    return TailEvaluation(TailName.RIGHT_TAIL_BETA, value, "o(1) relative")


def weibull_limit(s: float, beta: int) -> float:
    """gamma -> 0 limit law: exp(-g_beta (-s)^{3/2}) for s <= 0, else 1."""
    beta = _check_beta(beta)
    if s > 0.0:
        return 1.0
    return math.exp(-G_BETA[beta] * (-s) ** 1.5)


def transition_p(chi: float) -> int:
    """Summation cutoff: p = 0 for chi < -1/2, else the integer in (chi+1/2, chi+3/2]."""
    if chi < -0.5:
        return 0
    return int(math.floor(chi + 0.5)) + 1


def transition_ln_f2(s: float, v: float, chi: float) -> TailEvaluation:
    """ln F2 in the super-exponential transition regime (gamma near 1).

    Pure gamma=1 tail s^3/12 - ln(-s)/4 + ln tau_2 plus p(chi) correction
    factors ln(1 + (j!/sqrt(pi)) 2^{-7j/2-9/4} (-s)^{-3j/2-3/4}
    exp((2 sqrt(2)/3)(-s)^{3/2} - v)).
    """
    v = _check_v(v)
    if s > -2.0:
        raise DomainError(f"transition_ln_f2: s <= -2 required, got {s!r}")
    value = s ** 3 / 12.0 - 0.25 * math.log(-s) + math.log(tau_beta(2))
    expo = (2.0 * math.sqrt(2.0) / 3.0) * (-s) ** 1.5 - v
    for j in range(transition_p(chi)):
        log_term = math.lgamma(j + 1) - 0.5 * math.log(math.pi) \
            + (-3.5 * j - 2.25) * math.log(2.0) \
            + (-1.5 * j - 0.75) * math.log(-s) + expo
        value += float(np.logaddexp(0.0, log_term))
    return TailEvaluation(TailName.TRANSITION, value, "o(1)")


def phase(s: float, v: float) -> float:
    """(2/3)|s|^{3/2} - (v/2pi) ln(8 |s|^{3/2}) - arg Gamma(-iv/2pi).

    At v = 0 only the leading term survives (the Gamma argument sits on the
    pole, and the oscillation amplitude vanishes with sqrt(v) anyway).
    """
    if s >= 0.0:
        raise DomainError(f"phase: s < 0 required, got {s!r}")
    v = _check_v(v)
    lead = (2.0 / 3.0) * abs(s) ** 1.5
    if v == 0.0:
        return lead
    return lead - (v / (2.0 * math.pi)) * math.log(8.0 * abs(s) ** 1.5) \
        - _arg_gamma_of_neg_iv(v)


def dlnf2_ds_expansion(s: float, v: float) -> TailEvaluation:
    """(v/pi)|s|^{1/2} + |s|^{-1} [-3v^2/8pi^2 + (v/4pi) cos(2 phase)]."""
    v = _check_v(v)
    if s > -5.0:
        raise DomainError(f"dlnf2_ds_expansion: s <= -5 required, got {s!r}")
    if v == 0.0:
        return TailEvaluation(TailName.DLNF2_DS, 0.0, "O(|s|^{-5/2})")
    value = (v / math.pi) * abs(s) ** 0.5 + (1.0 / abs(s)) * (
        -3.0 * v * v / (8.0 * math.pi ** 2)
        + (v / (4.0 * math.pi)) * math.cos(2.0 * phase(s, v)))
    return TailEvaluation(TailName.DLNF2_DS, value, "O(|s|^{-5/2})")


def u_as_oscillatory(x: float, v: float) -> float:
    """Oscillatory approximation of the transcendent for x far to the left:

    (-x)^{-1/4} sqrt(v/pi) cos((2/3)(-x)^{3/2} - (v/2pi) ln(8(-x)^{3/2}) + phi)
    with phi = pi/4 - arg Gamma(-iv/2pi); error O((-x)^{-1}).
    """
    v = _check_v(v)
    if v <= 0.0:
        raise DomainError(f"u_as_oscillatory: v > 0 required, got {v!r}")
    if x > -5.0:
        raise DomainError(f"u_as_oscillatory: x <= -5 required, got {x!r}")
    theta = (2.0 / 3.0) * (-x) ** 1.5 \
        - (v / (2.0 * math.pi)) * math.log(8.0 * (-x) ** 1.5) \
        + math.pi / 4.0 - _arg_gamma_of_neg_iv(v)
    return (-x) ** -0.25 * math.sqrt(v / math.pi) * math.cos(theta)
