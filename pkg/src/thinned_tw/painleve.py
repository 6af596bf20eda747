"""Ablowitz-Segur Painleve-II trajectories and the distributions built on them.

The transcendent solves u'' = x u + 2 u^3 with u(x) ~ sqrt(gamma) Ai(x) as
x -> +oo (gamma < 1).  A trajectory integrates leftward from an anchor x0
where the boundary condition is imposed through Ai itself, carrying three
accumulators as extra state so they inherit the integrator's error control:

    mu(x) = int_x^oo u dt,
    P(x)  = int_x^oo u^2 dt,
    L(x)  = int_x^oo H dt = -ln F2(x, gamma),   H = (u')^2 - x u^2 - u^4.

The accumulators are seeded at x0 with closed-form Airy tail integrals, so
every component stays positive on (1, x0) and the first integration leg can
run under pure relative error control (the solution there is ~1e-10, which
any absolute tolerance would otherwise swamp).

The distributions follow Proposition-style identities:

    F2 = exp(-L),  F4 = sqrt(F2) cosh(mu/2),
    F1^2 = F2(s, gb) (gamma - 1 - cosh mu_b + sqrt(gb) sinh mu_b)/(gamma - 2),

with gb = 2 gamma - gamma^2 and mu_b the trajectory at gb.  Survival forms
(1 - F) are assembled with expm1/log1p so the right tail keeps full relative
accuracy.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, NumericError, RangeError
from .quadrature import gauss_legendre, map_to_interval
from .specfun import airy, airy_arrays, log_barnes_g_product

__all__ = [
    "PainleveTrajectory",
    "solve_as",
    "get_trajectory",
    "ln_f2",
    "mu",
    "f2",
    "f2_sf",
    "f4",
    "f4_sf",
    "f1",
    "f1_sf",
    "TotalIntegralCheck",
    "total_integral_check",
    "DEFAULT_TOL",
    "DEFAULT_X0",
]

DEFAULT_X0 = 10.0
DEFAULT_TOL = 1e-10
DEFAULT_S_MIN = -12.0

# below this, u'' = xu + 2u^3 is integrated with a scalar atol; above it the
# solution is tiny, positive and monotone, so pure relative control is used
_PHASE_SPLIT = 1.0
_ABS_TOL = 1e-14

_GAMMA_FLOOR = 1e-150


def _rhs(x, y):
    u, up = y[0], y[1]
    return (up, x * u + 2.0 * u ** 3, -u, -u * u,
            -(up * up - x * u * u - u ** 4))


def _airy_tail_integral(x0: float) -> float:
    """int_x0^oo Ai(t) dt by quadrature (integrand below 1e-200 past +35)."""
    pts, wts = map_to_interval(gauss_legendre(120), x0, max(x0 + 25.0, 35.0))
    ai, _ = airy_arrays(pts)
    return float(np.sum(wts * ai))


def _airy_q(x: float) -> float:
    """int_x^oo (t - x) Ai(t)^2 dt = (2/3)(x^2 Ai^2 - x Ai'^2) - Ai Ai'/3."""
    p = airy(x)
    return (2.0 / 3.0) * (x * x * p.ai * p.ai - x * p.aip * p.aip) \
        - p.ai * p.aip / 3.0


def _airy_trk(x: float) -> float:
    """int_x^oo Ai(t)^2 dt = Ai'(x)^2 - x Ai(x)^2."""
    p = airy(x)
    return p.aip * p.aip - x * p.ai * p.ai


class PainleveTrajectory:
    """Dense record of one Ablowitz-Segur solve; immutable once built."""

    def __init__(self, gamma, x0, s_min, tol, sol_outer, sol_inner,
                 mu_tail, lnf2_tail):
        self.gamma = gamma
        self.x0 = x0
        self.s_min = s_min
        self.tol = tol
        self.mu_tail = mu_tail        # int_{x0}^oo u dt
        self.lnF2_tail = lnf2_tail    # int_{x0}^oo H dt
        self._outer = sol_outer       # [split, x0], pure relative control
        self._inner = sol_inner       # [s_min, split]

    @property
    def trivial(self) -> bool:
        return self._outer is None

    def _check_range(self, s) -> None:
        s = np.asarray(s, dtype=float)
        if np.any(s < self.s_min) or np.any(s > self.x0):
            raise RangeError(
                f"trajectory covers [{self.s_min}, {self.x0}], "
                f"requested {s!r}")

    def state(self, s):
        """(u, u', mu, P, L) at s, from the dense interpolant."""
        self._check_range(s)
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        if self.trivial:
            out = np.zeros((5, s_arr.size))
        else:
            split = self._inner.t[0]  # == _PHASE_SPLIT unless s_min above it
            inner = s_arr <= split
            out = np.empty((5, s_arr.size))
            if np.any(inner):
                out[:, inner] = self._inner.sol(s_arr[inner])
            if np.any(~inner):
                out[:, ~inner] = self._outer.sol(s_arr[~inner])
        return out[:, 0] if np.isscalar(s) or np.ndim(s) == 0 else out

    def u(self, s):
        return self.state(s)[0]

    def u_prime(self, s):
        return self.state(s)[1]

    def mu(self, s):
        """mu(s, gamma) = int_s^oo u dt."""
        return self.state(s)[2]

    def integral_u2(self, s):
        """int_s^oo u^2 dt (equals the Hamiltonian along the trajectory)."""
        return self.state(s)[3]

    def ln_f2(self, s):
        """ln F2(s, gamma) = -int_s^oo [(u')^2 - t u^2 - u^4] dt."""
        return -self.state(s)[4]

    def mu_partial(self, s):
        """int_s^{x0} u dt (the integrated leg, without the tail closure)."""
        return self.mu(s) - self.mu_tail

    def ln_f2_partial(self, s):
        """-int_s^{x0} H dt."""
        return -(self.state(s)[4] - self.lnF2_tail)

    def hamiltonian(self, s):
        """(u')^2 - s u^2 - u^4 evaluated from the interpolated state."""
        st = self.state(s)
        u, up = st[0], st[1]
        return up * up - np.asarray(s, dtype=float) * u * u - u ** 4

    @property
    def samples(self) -> np.ndarray:
        """(x, u, u') at the accepted integrator steps, x descending."""
        if self.trivial:
            return np.zeros((0, 3))
        xs = np.concatenate([self._outer.t, self._inner.t])
        us = np.concatenate([self._outer.y[0], self._inner.y[0]])
        ups = np.concatenate([self._outer.y[1], self._inner.y[1]])
        return np.column_stack([xs, us, ups])


def solve_as(gamma: float, s_min: float, tol: float = DEFAULT_TOL,
             x0: float = DEFAULT_X0) -> PainleveTrajectory:
    """Integrate the Ablowitz-Segur solution from x0 leftward to s_min."""
    gamma = float(gamma)
    if not (0.0 <= gamma < 1.0):
        raise DomainError(
            f"solve_as: the Ablowitz-Segur family requires 0 <= gamma < 1 "
            f"(gamma = 1 is the Hastings-McLeod boundary case); got {gamma!r}")
    if not (s_min <= x0):
        raise DomainError(f"solve_as: s_min <= x0 required, got {s_min!r} > {x0!r}")
    if not (0.0 < tol <= 1e-4):
        raise DomainError(f"solve_as: tol in (0, 1e-4] required, got {tol!r}")

    sq = math.sqrt(gamma)
    mu_tail = sq * _airy_tail_integral(x0)
    p_tail = gamma * _airy_trk(x0)
    lnf2_tail = gamma * _airy_q(x0)
    if gamma < _GAMMA_FLOOR:
        return PainleveTrajectory(gamma, x0, s_min, tol, None, None, 0.0, 0.0)

    pair = airy(x0)
    y0 = np.array([sq * pair.ai, sq * pair.aip, mu_tail, p_tail, lnf2_tail])

    split = min(_PHASE_SPLIT, x0)
    outer = solve_ivp(_rhs, (x0, split), y0, method="RK45",
                      rtol=tol, atol=0.0, dense_output=True)
    if not outer.success:
        raise NumericError(f"solve_as: outer leg failed: {outer.message}")
    inner_t0 = (split, min(s_min, split - 1e-9))
    inner = solve_ivp(_rhs, inner_t0, outer.y[:, -1], method="RK45",
                      rtol=tol, atol=_ABS_TOL, dense_output=True)
    if not inner.success:
        # step-size collapse marks the left boundary of solvability
        reached = inner.t[-1] if inner.t.size else split
        raise NumericError(
            f"solve_as: integration stalled at x = {reached:.6g} before "
            f"reaching s_min = {s_min:.6g} (gamma = {gamma}); "
            f"left boundary of solvability: {inner.message}")
    return PainleveTrajectory(gamma, x0, s_min, tol, outer, inner,
                              mu_tail, lnf2_tail)


# ---------------------------------------------------------------------------
# trajectory cache: distinct (gamma, tol) solves are independent; the cache
# only deepens s_min, so concurrent fills are idempotent

_cache: dict[tuple[float, float], PainleveTrajectory] = {}
_cache_lock = threading.Lock()


def get_trajectory(gamma: float, s_min: float = DEFAULT_S_MIN,
                   tol: float = DEFAULT_TOL) -> PainleveTrajectory:
    """Cached trajectory at (gamma, tol) reaching at least s_min."""
    key = (float(gamma), float(tol))
    traj = _cache.get(key)
    if traj is None or traj.s_min > s_min:
        target = min(s_min, DEFAULT_S_MIN)
        target = -10.0 * math.ceil(-target / 10.0)  # bucket to decades
        traj = solve_as(gamma, target, tol=tol)
        with _cache_lock:
            held = _cache.get(key)
            if held is None or held.s_min > traj.s_min:
                _cache[key] = traj
            traj = _cache[key]
    return traj


def _trajectory_for(s: float, gamma: float, tol: float) -> PainleveTrajectory:
    if s > DEFAULT_X0 - 1.0:
        # rare far-right evaluation: fresh anchor above s
        return solve_as(gamma, s - 1.0, tol=tol, x0=s + 4.0)
    return get_trajectory(gamma, s_min=min(DEFAULT_S_MIN, s), tol=tol)


# ---------------------------------------------------------------------------
# spec-level operations on trajectories

def ln_f2(traj: PainleveTrajectory, s: float) -> float:
    """ln F2(s, gamma) from a trajectory (single-integral Hamiltonian form)."""
    return float(traj.ln_f2(s))


def mu(traj: PainleveTrajectory, s: float) -> float:
    """mu(s, gamma) = int_s^oo u dt from a trajectory."""
    return float(traj.mu(s))


def f2(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    if gamma == 0.0:
        return 1.0
    return math.exp(float(_trajectory_for(s, gamma, tol).ln_f2(s)))


def f2_sf(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """1 - F2(s, gamma) with full relative accuracy in the right tail."""
    if gamma == 0.0:
        return 0.0
    return -math.expm1(float(_trajectory_for(s, gamma, tol).ln_f2(s)))


def _ln_f4(s: float, gamma: float, tol: float) -> float:
    traj = _trajectory_for(s, gamma, tol)
    return 0.5 * float(traj.ln_f2(s)) + _log_cosh(0.5 * float(traj.mu(s)))


def _log_cosh(x: float) -> float:
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def f4(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """F4(s, gamma) = sqrt(F2) cosh(mu/2); lies in (0, 1]."""
    if gamma == 0.0:
        return 1.0
    return min(1.0, math.exp(_ln_f4(s, gamma, tol)))


def f4_sf(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """1 - F4(s, gamma).

    Written as -[expm1(a+b) + expm1(a-b)]/2 with a = (ln F2)/2, b = mu/2,
    which preserves the two-order cancellation between the determinant decay
    and cosh growth in the right tail.
    """
    if gamma == 0.0:
        return 0.0
    traj = _trajectory_for(s, gamma, tol)
    a = 0.5 * float(traj.ln_f2(s))
    b = 0.5 * float(traj.mu(s))
    return -0.5 * (math.expm1(a + b) + math.expm1(a - b))


def _ln_f1_ratio(mu_bar: float, gamma: float) -> float:
    """ln of (gamma - 1 - cosh mu_b + sqrt(gb) sinh mu_b)/(gamma - 2).

    Uses cosh m - 1 = 2 sinh^2(m/2) so the right tail (mu_b -> 0) keeps
    relative accuracy; raises if the bracketed ratio is not positive.
    """
    gb = gamma * (2.0 - gamma)
    q = math.sqrt(gb) * math.sinh(mu_bar) - 2.0 * math.sinh(0.5 * mu_bar) ** 2
    ratio_minus_one = q / (gamma - 2.0)
    if ratio_minus_one <= -1.0:
        raise NumericError(
            f"f1: bracketed ratio nonpositive (1 + {ratio_minus_one:.3e}) at "
            f"gamma={gamma}, mu_bar={mu_bar}; integration tolerance too loose")
    return math.log1p(ratio_minus_one)


def f1(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """F1(s, gamma) through the gamma_bar = 2 gamma - gamma^2 trajectory."""
    if gamma == 0.0:
        return 1.0
    gb = gamma * (2.0 - gamma)
    traj = _trajectory_for(s, gb, tol)
    ln_val = 0.5 * float(traj.ln_f2(s)) \
        + 0.5 * _ln_f1_ratio(float(traj.mu(s)), gamma)
    return min(1.0, math.exp(ln_val))


def f1_sf(s: float, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """1 - F1(s, gamma) with right-tail relative accuracy."""
    if gamma == 0.0:
        return 0.0
    gb = gamma * (2.0 - gamma)
    traj = _trajectory_for(s, gb, tol)
    ln_val = 0.5 * float(traj.ln_f2(s)) \
        + 0.5 * _ln_f1_ratio(float(traj.mu(s)), gamma)
    return -math.expm1(ln_val)


# ---------------------------------------------------------------------------
# total integrals (limits s -> -oo)

_EXTRAP_POINTS = (-30.0, -40.0, -50.0)


class TotalIntegralCheck(NamedTuple):
    gamma: float
    mu_limit: float           # extrapolated int_{-oo}^oo u dt
    mu_closed_form: float     # (1/2) ln((1+sqrt(g))/(1-sqrt(g)))
    corollary_lhs: float      # extrapolated lnF2 + (2v/3pi)(-s)^{3/2} - ...
    corollary_rhs: float      # (3v^2/4pi^2) ln 2 + ln G-product


def _phase_value(s: float, v: float) -> float:
    # same phase as tails.phase; duplicated arithmetic would invite drift,
    # but tails imports nothing from here so a local binding is safe
    from .tails import phase
    return phase(s, v)


def _period_average(traj: PainleveTrajectory, s: float, component: int) -> float:
    """Average a state component over one local oscillation period at s.

    u oscillates with local frequency sqrt(-s); averaging over one exact
    period annihilates the O((-s)^{-3/4}) oscillatory remainder that a plain
    power-law extrapolation cannot see.
    """
    period = 2.0 * np.pi / math.sqrt(-s)
    rule = gauss_legendre(40)
    pts = s + 0.5 * period * rule.nodes
    vals = traj.state(pts)[component]
    return float(0.5 * np.sum(rule.weights * vals))


def _richardson_stage(svals, yvals, p):
    out_s, out_y = [], []
    for i in range(len(svals) - 1):
        h1, h2 = (-svals[i]) ** (-p), (-svals[i + 1]) ** (-p)
        out_y.append((yvals[i] * h2 - yvals[i + 1] * h1) / (h2 - h1))
        out_s.append(svals[i + 1])
    return out_s, out_y


def total_integral_check(gamma: float, tol: float = DEFAULT_TOL) -> TotalIntegralCheck:
    """Compare extrapolated s -> -oo limits against their closed forms."""
    gamma = float(gamma)
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"total_integral_check: 0 < gamma < 1 required, got {gamma!r}")
    v = -math.log1p(-gamma)
    traj = get_trajectory(gamma, s_min=_EXTRAP_POINTS[-1] - 4.0, tol=tol)

    mu_avgs = [_period_average(traj, s, 2) for s in _EXTRAP_POINTS]
    mu_limit = float(np.mean(mu_avgs))
    mu_closed = 0.5 * math.log((1.0 + math.sqrt(gamma)) / (1.0 - math.sqrt(gamma)))

    svals = list(_EXTRAP_POINTS)
    lhs_vals = []
    for s in svals:
        combo = float(traj.ln_f2(s)) + (2.0 * v / (3.0 * np.pi)) * (-s) ** 1.5 \
            - (3.0 * v * v / (8.0 * np.pi ** 2)) * math.log(-s)
        # subtract the leading oscillatory remainder -(v/8pi)|s|^{-3/2} sin 2phi
        combo -= -(v / (8.0 * np.pi)) * (-s) ** -1.5 \
            * math.sin(2.0 * _phase_value(s, v))
        lhs_vals.append(combo)
    s1, y1 = _richardson_stage(svals, lhs_vals, 1.0)
    _, y2 = _richardson_stage(s1, y1, 1.5)
    corollary_lhs = float(y2[0])
    corollary_rhs = (3.0 * v * v / (4.0 * np.pi ** 2)) * math.log(2.0) \
        + log_barnes_g_product(v)
    return TotalIntegralCheck(gamma=gamma, mu_limit=mu_limit,
                              mu_closed_form=mu_closed,
                              corollary_lhs=corollary_lhs,
                              corollary_rhs=corollary_rhs)
