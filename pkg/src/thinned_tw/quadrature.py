"""Gauss-Legendre rules computed at runtime by Newton iteration.

Rules are memoized per order; the cache is only ever filled with the same
values for a given key, so concurrent readers and racing fills are safe.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError

__all__ = ["QuadRule", "gauss_legendre", "map_to_interval"]

_MAX_ORDER = 4096
_MAX_NEWTON_ITERATIONS = 20

_cache: dict[int, "QuadRule"] = {}
_cache_lock = threading.Lock()


@dataclass(frozen=True)
class QuadRule:
    """Nodes and weights of an n-point Gauss-Legendre rule on (-1, 1)."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def _compute_rule(n: int) -> QuadRule:
    if n == 1:
        nodes = np.array([0.0])
        weights = np.array([2.0])
    else:
        # Tricomi initial guess, then Newton on P_n
        i = np.arange(n)
        x = np.cos(np.pi * (i + 0.75) / (n + 0.5))
        for iteration in range(_MAX_NEWTON_ITERATIONS + 1):
            p, dp = _legendre_and_derivative(n, x)
            dx = p / dp
            x -= dx
            if np.max(np.abs(dx)) < 1e-15:
                break
        else:
            raise NumericError(f"gauss_legendre: Newton failed to converge for n={n}")
        assert iteration < _MAX_NEWTON_ITERATIONS
        _, dp = _legendre_and_derivative(n, x)
        weights = 2.0 / ((1.0 - x * x) * dp * dp)
        order_idx = np.argsort(x)
        nodes, weights = x[order_idx], weights[order_idx]
        # exact symmetrization: average the rule with its mirror image
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadRule(order=n, nodes=nodes, weights=weights)


def gauss_legendre(n: int) -> QuadRule:
    """Return the memoized n-point Gauss-Legendre rule, 1 <= n <= 4096."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"gauss_legendre: order must be an integer, got {n!r}")
    n = int(n)
    if n < 1 or n > _MAX_ORDER:
        raise DomainError(f"gauss_legendre: 1 <= n <= {_MAX_ORDER} required, got {n}")
    rule = _cache.get(n)
    if rule is None:
        rule = _compute_rule(n)
        with _cache_lock:
            _cache.setdefault(n, rule)
        rule = _cache[n]
    return rule


def map_to_interval(rule: QuadRule, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Affinely map a rule from (-1, 1) to (a, b); returns (points, weights)."""
    if not (b > a):
        raise DomainError(f"map_to_interval: need b > a, got ({a!r}, {b!r})")
    half = 0.5 * (b - a)
    return half * rule.nodes + 0.5 * (a + b), half * rule.weights
