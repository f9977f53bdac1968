"""Idle-power tuning for the partial-idle alternation strategy."""

from __future__ import annotations

import math

import numpy as np

from .analytic import AggregateContext, SmarterPoint, roi, smarter_utility
from .model import MinerParams

_COARSE_POINTS = 1025
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
# brute-force evaluation block; sized to keep the working set inside the cache
_CHUNK = 131072


def _golden_max(f, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    """Golden-section maximum of ``f`` on [lo, hi]; ties drift toward lo."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def optimal_idle(ctx: AggregateContext, miner: MinerParams) -> SmarterPoint:
    """Idle power maximizing the partial-idle utility over [0, m].

    Scans a uniform 1025-point grid first (the objective is cheap and no
    unimodality is assumed), then refines the best bracket by golden section.
    Exact utility ties resolve to the smaller idle power, the lesser harm to
    coin security.
    """
    M, m = ctx.M, miner.m
    if not 0 < m < M:
        raise ValueError(f"deviating power must satisfy 0 < m < M, got m={m}, M={M}")
    deltas = np.linspace(0.0, m, _COARSE_POINTS)
    us = smarter_utility(ctx, miner, deltas)
    j = int(np.argmax(us))
    lo = float(deltas[j - 1]) if j > 0 else 0.0
    hi = float(deltas[j + 1]) if j + 1 < len(deltas) else float(m)
    d_ref, u_ref = _golden_max(lambda d: smarter_utility(ctx, miner, d), lo, hi, xtol=1e-9 * m)
    candidates = [
        (0.0, float(us[0])),
        (float(m), float(us[-1])),
        (float(deltas[j]), float(us[j])),
        (float(d_ref), float(u_ref)),
    ]
    best_delta, best_u = min(candidates, key=lambda c: (-c[1], c[0]))
    return SmarterPoint(delta=best_delta, utility=best_u, roi=roi(best_u, miner))


def brute_force_idle(ctx: AggregateContext, miner: MinerParams, resolution: int) -> SmarterPoint:
    """Exhaustive search over ``resolution + 1`` evenly spaced idle powers.

    Slow but assumption-free; the independent yardstick for ``optimal_idle``.
    The first index wins ties, which is again the smallest idle power.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    deltas = np.linspace(0.0, miner.m, int(resolution) + 1)
    best_u, best_d = -math.inf, 0.0
    # chunked scan; strict improvement keeps the first (smallest) maximizer
    for start in range(0, len(deltas), _CHUNK):
        block = deltas[start:start + _CHUNK]
        us = smarter_utility(ctx, miner, block)
        j = int(np.argmax(us))
        if us[j] > best_u:
            best_u, best_d = float(us[j]), float(block[j])
    return SmarterPoint(delta=best_d, utility=best_u, roi=roi(best_u, miner))
