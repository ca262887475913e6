"""Univariate maximization helpers: grid restart + golden-section polish."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_max(f, lo: float, hi: float, tol: float = 1e-12):
    """Golden-section search for a maximum of f on [lo, hi].

    Assumes f is unimodal on the bracket; returns (argmax, max).
    """
    a, b = (lo, hi) if lo <= hi else (hi, lo)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(steps):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def grid_then_golden_max(f, lo: float, hi: float, coarse: int = 2048,
                         tol: float = 1e-12):
    """Locate the best coarse-grid cell, then polish with golden section.

    The grid restart guards against mild multimodality that a bare
    golden-section search would mishandle.
    """
    step = (hi - lo) / coarse
    best_k, best_v = 0, -math.inf
    for k in range(coarse + 1):
        v = f(lo + k * step)
        if v > best_v:
            best_k, best_v = k, v
    a = lo + max(best_k - 1, 0) * step
    b = lo + min(best_k + 1, coarse) * step
    x, v = golden_max(f, a, b, tol)
    if best_v > v:
        return lo + best_k * step, best_v
    return x, v


def grid_then_golden_min(f, lo: float, hi: float, coarse: int = 2048,
                         tol: float = 1e-12):
    x, v = grid_then_golden_max(lambda t: -f(t), lo, hi, coarse, tol)
    return x, -v


def central_diff(f, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def refine_by_derivative_sign(f, x: float, lo: float, hi: float,
                              h: float = 1e-7, tol: float = 1e-13) -> float:
    """Bisect on the sign of the central-difference derivative near x.

    Polishes an interior extremum candidate; falls back to x when no
    derivative sign change brackets it.
    """
    a = max(lo, x - 64.0 * h)
    b = min(hi, x + 64.0 * h)
    da, db = central_diff(f, a, h), central_diff(f, b, h)
    if da == 0.0:
        return a
    if db == 0.0:
        return b
    if da * db > 0:
        return x
    while b - a > tol:
        mid = 0.5 * (a + b)
        dm = central_diff(f, mid, h)
        if dm == 0.0:
            return mid
        if da * dm < 0:
            b = mid
        else:
            a, da = mid, dm
    return 0.5 * (a + b)
