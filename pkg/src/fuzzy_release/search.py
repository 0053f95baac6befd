"""Derivative-free one-dimensional search used by the estimator and the solvers."""
import math
from dataclasses import dataclass

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _width_ok(lo, hi, rtol, atol):
    return hi - lo <= rtol * max(abs(lo), abs(hi)) + atol


def golden_section_max(f, lo, hi, rtol=1e-8, atol=1e-14, max_iter=200):
    """Maximise a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x), iterations)``. The end points are compared against the
    interior result so a monotone ``f`` still returns its best end.
    """
    if hi < lo:
        raise ValueError("empty bracket")
    a, b = float(lo), float(hi)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while it < max_iter and not _width_ok(a, b, rtol, atol):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        it += 1
    x, fx = (x1, f1) if f1 >= f2 else (x2, f2)
    for edge in (lo, hi):
        fe = f(edge)
        if fe > fx:
            x, fx = edge, fe
    return x, fx, it


def bisect_sign(g, lo, hi, rtol=1e-10, atol=0.0, max_iter=200):
    """Root of ``g`` on ``[lo, hi]`` given ``g(lo) > 0 >= g(hi)``.

    Returns ``(x, iterations, converged)``.
    """
    it = 0
    while it < max_iter:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        it += 1
        if _width_ok(lo, hi, rtol, atol):
            return 0.5 * (lo + hi), it, True
    return 0.5 * (lo + hi), it, False


def _first_crossing(f, thresh, a, b, max_iter=200):
    # f(a) < thresh <= f(b); keep b on the satisfied side
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if f(mid) >= thresh:
            b = mid
        else:
            a = mid
    return b


@dataclass(frozen=True)
class ScanResult:
    x: float
    value: float
    grid_x: float
    grid_value: float


def scan_then_refine(f_grid, f_point, lo, hi, n_grid=2001, rtol=1e-8, tie_tol=1e-10):
    """Global maximum of ``f`` over ``[lo, hi]``, earliest ``x`` on ties.

    ``f_grid`` maps an array of abscissae to values and ``f_point`` a scalar.
    A uniform grid locates the best cell, golden section refines inside the
    neighbouring two cells, and the smallest ``x`` whose value is within
    ``tie_tol`` of the optimum is returned.
    """
    lo, hi = float(lo), float(hi)
    n_grid = max(int(n_grid), 3)
    xs = np.linspace(lo, hi, n_grid)
    vals = np.asarray(f_grid(xs), dtype=np.float64)
    i = int(np.argmax(vals))
    g_x, g_val = float(xs[i]), float(vals[i])

    left = xs[max(i - 1, 0)]
    right = xs[min(i + 1, n_grid - 1)]
    r_x, r_val, _ = golden_section_max(f_point, left, right, rtol=rtol)

    best = max(g_val, r_val)
    if g_val >= best:
        # the grid reaches the optimum itself (plateau): find where it starts exactly
        thresh = best
    else:
        thresh = best - tie_tol * max(1.0, abs(best))
    j = int(np.argmax(vals >= thresh)) if np.any(vals >= thresh) else -1
    if j == 0:
        x = lo
    elif j > 0:
        x = _first_crossing(f_point, thresh, float(xs[j - 1]), float(xs[j]))
    else:
        x = r_x
    if r_val >= thresh and r_x < x:
        x = r_x
    return ScanResult(x=float(x), value=float(f_point(x)), grid_x=g_x, grid_value=g_val)
