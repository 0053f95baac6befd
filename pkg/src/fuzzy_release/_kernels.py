"""Hot loops over release-time grids.

Each kernel exists twice: an explicit loop compiled with numba and a
vectorised numpy version. The module-level names dispatch to whichever path
``_accel`` selected; both are importable for tests and benchmarks.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit


def _release_curves_numpy(T, a, b, c0, c1, c2, c3, alpha, mu_y, mu_w, t_w, x,
                          budget, cost_tol, rel_goal, rel_tol):
    T = np.asarray(T, dtype=np.float64)
    decay = np.exp(-b * T)
    m = -a * np.expm1(-b * T)
    warranty_faults = a * decay * -np.expm1(-b * t_w)
    cost = c0 + c1 * m * mu_y + c2 * T ** alpha + c3 * mu_w * warranty_faults
    rel = np.exp(-a * decay * -np.expm1(-b * x))
    mu_cost = (cost_tol - cost) / (cost_tol - budget)
    mu_rel = (rel - rel_tol) / (rel_goal - rel_tol)
    return cost, rel, mu_cost, mu_rel


@njit(cache=True, fastmath=False)
def _release_curves_loop(T, a, b, c0, c1, c2, c3, alpha, mu_y, mu_w, t_w, x,
                         budget, cost_tol, rel_goal, rel_tol):
    n = T.shape[0]
    cost = np.empty(n)
    rel = np.empty(n)
    mu_cost = np.empty(n)
    mu_rel = np.empty(n)
    w_frac = -math.expm1(-b * t_w)
    x_frac = -math.expm1(-b * x)
    cost_span = cost_tol - budget
    rel_span = rel_goal - rel_tol
    for i in range(n):
        t = T[i]
        decay = math.exp(-b * t)
        m = -a * math.expm1(-b * t)
        c = c0 + c1 * m * mu_y + c2 * t ** alpha + c3 * mu_w * a * decay * w_frac
        r = math.exp(-a * decay * x_frac)
        cost[i] = c
        rel[i] = r
        mu_cost[i] = (cost_tol - c) / cost_span
        mu_rel[i] = (r - rel_tol) / rel_span
    return cost, rel, mu_cost, mu_rel


def _nhpp_loglik_numpy(times, end, a, b):
    times = np.asarray(times, dtype=np.float64)
    return times.size * math.log(a * b) - b * times.sum() + a * math.expm1(-b * end)


@njit(cache=True)
def _nhpp_loglik_loop(times, end, a, b):
    s = 0.0
    for i in range(times.shape[0]):
        s += times[i]
    return times.shape[0] * math.log(a * b) - b * s + a * math.expm1(-b * end)


if USE_NUMBA:
    def release_curves(T, *params):
        return _release_curves_loop(np.ascontiguousarray(T, dtype=np.float64), *map(float, params))

    def nhpp_loglik(times, end, a, b):
        return _nhpp_loglik_loop(np.ascontiguousarray(times, dtype=np.float64),
                                 float(end), float(a), float(b))
else:
    release_curves = _release_curves_numpy
    nhpp_loglik = _nhpp_loglik_numpy
