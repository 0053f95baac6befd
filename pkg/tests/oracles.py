"""Independent reference computations used as test oracles.

Nothing here imports the package's numeric code: formulas are written out
again from scratch so the checks do not share a code path with what they test.
"""
import numpy as np
from mpmath import mp, mpf


def simulate_go_thinning(a, b, end, rng):
    """Goel-Okumoto NHPP event times on [0, end] by Lewis-Shedler thinning.

    The intensity a*b*exp(-b t) is bounded by its value at 0.
    """
    lam_max = a * b
    n_cand = rng.poisson(lam_max * end)
    cand = np.sort(rng.uniform(0.0, end, n_cand))
    keep = rng.uniform(0.0, 1.0, n_cand) * lam_max < a * b * np.exp(-b * cand)
    return cand[keep]


def pooled_replicates(a, b, end, k, seed):
    rng = np.random.default_rng(seed)
    times = np.concatenate([simulate_go_thinning(a, b, end, rng) for _ in range(k)])
    return np.sort(times)


def truncexp_samples(rate, cutoff, size, rng):
    """Inverse-transform draws from the exponential truncated to [0, cutoff]."""
    u = rng.uniform(0.0, 1.0, size)
    return -np.log1p(-u * (1.0 - np.exp(-rate * cutoff))) / rate


def go_loglik_mp(times, end, a, b, dps=60):
    with mp.workdps(dps):
        a, b = mpf(a), mpf(b)
        s = sum(mp.log(a * b) - b * mpf(float(t)) for t in times)
        return s - a * (1 - mp.exp(-b * mpf(end)))


def fd_gradient_mp(times, end, a, b, dps=60, rel_step=mpf("1e-20")):
    """Central finite-difference gradient of the log-likelihood at high precision."""
    with mp.workdps(dps):
        a, b = mpf(a), mpf(b)
        ha, hb = a * rel_step, b * rel_step
        ga = (go_loglik_mp(times, end, a + ha, b, dps) - go_loglik_mp(times, end, a - ha, b, dps)) / (2 * ha)
        gb = (go_loglik_mp(times, end, a, b + hb, dps) - go_loglik_mp(times, end, a, b - hb, dps)) / (2 * hb)
        return float(ga), float(gb)


def release_curves_ref(T, a, b, c0, c1, c2, c3, alpha, mu_y, mu_w, t_w, x):
    """Expected cost and reliability written directly from the model definitions."""
    m = lambda t: a * (1.0 - np.exp(-b * t))
    cost = c0 + c1 * m(T) * mu_y + c2 * T ** alpha + c3 * mu_w * (m(T + t_w) - m(T))
    rel = np.exp(-(m(T + x) - m(T)))
    return cost, rel


def brute_memberships(problem, n=1_000_000):
    m, c, t = problem.model, problem.cost, problem.targets
    T = np.linspace(*problem.search_window, n)
    cost, rel = release_curves_ref(T, m.a, m.b, c.c0, c.c1, c.c2, c.c3, c.alpha_exp,
                                   c.mu_y, c.mu_w, c.t_w, t.mission_time)
    u1 = (t.cost_tolerance - cost) / (t.cost_tolerance - t.budget)
    u2 = (rel - t.reliability_tolerance) / (t.reliability_goal - t.reliability_tolerance)
    return T, u1, u2


def brute_maximin(problem, n=1_000_000):
    """(T, unclamped max-min, clamped max-min) on a uniform grid."""
    T, u1, u2 = brute_memberships(problem, n)
    z = np.minimum(u1, u2)
    i = int(np.argmax(z))
    return T[i], z[i], min(max(z[i], 0.0), 1.0)


def brute_goal_program(problem, weights=(1.0, 1.0), target=0.0, n=1_000_000):
    T, u1, u2 = brute_memberships(problem, n)
    g = weights[0] * np.maximum(target - u1, 0) + weights[1] * np.maximum(target - u2, 0)
    i = int(np.argmin(g))
    return T[i], g[i]


def random_problem(rng):
    """Release problem with parameters log-uniform within a decade of the reference case.

    Budget and tolerances are placed relative to the cheapest release so that
    both feasible and infeasible instances occur.
    """
    from fuzzy_release.cost_model import CostParams
    from fuzzy_release.fuzzy_core import FuzzyTargets
    from fuzzy_release.solver import ReleaseProblem
    from fuzzy_release.srgm import GoelOkumotoModel

    def near(v):
        return v * 10 ** rng.uniform(-1, 1)

    model = GoelOkumotoModel(near(143.32), near(0.1246))
    cost = CostParams(near(50), near(60), near(700), near(3600), rng.uniform(0.5, 1.0),
                      near(0.1), near(0.5), near(450))
    x = near(1.0)
    T = np.linspace(0, 10 / model.b, 20001)
    c, _ = release_curves_ref(T, model.a, model.b, cost.c0, cost.c1, cost.c2, cost.c3,
                              cost.alpha_exp, cost.mu_y, cost.mu_w, cost.t_w, x)
    budget = c.min() * (1 + rng.uniform(0.0, 0.3))
    tol = budget * (1 + rng.uniform(0.02, 0.3))
    r_tol = rng.uniform(0.3, 0.9)
    r_goal = r_tol + rng.uniform(0.02, 0.99 - r_tol)
    return ReleaseProblem(model, cost, FuzzyTargets(budget, tol, r_goal, r_tol, x))
