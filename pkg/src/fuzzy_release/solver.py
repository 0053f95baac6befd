"""Max-min release decision with a goal-programming fallback.

The fuzzy problem "minimise cost subject to reliability roughly above R0" is
restated as two fuzzy goals, cost within budget and reliability above goal.
``solve_maximin`` maximises the smaller of the two membership degrees over
the release time; when no release time gives both goals a positive degree the
instance is infeasible and ``solve_goal_program`` minimises the weighted
under-achievement instead.
"""
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .cost_model import CostParams, total_cost
from .errors import DomainError
from .fuzzy_core import FuzzyTargets, intersect, membership
from .search import scan_then_refine
from .srgm import GoelOkumotoModel, conditional_reliability

GRID_POINTS = 2001
REFINE_RTOL = 1e-8
INFEASIBLE_TOL = 1e-9


class Status(str, Enum):
    FEASIBLE = "feasible"
    GOAL_COMPROMISE = "goal_compromise"
    INFEASIBLE = "infeasible"
    INFEASIBLE_BOUNDARY = "infeasible_boundary"


@dataclass(frozen=True)
class ReleaseProblem:
    model: GoelOkumotoModel
    cost: CostParams
    targets: FuzzyTargets
    search_window: tuple = None

    def __post_init__(self):
        window = self.search_window
        if window is None:
            window = (0.0, 10.0 / self.model.b)
        lo, hi = map(float, window)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or not lo < hi:
            raise DomainError(f"search window must satisfy 0 <= lo < hi, got {window!r}")
        object.__setattr__(self, "search_window", (lo, hi))

    def _kernel_args(self):
        m, c, t = self.model, self.cost, self.targets
        return (m.a, m.b, c.c0, c.c1, c.c2, c.c3, c.alpha_exp, c.mu_y, c.mu_w, c.t_w,
                t.mission_time, t.budget, t.cost_tolerance,
                t.reliability_goal, t.reliability_tolerance)

    def curves(self, T):
        """``(cost, reliability, mu_cost, mu_reliability)`` on a grid; memberships unclamped."""
        return _kernels.release_curves(np.asarray(T, dtype=np.float64), *self._kernel_args())

    def with_window(self, lo, hi):
        return ReleaseProblem(self.model, self.cost, self.targets, (lo, hi))


@dataclass(frozen=True)
class ReleaseDecision:
    release_time: float
    satisfaction: float
    cost_at_t: float
    reliability_at_t: float
    status: Status
    mu_cost: float
    mu_reliability: float
    deviations: tuple = None  # (eta1, rho1, eta2, rho2), goal_compromise only
    objective: float = None
    at_boundary: bool = False
    search_window: tuple = field(default=None, repr=False)


@dataclass(frozen=True)
class InfeasibilityReport:
    """No release time satisfies both goals to a positive degree."""

    status: Status
    best_time: float
    maximin_value: float
    mu_cost: float
    mu_reliability: float
    cost_at_t: float
    reliability_at_t: float


def membership_pair(p, T, clamp=True):
    """Cost and reliability degrees at release time ``T``."""
    lo, hi = p.search_window
    if not lo <= T <= hi:
        raise DomainError(f"T={T!r} outside search window {p.search_window}")
    cost = total_cost(p.model, p.cost, T)
    rel = conditional_reliability(p.model, T, p.targets.mission_time)
    return (membership(p.targets.cost_ramp, cost, clamp),
            membership(p.targets.reliability_ramp, rel, clamp))


def _point(p, fn):
    def f(t):
        out = p.curves(np.array([t]))
        return float(fn(*(arr[0] for arr in out)))
    return f


def _grid(p, fn):
    return lambda T: fn(*p.curves(T))


def _at_boundary(p, t):
    lo, hi = p.search_window
    eps = 1e-6 * (hi - lo)
    return t - lo <= eps or hi - t <= eps


def _unclamped_min(c, r, u1, u2):
    return np.minimum(u1, u2)


def _clamped_min(c, r, u1, u2):
    return np.clip(np.minimum(u1, u2), 0.0, 1.0)


def solve_maximin(p, grid_points=GRID_POINTS, rtol=REFINE_RTOL):
    """Release time maximising min(mu_cost, mu_reliability).

    Returns a feasible ``ReleaseDecision`` or an ``InfeasibilityReport`` when
    the best unclamped max-min value is not positive. Among equally good
    release times the earliest is returned.
    """
    lo, hi = p.search_window
    probe = scan_then_refine(_grid(p, _unclamped_min), _point(p, _unclamped_min),
                             lo, hi, grid_points, rtol)
    z = probe.value
    if z <= INFEASIBLE_TOL:
        status = Status.INFEASIBLE if z < -INFEASIBLE_TOL else Status.INFEASIBLE_BOUNDARY
        c, r, u1, u2 = (float(v[0]) for v in p.curves(np.array([probe.x])))
        return InfeasibilityReport(status, probe.x, z, u1, u2, c, r)

    best = scan_then_refine(_grid(p, _clamped_min), _point(p, _clamped_min),
                            lo, hi, grid_points, rtol)
    t = best.x
    u1, u2 = membership_pair(p, t, clamp=False)
    mu1, mu2 = min(max(u1, 0.0), 1.0), min(max(u2, 0.0), 1.0)
    return ReleaseDecision(
        release_time=t,
        satisfaction=intersect([mu1, mu2]),
        cost_at_t=float(total_cost(p.model, p.cost, t)),
        reliability_at_t=float(conditional_reliability(p.model, t, p.targets.mission_time)),
        status=Status.FEASIBLE,
        mu_cost=u1,
        mu_reliability=u2,
        at_boundary=_at_boundary(p, t),
        search_window=p.search_window,
    )


def goal_deviations(u1, u2, alpha_target=0.0):
    """``(eta1, rho1, eta2, rho2)`` with ``mu_i + eta_i - rho_i = alpha_target``."""
    out = []
    for u in (u1, u2):
        gap = alpha_target - u
        out += [max(gap, 0.0), max(-gap, 0.0)]
    return tuple(out)


def solve_goal_program(p, weights=(1.0, 1.0), alpha_target=0.0,
                       grid_points=GRID_POINTS, rtol=REFINE_RTOL):
    """Release time minimising the weighted under-achievement of both goals.

    Minimises ``w1*eta1 + w2*eta2`` subject to
    ``mu_i(T) + eta_i - rho_i = alpha_target``, ``eta_i, rho_i >= 0`` with
    unclamped memberships. For fixed ``T`` the optimal deviations are the
    positive and negative parts of ``alpha_target - mu_i(T)``.
    """
    w1, w2 = map(float, weights)
    if w1 < 0 or w2 < 0 or not (math.isfinite(w1) and math.isfinite(w2)):
        raise DomainError(f"weights must be finite and >= 0, got {weights!r}")
    target = float(alpha_target)

    def neg_objective(c, r, u1, u2):
        return -(w1 * np.maximum(target - u1, 0.0) + w2 * np.maximum(target - u2, 0.0))

    lo, hi = p.search_window
    best = scan_then_refine(_grid(p, neg_objective), _point(p, neg_objective),
                            lo, hi, grid_points, rtol)
    t = best.x
    u1, u2 = membership_pair(p, t, clamp=False)
    dev = goal_deviations(u1, u2, target)
    mu1, mu2 = min(max(u1, 0.0), 1.0), min(max(u2, 0.0), 1.0)
    return ReleaseDecision(
        release_time=t,
        satisfaction=intersect([mu1, mu2]),
        cost_at_t=float(total_cost(p.model, p.cost, t)),
        reliability_at_t=float(conditional_reliability(p.model, t, p.targets.mission_time)),
        status=Status.GOAL_COMPROMISE,
        mu_cost=u1,
        mu_reliability=u2,
        deviations=dev,
        objective=w1 * dev[0] + w2 * dev[2],
        at_boundary=_at_boundary(p, t),
        search_window=p.search_window,
    )


def solve(p, weights=(1.0, 1.0), alpha_target=0.0, grid_points=GRID_POINTS):
    """Max-min first, goal program when that is infeasible.

    Returns ``(decision, infeasibility_report_or_None)``.
    """
    res = solve_maximin(p, grid_points)
    if isinstance(res, ReleaseDecision):
        return res, None
    return solve_goal_program(p, weights, alpha_target, grid_points), res


def reliability_saturation_time(model, targets):
    """Earliest T with R(x|T) >= reliability_goal (0 if already met at T=0)."""
    x_faults = model.a * -math.expm1(-model.b * targets.mission_time)
    allowed = -math.log(targets.reliability_goal)
    return max(0.0, math.log(x_faults / allowed) / model.b)
