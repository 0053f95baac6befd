"""Linear ramp memberships for fuzzy inequalities and the max-min operators."""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError


class Direction(str, Enum):
    DECREASING = "decreasing"  # fuzzy <=, e.g. cost within budget
    INCREASING = "increasing"  # fuzzy >=, e.g. reliability above a goal


@dataclass(frozen=True)
class RampMembership:
    """Degree 1 at ``full_value``, 0 at ``zero_value``, linear in between."""

    full_value: float
    zero_value: float
    direction: Direction

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        if not (math.isfinite(self.full_value) and math.isfinite(self.zero_value)):
            raise DomainError("ramp end points must be finite")
        if self.full_value == self.zero_value:
            raise DomainError("degenerate ramp: full_value == zero_value")
        if self.direction is Direction.DECREASING and not self.full_value < self.zero_value:
            raise DomainError("decreasing ramp needs full_value < zero_value")
        if self.direction is Direction.INCREASING and not self.zero_value < self.full_value:
            raise DomainError("increasing ramp needs zero_value < full_value")

    @classmethod
    def at_most(cls, target, tolerance):
        """Fuzzy ``v <= target`` tolerated up to ``tolerance``."""
        return cls(target, tolerance, Direction.DECREASING)

    @classmethod
    def at_least(cls, target, tolerance):
        """Fuzzy ``v >= target`` tolerated down to ``tolerance``."""
        return cls(target, tolerance, Direction.INCREASING)

    def __call__(self, v, clamp=True):
        return membership(self, v, clamp)


def membership(m, v, clamp=True):
    """Degree of ``v``; with ``clamp=False`` the linear piece is extended."""
    arr = np.asarray(v, dtype=np.float64)
    deg = (arr - m.zero_value) / (m.full_value - m.zero_value)
    if clamp:
        deg = np.clip(deg, 0.0, 1.0)
    return float(deg) if deg.ndim == 0 else deg


def inverse(m, level):
    """Value at which the unclamped ramp equals ``level``."""
    return m.zero_value + level * (m.full_value - m.zero_value)


def alpha_cut(m, level, domain):
    """Sub-interval of ``domain`` where the clamped degree is >= ``level``.

    Returns ``(lo, hi)`` or ``None`` when the cut is empty.
    """
    if not 0 < level <= 1:
        raise DomainError(f"level must lie in (0, 1], got {level!r}")
    lo, hi = map(float, domain)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"bad domain {domain!r}")
    edge = inverse(m, level)
    if m.direction is Direction.DECREASING:
        hi = min(hi, edge)
    else:
        lo = max(lo, edge)
    return (lo, hi) if lo <= hi else None


def intersect(degrees):
    """Standard (min) intersection."""
    degrees = list(degrees)
    if not degrees:
        raise DomainError("intersect of no degrees")
    return min(degrees)


def unite(degrees):
    """Standard (max) union."""
    degrees = list(degrees)
    if not degrees:
        raise DomainError("unite of no degrees")
    return max(degrees)


@dataclass(frozen=True)
class FuzzyTargets:
    """Budget and reliability aspirations with their tolerances."""

    budget: float
    cost_tolerance: float
    reliability_goal: float
    reliability_tolerance: float
    mission_time: float

    def __post_init__(self):
        if not self.budget < self.cost_tolerance:
            raise DomainError("cost_tolerance must exceed budget")
        for name in ("reliability_goal", "reliability_tolerance"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise DomainError(f"{name} must lie in (0, 1), got {v!r}")
        if not self.reliability_tolerance < self.reliability_goal:
            raise DomainError("reliability_tolerance must be below reliability_goal")
        if not (self.mission_time > 0 and math.isfinite(self.mission_time)):
            raise DomainError("mission_time must be finite and > 0")

    @property
    def cost_ramp(self):
        return RampMembership.at_most(self.budget, self.cost_tolerance)

    @property
    def reliability_ramp(self):
        return RampMembership.at_least(self.reliability_goal, self.reliability_tolerance)
