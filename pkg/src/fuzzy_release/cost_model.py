"""Expected cost of testing and warranty-period fault removal versus release time."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .srgm import _check_time, _out, mean_value


@dataclass(frozen=True)
class TruncatedExponential:
    """Exponential removal time with ``rate`` truncated to ``[0, cutoff]``."""

    rate: float
    cutoff: float

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f"rate must be finite and > 0, got {self.rate!r}")
        if not self.cutoff > 0:
            raise DomainError(f"cutoff must be > 0, got {self.cutoff!r}")

    def pdf(self, y):
        return removal_time_pdf(self, y)

    def mean(self):
        return expected_removal_time(self)


def removal_time_pdf(d, y):
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(y)):
        raise DomainError("y must be finite")
    norm = -math.expm1(-d.rate * d.cutoff)
    inside = (y >= 0) & (y <= d.cutoff)
    dens = np.where(inside, d.rate * np.exp(-d.rate * np.where(inside, y, 0.0)) / norm, 0.0)
    return _out(dens)


def expected_removal_time(d):
    lt = d.rate * d.cutoff
    if lt > 700:
        # (lt + 1) e^{-lt} underflows; the untruncated mean is exact to double precision
        return 1.0 / d.rate
    return (1.0 - (lt + 1.0) * math.exp(-lt)) / (d.rate * -math.expm1(-lt))


@dataclass(frozen=True)
class CostParams:
    """Cost constants of the release model.

    ``c3`` multiplies the expected warranty-period removal time; ``alpha_exp``
    is the exponent of the testing-effort cost ``c2 * T**alpha_exp``.
    """

    c0: float
    c1: float
    c2: float
    c3: float
    alpha_exp: float
    mu_y: float
    mu_w: float
    t_w: float

    def __post_init__(self):
        for name in ("c0", "c1", "c2", "c3", "mu_y", "mu_w", "t_w"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be finite and >= 0, got {v!r}")
        if not 0 < self.alpha_exp <= 1:
            raise DomainError(f"alpha_exp must lie in (0, 1], got {self.alpha_exp!r}")

    @classmethod
    def from_removal_distributions(cls, c0, c1, c2, c3, alpha_exp, testing, warranty, t_w):
        """Build parameters with ``mu_y``/``mu_w`` taken from truncated exponentials."""
        return cls(c0, c1, c2, c3, alpha_exp,
                   expected_removal_time(testing), expected_removal_time(warranty), t_w)


def testing_removal_cost(model, p, T):
    return _out(p.c1 * np.asarray(mean_value(model, T)) * p.mu_y)


def testing_effort_cost(p, T):
    T = _check_time(T, "T")
    return _out(p.c2 * T ** p.alpha_exp)


def warranty_cost(model, p, T):
    T = _check_time(T, "T")
    faults = model.a * np.exp(-model.b * T) * -np.expm1(-model.b * p.t_w)
    return _out(p.c3 * p.mu_w * faults)


def total_cost(model, p, T):
    """Setup cost plus testing removal, testing effort and warranty costs."""
    return _out(p.c0 + np.asarray(testing_removal_cost(model, p, T))
                + testing_effort_cost(p, T) + warranty_cost(model, p, T))


def cost_breakdown(model, p, T):
    return {
        "setup": p.c0,
        "testing_removal": testing_removal_cost(model, p, T),
        "testing_effort": testing_effort_cost(p, T),
        "warranty": warranty_cost(model, p, T),
    }
