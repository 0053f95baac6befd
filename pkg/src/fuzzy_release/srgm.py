"""Goel-Okumoto NHPP reliability growth model and its estimation."""
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import DomainError, EstimationError
from .search import bisect_sign, golden_section_max

MAX_ITER = 200
RTOL = 1e-10


@dataclass(frozen=True)
class GoelOkumotoModel:
    """Expected fault content ``a`` and per-fault detection rate ``b``."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")

    def mean_value(self, t):
        return mean_value(self, t)

    def intensity(self, t):
        return intensity(self, t)

    def reliability(self, T, x):
        return conditional_reliability(self, T, x)


@dataclass(frozen=True)
class FailureDataset:
    """Cumulative failure epochs observed over ``[0, observation_end]``."""

    failure_times: np.ndarray = field(repr=False)
    observation_end: float

    def __post_init__(self):
        t = np.array(self.failure_times, dtype=np.float64).ravel()
        t.setflags(write=False)
        object.__setattr__(self, "failure_times", t)
        end = float(self.observation_end)
        object.__setattr__(self, "observation_end", end)
        if not math.isfinite(end) or end < 0:
            raise DomainError(f"observation_end must be finite and >= 0, got {end!r}")
        if t.size:
            if not np.all(np.isfinite(t)) or t[0] < 0:
                raise DomainError("failure times must be finite and >= 0")
            if np.any(np.diff(t) <= 0):
                raise DomainError("failure times must be strictly increasing")
            if t[-1] > end:
                raise DomainError("failure time after observation_end")

    @property
    def n(self):
        return int(self.failure_times.size)

    @classmethod
    def from_file(cls, path, observation_end=None):
        """Read one cumulative failure time per line.

        Blank lines and lines starting with ``#`` are skipped. A comment of the
        form ``# observation_end = 250`` sets the end of observation; otherwise
        the last failure time is used.
        """
        times = []
        end = None
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    k, v = (s.strip() for s in body.split("=", 1))
                    if k == "observation_end":
                        end = float(v)
                continue
            try:
                times.append(float(line))
            except ValueError:
                raise DomainError(f"{path}:{lineno}: not a number: {line!r}") from None
        if observation_end is not None:
            end = observation_end
        if end is None:
            end = times[-1] if times else 0.0
        return cls(np.asarray(times), end)


def _check_time(t, name="t"):
    arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be finite and >= 0, got {t!r}")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def mean_value(model, t):
    """Expected cumulative faults by test time ``t``: a(1 - exp(-b t))."""
    t = _check_time(t)
    return _out(-model.a * np.expm1(-model.b * t))


def intensity(model, t):
    t = _check_time(t)
    return _out(model.a * model.b * np.exp(-model.b * t))


def conditional_reliability(model, T, x):
    """Probability of no failure in ``(T, T + x]`` after release at ``T``."""
    T = _check_time(T, "T")
    x = _check_time(x, "x")
    # m(T+x) - m(T) without cancellation
    expected = model.a * np.exp(-model.b * T) * -np.expm1(-model.b * x)
    return _out(np.exp(-expected))


def log_likelihood(model, data):
    """NHPP log-likelihood of ``data``: sum log intensity(t_i) - m(end)."""
    if data.n == 0:
        raise EstimationError("empty failure dataset")
    return float(_kernels.nhpp_loglik(data.failure_times, data.observation_end, model.a, model.b))


# -- estimation -------------------------------------------------------------

def profile_a(b, data):
    """Maximiser of the likelihood in ``a`` for fixed ``b``."""
    return data.n / -math.expm1(-b * data.observation_end)


def profile_log_likelihood(b, data):
    n, end = data.n, data.observation_end
    s = float(data.failure_times.sum())
    return n * math.log(n) - n * math.log(-math.expm1(-b * end)) + n * math.log(b) - b * s - n


def profile_score(b, data):
    """Derivative of the profile log-likelihood in ``b``."""
    n, end = data.n, data.observation_end
    return n / b - float(data.failure_times.sum()) - n * end / math.expm1(b * end)


def profile_score_slope(b, data):
    n, end = data.n, data.observation_end
    e = math.expm1(b * end)
    return -n / b ** 2 + n * end ** 2 * (e + 1.0) / e ** 2


@dataclass(frozen=True)
class FitResult:
    model: GoelOkumotoModel
    log_likelihood: float
    iterations: int
    converged: bool
    method: str
    score: float = float("nan")


def fit_detailed(data, init=None):
    """Maximum likelihood fit with convergence diagnostics.

    The likelihood is profiled over ``a`` and the remaining one-dimensional
    problem in ``b`` is bracketed by golden section on ``log b`` and finished
    by bisection on the sign of the profile score.
    """
    if data.n < 2:
        raise EstimationError(f"need at least 2 failures, got {data.n}")
    n, end = data.n, data.observation_end
    total = float(data.failure_times.sum())
    if total / n >= end / 2:
        # profile score stays positive as b -> 0: the supremum is the
        # homogeneous-Poisson limit, reported as the last iterate
        b_edge = 1e-8 / end
        raise EstimationError(
            "no finite MLE: failures are not concentrated early enough "
            f"(mean epoch {total / n:.6g} >= observation_end/2 = {end / 2:.6g})",
            last_iterate=(profile_a(b_edge, data), b_edge))

    # score(b) < n/b - sum(t) so it is negative at n/sum(t)
    b_hi = n / total
    b_lo = b_hi * 1e-12
    while profile_score(b_lo, data) <= 0:
        b_lo *= 1e-3
        if b_lo < 1e-300:
            raise EstimationError("could not bracket the detection rate")

    def prof(logb):
        return profile_log_likelihood(math.exp(logb), data)

    logb, _, it_golden = golden_section_max(prof, math.log(b_lo), math.log(b_hi),
                                            rtol=0.0, atol=1e-3, max_iter=MAX_ITER)
    lo, hi = math.exp(logb - 2e-3), math.exp(logb + 2e-3)
    if not (profile_score(lo, data) > 0 >= profile_score(hi, data)):
        lo, hi = b_lo, b_hi
    b, it_bisect, converged = bisect_sign(lambda v: profile_score(v, data), lo, hi,
                                          rtol=RTOL, max_iter=MAX_ITER)
    iterations = it_golden + it_bisect
    if converged:
        # one Newton step removes the remaining bisection error
        b_new = b - profile_score(b, data) / profile_score_slope(b, data)
        if lo <= b_new <= hi and abs(profile_score(b_new, data)) <= abs(profile_score(b, data)):
            b = b_new
    a = profile_a(b, data)
    if not converged:
        raise EstimationError("bisection did not converge within the iteration cap",
                              last_iterate=(a, b),
                              diagnostics={"iterations": iterations})
    model = GoelOkumotoModel(a, b)
    ll = log_likelihood(model, data)
    if init is not None:
        start = init if isinstance(init, GoelOkumotoModel) else GoelOkumotoModel(*init)
        if log_likelihood(start, data) > ll:
            raise EstimationError("fit ended below the starting likelihood",
                                  last_iterate=(a, b))
    return FitResult(model, ll, iterations, True, "mle", profile_score(b, data))


def fit(data, init=None):
    """Maximum likelihood Goel-Okumoto parameters for ``data``."""
    return fit_detailed(data, init).model


def fit_least_squares(data, init=None):
    """Least-squares fit of m(t_i) to the cumulative counts 1..n.

    Offered as an alternative to the likelihood fit; it has no likelihood
    optimality guarantee.
    """
    from scipy.optimize import least_squares

    if data.n < 2:
        raise EstimationError(f"need at least 2 failures, got {data.n}")
    t = data.failure_times
    counts = np.arange(1, data.n + 1, dtype=np.float64)
    if init is None:
        init = (1.2 * data.n, 1.0 / max(float(t.mean()), 1e-12))
    a0, b0 = (init.a, init.b) if isinstance(init, GoelOkumotoModel) else init

    def resid(p):
        a, logb = p
        return -a * np.expm1(-np.exp(logb) * t) - counts

    res = least_squares(resid, x0=[a0, math.log(b0)], bounds=([0, -np.inf], [np.inf, np.inf]),
                        xtol=1e-12, ftol=1e-12, gtol=1e-12, max_nfev=MAX_ITER * 10)
    a, b = float(res.x[0]), math.exp(float(res.x[1]))
    if not res.success or a <= 0:
        raise EstimationError(f"least squares failed: {res.message}", last_iterate=(a, b))
    model = GoelOkumotoModel(a, b)
    return FitResult(model, log_likelihood(model, data), int(res.nfev), True, "lsq")
