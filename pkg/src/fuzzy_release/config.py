"""Flat ``key = value`` run configuration.

One key per line, ``#`` starts a comment. Model parameters come either as
``a``/``b`` or as a ``failure_data`` path (resolved against the config
file's directory). Removal-time means come either as ``mu_y``/``mu_w`` or as
truncated-exponential ``removal_rate_*``/``removal_cutoff_*`` pairs.
"""
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .cost_model import CostParams, TruncatedExponential, expected_removal_time
from .errors import ConfigError
from .fuzzy_core import FuzzyTargets
from .solver import GRID_POINTS, ReleaseProblem
from .srgm import FailureDataset, GoelOkumotoModel


@dataclass(frozen=True)
class RunConfig:
    c0: float
    c1: float
    c2: float
    c3: float
    alpha_exp: float
    mu_y: float
    mu_w: float
    t_w: float
    budget: float
    cost_tolerance: float
    reliability_goal: float
    reliability_tolerance: float
    mission_time: float
    a: float = None
    b: float = None
    failure_data: Path = None
    observation_end: float = None
    fit_method: str = "mle"
    window_lower: float = None
    window_upper: float = None
    grid_points: int = GRID_POINTS
    weights: tuple = (1.0, 1.0)
    alpha_target: float = 0.0
    sweep_step: float = 0.5
    csv_out: Path = None
    report_out: Path = None
    source: Path = None

    @property
    def has_model(self):
        return self.a is not None

    def model(self):
        if not self.has_model:
            raise ConfigError("a", "model parameters not set; run `fit` first or use fit_model()")
        return GoelOkumotoModel(self.a, self.b)

    def cost_params(self):
        return CostParams(self.c0, self.c1, self.c2, self.c3, self.alpha_exp,
                          self.mu_y, self.mu_w, self.t_w)

    def targets(self):
        return FuzzyTargets(self.budget, self.cost_tolerance, self.reliability_goal,
                            self.reliability_tolerance, self.mission_time)

    def dataset(self):
        return FailureDataset.from_file(self.failure_data, self.observation_end)

    def window(self, model=None):
        model = model or self.model()
        lo = 0.0 if self.window_lower is None else self.window_lower
        hi = 10.0 / model.b if self.window_upper is None else self.window_upper
        return lo, hi

    def problem(self, model=None):
        model = model or self.model()
        return ReleaseProblem(model, self.cost_params(), self.targets(), self.window(model))


_FLOAT_KEYS = {
    "a", "b", "c0", "c1", "c2", "c3", "alpha_exp", "mu_y", "mu_w", "t_w",
    "removal_rate_y", "removal_cutoff_y", "removal_rate_w", "removal_cutoff_w",
    "budget", "cost_tolerance", "reliability_goal", "reliability_tolerance", "mission_time",
    "observation_end", "window_lower", "window_upper", "alpha_target", "sweep_step",
}
_PATH_KEYS = {"failure_data", "csv_out", "report_out"}
_OTHER_KEYS = {"grid_points", "weights", "fit_method"}
KNOWN_KEYS = _FLOAT_KEYS | _PATH_KEYS | _OTHER_KEYS

_REQUIRED = ("c0", "c1", "c2", "c3", "alpha_exp", "t_w", "budget", "cost_tolerance",
             "reliability_goal", "reliability_tolerance", "mission_time")


def parse_pairs(text):
    """``{key: (raw_value, line_number)}`` from config text."""
    pairs = {}
    problems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(("<syntax>", lineno, f"expected 'key = value', got {raw.strip()!r}"))
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key in pairs:
            problems.append((key, lineno, f"duplicate key (first on line {pairs[key][1]})"))
            continue
        pairs[key] = (value, lineno)
    if problems:
        raise ConfigError(None, problems=problems)
    return pairs


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc}") from None
    return config_from_text(text, base_dir=path.parent, source=path)


def config_from_text(text, base_dir=Path("."), source=None):
    pairs = parse_pairs(text)
    problems = []
    vals = {}

    def line_of(key):
        return pairs[key][1] if key in pairs else None

    def bad(key, msg):
        problems.append((key, line_of(key), msg))

    for key, (raw, lineno) in pairs.items():
        if key not in KNOWN_KEYS:
            bad(key, "unknown key")
        elif key in _FLOAT_KEYS:
            try:
                v = float(raw)
            except ValueError:
                bad(key, f"not a number: {raw!r}")
                continue
            if not math.isfinite(v):
                bad(key, f"not finite: {raw!r}")
                continue
            vals[key] = v
        elif key in _PATH_KEYS:
            vals[key] = (Path(base_dir) / raw) if not Path(raw).is_absolute() else Path(raw)
        elif key == "grid_points":
            try:
                vals[key] = int(raw)
            except ValueError:
                bad(key, f"not an integer: {raw!r}")
        elif key == "weights":
            try:
                w = tuple(float(s) for s in raw.split(","))
            except ValueError:
                bad(key, f"expected 'w1,w2', got {raw!r}")
                continue
            vals[key] = w
        elif key == "fit_method":
            vals[key] = raw

    for key in _REQUIRED:
        if key not in pairs:
            problems.append((key, None, "missing"))

    # model: exactly one of (a, b) or failure_data
    has_ab = "a" in pairs or "b" in pairs
    if has_ab and "failure_data" in pairs:
        bad("failure_data", "give either a/b or failure_data, not both")
    elif has_ab:
        for key in ("a", "b"):
            if key not in pairs:
                problems.append((key, None, "missing (a and b go together)"))
            elif key in vals and vals[key] <= 0:
                bad(key, "must be > 0")
    elif "failure_data" not in pairs:
        problems.append(("a", None, "missing: give a and b, or failure_data"))
    elif not vals["failure_data"].is_file():
        bad("failure_data", f"file not found: {vals['failure_data']}")

    # removal-time means
    for suffix in ("y", "w"):
        mu_key, rate_key, cut_key = f"mu_{suffix}", f"removal_rate_{suffix}", f"removal_cutoff_{suffix}"
        dist_keys = [k for k in (rate_key, cut_key) if k in pairs]
        if mu_key in pairs and dist_keys:
            bad(mu_key, f"give either {mu_key} or {rate_key}/{cut_key}, not both")
        elif mu_key in pairs:
            if mu_key in vals and vals[mu_key] < 0:
                bad(mu_key, "must be >= 0")
        elif len(dist_keys) == 2:
            if rate_key in vals and cut_key in vals:
                if vals[rate_key] <= 0:
                    bad(rate_key, "must be > 0")
                elif vals[cut_key] <= 0:
                    bad(cut_key, "must be > 0")
                else:
                    vals[mu_key] = expected_removal_time(
                        TruncatedExponential(vals[rate_key], vals[cut_key]))
        elif dist_keys:
            missing = cut_key if rate_key in pairs else rate_key
            problems.append((missing, None, f"missing (needed with {dist_keys[0]})"))
        else:
            problems.append((mu_key, None, f"missing: give {mu_key} or {rate_key}/{cut_key}"))

    for key in ("c0", "c1", "c2", "c3", "t_w"):
        if key in vals and vals[key] < 0:
            bad(key, "must be >= 0")
    if "t_w" in vals and vals["t_w"] <= 0:
        bad("t_w", "must be > 0")
    if "alpha_exp" in vals and not 0 < vals["alpha_exp"] <= 1:
        bad("alpha_exp", "must lie in (0, 1]")
    if "budget" in vals and "cost_tolerance" in vals and not vals["cost_tolerance"] > vals["budget"]:
        bad("cost_tolerance", "must exceed budget")
    for key in ("reliability_goal", "reliability_tolerance"):
        if key in vals and not 0 < vals[key] < 1:
            bad(key, "must lie in (0, 1)")
    if ("reliability_goal" in vals and "reliability_tolerance" in vals
            and not vals["reliability_tolerance"] < vals["reliability_goal"]):
        bad("reliability_tolerance", "must be below reliability_goal")
    if "mission_time" in vals and vals["mission_time"] <= 0:
        bad("mission_time", "must be > 0")
    if "window_lower" in vals and vals["window_lower"] < 0:
        bad("window_lower", "must be >= 0")
    if ("window_lower" in vals and "window_upper" in vals
            and not vals["window_upper"] > vals["window_lower"]):
        bad("window_upper", "must exceed window_lower")
    if "window_upper" in vals and vals["window_upper"] <= 0:
        bad("window_upper", "must be > 0")
    if "grid_points" in vals and vals["grid_points"] < 3:
        bad("grid_points", "must be >= 3")
    if "weights" in vals:
        w = vals["weights"]
        if len(w) != 2 or any(x < 0 or not math.isfinite(x) for x in w):
            bad("weights", "expected two finite non-negative numbers")
    if "sweep_step" in vals and vals["sweep_step"] <= 0:
        bad("sweep_step", "must be > 0")
    if "fit_method" in vals and vals["fit_method"] not in ("mle", "lsq"):
        bad("fit_method", "must be 'mle' or 'lsq'")

    if problems:
        problems.sort(key=lambda p: (p[1] is None, p[1] or 0))
        raise ConfigError(None, problems=problems)

    names = {f.name for f in fields(RunConfig)}
    return RunConfig(source=source, **{k: v for k, v in vals.items() if k in names})


_WRITE_ORDER = (
    "a", "b", "failure_data", "observation_end", "fit_method",
    "c0", "c1", "c2", "c3", "alpha_exp", "mu_y", "mu_w", "t_w",
    "budget", "cost_tolerance", "reliability_goal", "reliability_tolerance", "mission_time",
    "window_lower", "window_upper", "grid_points", "weights", "alpha_target", "sweep_step",
    "csv_out", "report_out",
)


def dump_config(cfg, header=None):
    """Config text that ``config_from_text`` reads back to an equal ``RunConfig``."""
    lines = [f"# {h}" for h in (header or [])]
    for key in _WRITE_ORDER:
        v = getattr(cfg, key)
        if v is None:
            continue
        if isinstance(v, float):
            v = repr(v)
        elif isinstance(v, tuple):
            v = ",".join(repr(float(x)) for x in v)
        elif isinstance(v, Path):
            v = str(v.resolve())
        lines.append(f"{key} = {v}")
    return "\n".join(lines) + "\n"
