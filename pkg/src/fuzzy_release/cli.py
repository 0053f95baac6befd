"""Command line entry point: ``fit``, ``solve``, ``sweep`` and ``report``.

Exit status: 0 feasible solve (or successful fit/sweep), 3 goal-programming
compromise, 4 configuration error, 5 estimation error, 6 any other model or
solver error.
"""
import argparse
import dataclasses
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._accel import backend
from .config import dump_config, load_config
from .cost_model import cost_breakdown
from .errors import ConfigError, DomainError, EstimationError
from .solver import Status, reliability_saturation_time, solve
from .srgm import fit_detailed, fit_least_squares

EXIT_FEASIBLE = 0
EXIT_COMPROMISE = 3
EXIT_CONFIG = 4
EXIT_ESTIMATION = 5
EXIT_SOLVER = 6

CSV_HEADER = "T,cost,reliability,mu_cost,mu_reliability,min_membership"


def _fmt(v):
    return f"{v:.6g}"


# -- fit ----------------------------------------------------------------------

def run_fit(cfg):
    """Fit the model to ``cfg.failure_data``; returns ``(FitResult, derived RunConfig)``."""
    if cfg.failure_data is None:
        raise ConfigError("failure_data", "fit needs a failure_data path")
    data = cfg.dataset()
    res = fit_least_squares(data) if cfg.fit_method == "lsq" else fit_detailed(data)
    derived = dataclasses.replace(cfg, a=res.model.a, b=res.model.b,
                                  failure_data=None, observation_end=None)
    return res, derived


def format_fit(res, data_n, end):
    lines = [
        f"Goel-Okumoto fit ({res.method}) on {data_n} failures over [0, {end:g}]",
        f"  a (expected total faults)   {res.model.a:.6g}",
        f"  b (detection rate)          {res.model.b:.6g}",
        f"  log-likelihood              {res.log_likelihood:.10g}",
        f"  iterations                  {res.iterations}",
        f"  converged                   {'yes' if res.converged else 'no'}",
    ]
    if not math.isnan(res.score):
        lines.append(f"  profile score at optimum    {res.score:.3g}")
    lines += [
        "",
        "[fit]",
        f"method = {res.method}",
        f"a = {res.model.a!r}",
        f"b = {res.model.b!r}",
        f"log_likelihood = {res.log_likelihood!r}",
        f"iterations = {res.iterations}",
        f"converged = {str(res.converged).lower()}",
        "[end]",
    ]
    return "\n".join(lines) + "\n"


def _resolve(cfg):
    """Config with model parameters, fitting first when only data is given."""
    if cfg.has_model:
        return cfg, None
    res, derived = run_fit(cfg)
    return derived, res


# -- solve / report -------------------------------------------------------------

def run_solve(cfg, weights=None, alpha_target=None):
    """Max-min solve with automatic goal-programming fallback.

    Returns ``(decision, infeasibility, problem)``.
    """
    cfg, _ = _resolve(cfg)
    p = cfg.problem()
    w = cfg.weights if weights is None else weights
    target = cfg.alpha_target if alpha_target is None else alpha_target
    decision, infeasible = solve(p, w, target, cfg.grid_points)
    return decision, infeasible, p


def decision_block(decision, infeasible=None):
    """Machine-readable ``key = value`` lines; floats at full precision."""
    d = decision
    kv = [
        ("branch", d.status.value),
        ("release_time", d.release_time),
        ("satisfaction", d.satisfaction),
        ("cost", d.cost_at_t),
        ("reliability", d.reliability_at_t),
        ("mu_cost", d.mu_cost),
        ("mu_reliability", d.mu_reliability),
        ("at_boundary", str(d.at_boundary).lower()),
        ("window_lower", d.search_window[0]),
        ("window_upper", d.search_window[1]),
    ]
    if d.deviations is not None:
        kv += list(zip(("eta_cost", "rho_cost", "eta_reliability", "rho_reliability"), d.deviations))
        kv.append(("objective", d.objective))
    if infeasible is not None:
        kv += [("maximin_status", infeasible.status.value),
               ("maximin_value", infeasible.maximin_value),
               ("maximin_best_time", infeasible.best_time)]
    out = ["[decision]"]
    for k, v in kv:
        out.append(f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}")
    out.append("[end]")
    return "\n".join(out)


def parse_block(text, section="decision"):
    """Inverse of the ``[section] ... [end]`` blocks in reports."""
    out = {}
    inside = False
    for line in text.splitlines():
        line = line.strip()
        if line == f"[{section}]":
            inside = True
        elif line == "[end]":
            inside = False
        elif inside and "=" in line:
            k, v = (s.strip() for s in line.split("=", 1))
            try:
                out[k] = float(v)
            except ValueError:
                out[k] = v
    return out


def format_decision(decision, infeasible=None, p=None):
    d = decision
    lines = []
    if infeasible is not None:
        lines.append(f"Max-min problem is {infeasible.status.value.replace('_', ' ')}: "
                     f"best min-membership {infeasible.maximin_value:.4g} "
                     f"at T = {infeasible.best_time:.4f}")
        lines.append("Falling back to goal programming (compromise solution).")
        lines.append("")
    lines.append(f"Release decision: {d.status.value}")
    lines.append(f"  release time T*         {d.release_time:.4f}")
    if d.status is Status.FEASIBLE:
        lines.append(f"  satisfaction alpha*     {d.satisfaction:.4f}")
    lines.append(f"  expected cost           {d.cost_at_t:.3f}")
    lines.append(f"  reliability R(x|T*)     {d.reliability_at_t:.4f}")
    lines.append(f"  mu_cost (unclamped)     {d.mu_cost:.4f}")
    lines.append(f"  mu_reliability          {d.mu_reliability:.4f}")
    if d.deviations is not None:
        eta1, rho1, eta2, rho2 = d.deviations
        lines.append(f"  deviations eta/rho cost {eta1:.4f} / {rho1:.4f}")
        lines.append(f"  deviations eta/rho rel. {eta2:.4f} / {rho2:.4f}")
        if p is not None and d.cost_at_t > p.targets.cost_tolerance:
            lines.append(f"  cost exceeds tolerance by {d.cost_at_t - p.targets.cost_tolerance:.2f}")
    if d.at_boundary:
        lines.append(f"  WARNING: optimum on the search-window boundary {d.search_window}")
    lines.append("")
    lines.append(decision_block(d, infeasible))
    return "\n".join(lines) + "\n"


def format_report(cfg, decision, infeasible, p, fit_result=None):
    """Longer report: inputs, cost breakdown and feasible window."""
    m, c, t = p.model, p.cost, p.targets
    lines = ["Fuzzy release-time report", ""]
    if fit_result is not None:
        lines.append(f"Model fitted from {cfg.failure_data} ({fit_result.method})")
    lines += [
        f"Model        a = {m.a:g}, b = {m.b:g}",
        f"Costs        c0 = {c.c0:g}, c1 = {c.c1:g}, c2 = {c.c2:g}, c3 = {c.c3:g}, "
        f"alpha = {c.alpha_exp:g}",
        f"Removal      mu_y = {c.mu_y:g}, mu_w = {c.mu_w:g}, warranty t_w = {c.t_w:g}",
        f"Cost goal    budget {t.budget:g}, tolerance {t.cost_tolerance:g}",
        f"Reliability  goal {t.reliability_goal:g}, tolerance {t.reliability_tolerance:g}, "
        f"mission x = {t.mission_time:g}",
        f"Window       [{p.search_window[0]:g}, {p.search_window[1]:g}], "
        f"{cfg.grid_points} grid points, backend {backend()}",
        "",
    ]
    T = np.linspace(*p.search_window, cfg.grid_points)
    cost, rel, u1, u2 = p.curves(T)
    ok = np.minimum(u1, u2) > 0
    if ok.any():
        lines.append(f"Both goals partially met for T in [{T[ok][0]:.3f}, {T[ok][-1]:.3f}] "
                     "(grid resolution)")
    else:
        lines.append("No release time meets both goals to a positive degree.")
    i = int(np.argmin(cost))
    lines.append(f"Cheapest release in window: T = {T[i]:.3f}, cost {cost[i]:.3f}")
    lines.append("")
    lines.append(format_decision(decision, infeasible, p).rstrip("\n"))
    lines.append("")
    lines.append("Cost breakdown at T*:")
    for k, v in cost_breakdown(m, c, decision.release_time).items():
        lines.append(f"  {k:<16} {float(v):.3f}")
    return "\n".join(lines) + "\n"


# -- sweep ----------------------------------------------------------------------

def sweep_window(cfg, model):
    """Configured window, else ``[0.01, 5 * T_sat]`` with T_sat the reliability saturation time."""
    if cfg.window_lower is not None or cfg.window_upper is not None:
        return cfg.window(model)
    t_sat = reliability_saturation_time(model, cfg.targets())
    if t_sat <= 0.01:
        t_sat = 10.0 / model.b / 5.0
    return 0.01, 5.0 * t_sat


def sweep_grid(lo, hi, step):
    if not step > 0:
        raise DomainError(f"sweep step must be > 0, got {step!r}")
    if step > hi - lo:
        raise DomainError(f"sweep step {step:g} exceeds window [{lo:g}, {hi:g}]")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def run_sweep(cfg, step=None, unclamped=False, window=None):
    """CSV text, one row per grid release time."""
    cfg, _ = _resolve(cfg)
    model = cfg.model()
    lo, hi = window if window is not None else sweep_window(cfg, model)
    T = sweep_grid(lo, hi, cfg.sweep_step if step is None else step)
    p = cfg.problem(model).with_window(lo, hi)
    cost, rel, u1, u2 = p.curves(T)
    if not unclamped:
        u1, u2 = np.clip(u1, 0, 1), np.clip(u2, 0, 1)
    both = np.minimum(u1, u2)
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in zip(T, cost, rel, u1, u2, both):
        buf.write(",".join(_fmt(float(v)) for v in row) + "\n")
    return buf.getvalue()


# -- entry point ----------------------------------------------------------------------

def _weights(text):
    try:
        w = tuple(float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected w1,w2, got {text!r}") from None
    if len(w) != 2:
        raise argparse.ArgumentTypeError(f"expected two weights, got {text!r}")
    return w


def build_parser():
    ap = argparse.ArgumentParser(prog="fuzzy-release",
                                 description="Optimal software release time under fuzzy cost "
                                             "and reliability goals.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, type=Path, help="run configuration file")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    solving = argparse.ArgumentParser(add_help=False)
    solving.add_argument("--weights", type=_weights, help="goal-programming weights w1,w2")
    solving.add_argument("--alpha-target", type=float, help="goal-programming target level")

    f = sub.add_parser("fit", parents=[common], help="estimate a, b from failure data")
    f.add_argument("--method", choices=("mle", "lsq"), help="override fit_method")
    sub.add_parser("solve", parents=[common, solving], help="max-min solve with GP fallback")
    sub.add_parser("report", parents=[common, solving], help="solve and print a full report")
    s = sub.add_parser("sweep", parents=[common], help="CSV of cost/reliability/memberships over T")
    s.add_argument("--grid", type=float, help="step between release times")
    s.add_argument("--unclamped", action="store_true",
                   help="emit linearly extended memberships instead of [0, 1] values")
    return ap


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "fit":
            if args.method:
                cfg = dataclasses.replace(cfg, fit_method=args.method)
            res, derived = run_fit(cfg)
            data = cfg.dataset()
            text = format_fit(res, data.n, data.observation_end)
            if args.out is not None:
                # the derived config can be fed straight back to solve/sweep
                Path(args.out).write_text(dump_config(derived, header=[
                    f"derived from {cfg.source} by `fuzzy-release fit` ({res.method})",
                    f"log_likelihood = {res.log_likelihood!r}",
                ]), encoding="utf-8")
            sys.stdout.write(text)
            return EXIT_FEASIBLE
        if args.command == "sweep":
            _emit(run_sweep(cfg, step=args.grid, unclamped=args.unclamped), args.out or cfg.csv_out)
            return EXIT_FEASIBLE
        resolved, fit_res = _resolve(cfg)
        decision, infeasible, p = run_solve(resolved, args.weights, args.alpha_target)
        if args.command == "solve":
            text = format_decision(decision, infeasible, p)
        else:
            text = format_report(cfg, decision, infeasible, p, fit_res)
        _emit(text, args.out or cfg.report_out)
        return EXIT_FEASIBLE if decision.status is Status.FEASIBLE else EXIT_COMPROMISE
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EstimationError as exc:
        msg = f"estimation error: {exc}"
        if exc.last_iterate is not None:
            msg += f" (last iterate a={exc.last_iterate[0]:.6g}, b={exc.last_iterate[1]:.6g})"
        print(msg, file=sys.stderr)
        return EXIT_ESTIMATION
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
