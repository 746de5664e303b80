"""``sawlab`` command line: one subcommand per computation, JSON or CSV reports.

Exit codes: 0 success, 1 numerical failure (quadrature or Monte Carlo did
not converge), 2 invalid arguments, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

import mpmath

from . import __version__
from . import enumerate as en
from . import golden, hitting, honeycomb, pivot, series, thermo
from .errors import BudgetError, ConvergenceError, CoverageError, SawlabError, ToleranceError


@dataclass
class RunReport:
    config: dict
    version: str
    timing_ms: float
    results: dict
    golden_checks: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({"config": self.config, "version": self.version, "timing_ms": self.timing_ms,
                           "results": self.results, "golden_checks": self.golden_checks}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls(d["config"], d["version"], d["timing_ms"], d["results"], d["golden_checks"])

    def payload(self) -> dict:
        """Everything except the wall-clock time."""
        return {"config": self.config, "version": self.version, "results": self.results,
                "golden_checks": self.golden_checks}


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}", v, rows)
    else:
        rows.append((prefix, "" if value is None else (repr(value) if isinstance(value, float) else str(value))))


def to_csv(report: RunReport) -> str:
    """``key,value`` rows over the flattened results and golden checks."""
    rows: list = []
    _flatten("results", report.results, rows)
    _flatten("golden_checks", report.golden_checks, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    w.writerows(rows)
    return buf.getvalue()


def _num(v) -> Any:
    """JSON-safe number: big ints as strings, mpmath reals as 30-digit strings."""
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 30)
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    return float(v)


def _check(checks: list, name: str, computed) -> None:
    checks.append(golden.check(name, computed))


def _positive(name: str, v, allow_zero: bool = False):
    if v is None:
        return v
    if v < 0 or (v == 0 and not allow_zero):
        raise ValueError(f"{name} must be {'non-negative' if allow_zero else 'positive'}")
    return v


def _plan(args) -> en.SearchPlan:
    workers = args.threads or int(os.environ.get("SAWLAB_THREADS", "1"))
    return en.SearchPlan(worker_count=workers)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------- commands

def cmd_count(args, checks):
    _positive("--n-max", args.n_max, allow_zero=True)
    t = en.count_saws(args.n_max, plan=_plan(args))
    for n in (2, 3, 4):
        if n <= args.n_max:
            _check(checks, f"c_{n}", t[n])
    return {"c": [str(c) for c in t]}


def cmd_polygons(args, checks):
    _positive("--m-max", args.m_max)
    j = en.count_polygons(args.m_max, plan=_plan(args))
    p = en.polygon_counts(j)
    for m in (4, 6, 8):
        if m <= args.m_max:
            _check(checks, f"p_{m}", p[m])
    if args.m_max >= 8:
        _check(checks, "p_8_area3", j[(8, 3)])
        _check(checks, "p_8_area4", j[(8, 4)])
    return {"p": [str(c) for c in p], "joint": j.to_dict()}


def cmd_halfplane(args, checks):
    _positive("--n-max", args.n_max, allow_zero=True)
    table = en.count_half_plane(args.n_max, plan=_plan(args), count_origin=args.count_origin)
    return {"table": table.to_dict()}


def cmd_crossing(args, checks):
    _positive("--L", args.L)
    t = en.count_crossing(args.L, plan=_plan(args))
    total = sum(t)
    if args.L <= 4:
        _check(checks, f"crossing_L{args.L}", total)
    return {"L": args.L, "counts": [str(c) for c in t], "total": str(total)}


def cmd_interacting(args, checks):
    _positive("--n-max", args.n_max)
    tabs = en.count_interacting_pulled(args.n_max, plan=_plan(args))
    return {"N": args.n_max, "table": tabs[args.n_max].to_dict()}


def cmd_mu(args, checks):
    _positive("--n-max", args.n_max)
    t = en.count_saws(args.n_max, plan=_plan(args))
    est = series.estimate_mu(t, args.method)
    bounds = series.validate_series_bounds(t, series.MU_SQUARE)
    _check(checks, "mu_square", est.extrapolated)
    return {"c": [str(c) for c in t], "estimate": est.to_dict(), "bounds": bounds.to_dict()}


def cmd_lambda(args, checks):
    _positive("--L", args.L)
    plan = _plan(args)
    totals = {L: sum(en.count_crossing(L, plan=plan)) for L in range(1, args.L + 1)}
    est = series.estimate_lambda(totals)
    _check(checks, "lambda_crossing", est.extrapolated)
    mean = {}
    if args.x is not None:
        mean = {str(L): series.mean_crossing_length(en.count_crossing(L, plan=plan), args.x)
                for L in totals}
    return {"totals": {str(L): str(v) for L, v in totals.items()}, "estimate": est.to_dict(),
            "mean_length": mean}


def cmd_kappa(args, checks):
    _positive("--m", args.m)
    j = en.count_polygons(args.m, plan=_plan(args))
    q = thermo.parse_grid(args.q_grid)
    curve = series.free_energy_curve(j, args.m, q)
    return {"m": args.m, "q": [float(v) for v in curve.q], "kappa": [float(v) for v in curve.kappa],
            "log_convex": curve.is_log_convex()}


def _domain(args, adsorbing=False):
    _positive("--T", args.T)
    _positive("--L", args.L)
    return honeycomb.trapezoid(args.T, args.L, adsorbing)


def cmd_honeycomb_local(args, checks):
    d = _domain(args)
    x = honeycomb.X_C if args.x is None else args.x
    tab = honeycomb.observable(d, x, honeycomb.ALPHA_C if args.alpha is None else args.alpha)
    res = [abs(honeycomb.local_identity_residual(tab, v)) for v in range(d.n_vertices)]
    return {"T": args.T, "L": args.L, "x": x, "n_vertices": d.n_vertices,
            "max_residual": max(res), "residuals": res}


def cmd_honeycomb_domain(args, checks):
    d = _domain(args)
    x = honeycomb.X_C if args.x is None else args.x
    g = honeycomb.boundary_generating_functions(d, x)
    return {"T": args.T, "L": args.L, "x": x, "generating_functions": g,
            "residual": honeycomb.domain_identity_residual(d, x)}


def cmd_honeycomb_adsorb(args, checks):
    d = _domain(args, adsorbing=True)
    x = honeycomb.X_C if args.x is None else args.x
    y = honeycomb.Y_STAR if args.y is None else _positive("--y", args.y)
    return {"T": args.T, "L": args.L, "x": x, "y": y,
            "B_coefficient": honeycomb.adsorption_coefficient(y),
            "generating_functions": honeycomb.boundary_generating_functions(d, x, y),
            "residual": honeycomb.adsorption_identity_residual(d, x, y)}


def cmd_hit(args, checks):
    p = hitting.alpha_from_r(args.r, args.b, args.precision)
    if args.b == 1:
        value = hitting.brownian_ratio(p, args.precision)
        quad = hitting.hitting_ratio(p)
    else:
        value = quad = hitting.hitting_ratio(p)
    if args.r == 10:
        _check(checks, "alpha_minus_one_r10", p.alpha_minus_one)
        if args.precision == "extended":
            _check(checks, "alpha_r10", p.alpha)
        if args.b == 1:
            _check(checks, "brownian_r10", value)
        elif args.b == 0.625:
            _check(checks, "saw_ratio_r10", value)
    return {"r": args.r, "b": args.b, "alpha": _num(p.alpha), "alpha_minus_one": _num(p.alpha_minus_one),
            "ratio": _num(value), "quadrature": _num(quad)}


def cmd_hit_asymptotic(args, checks):
    a = hitting.asymptotic_ratio(args.r, args.b, args.precision)
    out = {"r": args.r, "b": args.b, "prefactor": _num(hitting.asymptotic_prefactor(args.b, args.precision)),
           "asymptotic": _num(a), "refined": None}
    if args.b < 1:
        out["refined"] = _num(hitting.refined_ratio(args.r, args.b, args.precision))
    if args.b == 0.625:
        _check(checks, "asymptotic_prefactor", hitting.asymptotic_prefactor(args.b, args.precision))
        if args.r == 10:
            _check(checks, "asymptotic_r10", a)
            _check(checks, "refined_r10", hitting.refined_ratio(args.r, args.b, args.precision))
    return out


def cmd_trefethen(args, checks):
    pe = hitting.trefethen_pe(args.precision)
    ratio = hitting.trefethen_ratio(args.precision)
    _check(checks, "trefethen_pe", pe)
    _check(checks, "trefethen_ratio", ratio)
    return {"p_e": _num(pe), "ratio": _num(ratio)}


def cmd_pull_scan(args, checks):
    _positive("--n-max", args.n_max)
    force = 1.0 if args.force is None else args.force
    tabs = en.count_interacting_pulled(args.n_max, plan=_plan(args))
    curve = thermo.fluctuation_scan(tabs[args.n_max], force, args.temp_grid, args.smooth, args.sign)
    return curve.to_dict()


def cmd_adsorb(args, checks):
    _positive("--n-max", args.n_max)
    ys = _float_list(args.y_grid)
    if any(y <= 0 for y in ys):
        raise ValueError("--y-grid values must be positive")
    table = en.count_half_plane(args.n_max, plan=_plan(args), count_origin=args.count_origin)
    partition = {repr(y): [thermo.adsorption_partition(table, n, y) for n in range(args.n_max + 1)]
                 for y in ys}
    out = {"partition": partition}
    if args.n_max >= 12:
        out["growth"] = thermo.adsorption_growth(table, ys).to_dict()
    return out


def cmd_pivot_nu(args, checks):
    ns = _int_list(args.n_values)
    _positive("--samples", args.samples)
    est = pivot.estimate_nu(ns, args.samples, args.seed, workers=args.threads)
    _check(checks, "nu", est.nu)
    return est.to_dict()


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    p.add_argument("--precision", choices=("double", "extended"), default="double")
    p.add_argument("--check", action="store_true", help="print golden pass/fail lines to stderr")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help="worker count (overrides SAWLAB_THREADS)")


def _sub(sub, name, fn, help_text, add=lambda p: None):
    p = sub.add_parser(name, help=help_text)
    add(p)
    _common(p)
    p.set_defaults(func=fn, command=name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sawlab", description="Lattice self-avoiding walk laboratory.")
    parser.add_argument("--version", action="version", version=f"sawlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def n_max(default):
        return lambda p: p.add_argument("--n-max", type=int, default=default)

    def trap(p):
        p.add_argument("--T", type=int, default=3, help="trapezoid width in hexagon columns")
        p.add_argument("--L", type=int, default=3, help="trapezoid left height")
        p.add_argument("--x", type=float, default=None)
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--y", type=float, default=None)

    def hit(p):
        p.add_argument("--r", type=float, default=10.0)
        p.add_argument("--b", type=float, default=1.0)

    def lam(p):
        p.add_argument("--L", type=int, default=5)
        p.add_argument("--x", type=float, default=None, help="also report the weighted mean length")

    def pull(p):
        p.add_argument("--n-max", type=int, default=10)
        p.add_argument("--force", type=float, default=None)
        p.add_argument("--temp-grid", default="0.2:3.0:0.05")
        p.add_argument("--smooth", action="store_true")
        p.add_argument("--sign", type=int, choices=(1, -1), default=1)

    def mu(p):
        p.add_argument("--n-max", type=int, default=16)
        p.add_argument("--method", choices=("aitken_ratio", "ratio", "raw_root"), default="aitken_ratio")

    _sub(sub, "count", cmd_count, "square-lattice walk counts c_n", n_max(12))
    _sub(sub, "polygons", cmd_polygons, "polygon counts by perimeter and area",
         lambda p: p.add_argument("--m-max", type=int, default=14))
    def half(p):
        p.add_argument("--n-max", type=int, default=10)
        p.add_argument("--count-origin", action="store_true", help="count the origin as a surface vertex")
    _sub(sub, "halfplane", cmd_halfplane, "half-plane walks by surface visits", half)
    _sub(sub, "crossing", cmd_crossing, "corner-to-corner paths of an L x L square",
         lambda p: p.add_argument("--L", type=int, default=4))
    _sub(sub, "interacting", cmd_interacting, "C(N, m, x) of tethered walks", n_max(8))
    _sub(sub, "mu", cmd_mu, "connective constant estimate", mu)
    _sub(sub, "lambda", cmd_lambda, "crossing growth constant estimate", lam)

    def kap(p):
        p.add_argument("--m", type=int, default=14)
        p.add_argument("--q-grid", default="0.1:1.0:0.1")
    _sub(sub, "kappa", cmd_kappa, "finite-perimeter polygon free energy", kap)
    _sub(sub, "honeycomb-local", cmd_honeycomb_local, "local identity residuals", trap)
    _sub(sub, "honeycomb-domain", cmd_honeycomb_domain, "boundary identity of the trapezoid", trap)
    _sub(sub, "honeycomb-adsorb", cmd_honeycomb_adsorb, "boundary identity with a weighted wall", trap)
    _sub(sub, "hit", cmd_hit, "rectangle end/side hitting ratio", hit)

    def hit_asym(p):
        p.add_argument("--r", type=float, default=10.0)
        p.add_argument("--b", type=float, default=0.625)
    _sub(sub, "hit-asymptotic", cmd_hit_asymptotic, "large-r expansions of the hitting ratio", hit_asym)
    _sub(sub, "trefethen", cmd_trefethen, "closed-form end-hitting probability, 10 x 1 rectangle")
    _sub(sub, "pull-scan", cmd_pull_scan, "fluctuation scan of the pulled polymer", pull)

    def ads(p):
        p.add_argument("--n-max", type=int, default=14)
        p.add_argument("--y-grid", default="0.25,0.5,1,2,4")
        p.add_argument("--count-origin", action="store_true", help="count the origin as a surface vertex")
    _sub(sub, "adsorb", cmd_adsorb, "surface adsorption partition functions", ads)

    def piv(p):
        p.add_argument("--n-values", default="100,200,400,800")
        p.add_argument("--samples", type=int, default=100_000)
    _sub(sub, "pivot-nu", cmd_pivot_nu, "pivot Monte Carlo estimate of nu", piv)
    return parser


def _config(args) -> dict:
    skip = {"func", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def execute(argv: list[str] | None = None) -> tuple[RunReport, argparse.Namespace]:
    """Parse, validate and run; raises on any error."""
    args = build_parser().parse_args(argv)
    checks: list = []
    start = time.perf_counter()
    results = args.func(args, checks)
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(_config(args), __version__, elapsed, results, checks), args


def main(argv: list[str] | None = None) -> int:
    try:
        report, args = execute(argv)
    except SystemExit as exc:  # argparse errors and --help/--version
        return 2 if exc.code not in (0, None) else 0
    except BudgetError as exc:
        print(f"sawlab: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError, CoverageError) as exc:
        print(f"sawlab: invalid arguments: {exc}", file=sys.stderr)
        return 2
    except (ToleranceError, ConvergenceError, SawlabError) as exc:
        print(f"sawlab: {exc}", file=sys.stderr)
        return 1
    text = report.to_json() + "\n" if args.format == "json" else to_csv(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.check:
        for c in report.golden_checks:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"{status} {c['name']}: computed {c['computed']} reference {c['reference']} "
                  f"rel_err {c['rel_err']:.3g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

