"""
Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data or domain error,
3 inconsistent effective Reynolds number under --strict.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .comparison import evaluate, figure_table, lambda_theta_table, prediction_columns, synth_dragset
from .correlations import (
    LANGLEY,
    BL_CONSTANT,
    LogSquare,
    PipeAsymptotic,
    PipeExact,
    PowerLaw,
    bl_drag_langley,
    fit_logsq_constant,
)
from .io import (
    dumps_report,
    digest,
    parse_profile,
    profile_text,
    read_samples,
    samples_text,
    table_text,
)
from .pipeline import DEFAULT_CORRELATIONS, analyze_profile
from .profile import DomainError, synth_profile
from .scaling import DEFAULT_ETA_MIN, DEFAULT_TOL_LN, MIN_SEGMENT
from .tangency import approximation_error, power_to_logsq, tangency_map

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INCONSISTENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# correlation specs --------------------------------------------------------

def parse_correlation(spec: str):
    """
    Parse ``logsq[:C]``, ``langley``, ``pipe-exact``, ``pipe-asym`` or
    ``power:G:gamma[:re_eff|re_theta]``.
    """
    name, *args = spec.strip().split(":")
    try:
        if name == "logsq" and len(args) <= 1:
            return LogSquare(float(args[0]) if args else BL_CONSTANT)
        if name == "langley" and not args:
            return LANGLEY
        if name == "pipe-exact" and not args:
            return PipeExact()
        if name == "pipe-asym" and not args:
            return PipeAsymptotic()
        if name == "power" and len(args) in (2, 3):
            return PowerLaw(float(args[0]), float(args[1]), *args[2:])
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad correlation {spec!r}: {exc}") from None
    raise UsageError(f"unknown correlation {spec!r}")


def describe(corr):
    d = {"tag": corr.tag, "reynolds": corr.reynolds}
    if isinstance(corr, LogSquare):
        d["C"] = corr.C
    elif isinstance(corr, PowerLaw):
        d["G"] = corr.G
        d["gamma"] = corr.gamma
    return d


# commands -----------------------------------------------------------------

def _emit(args, text, stdout):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        stdout.write(text)


def _fit_one(path, args, corrs):
    path = Path(path)
    raw = path.read_bytes()
    profile = parse_profile(raw.decode("utf-8"), source=path.name)
    result = analyze_profile(profile, args.eta_min, args.min_seg, args.tol_ln, corrs)
    return path, raw, profile, result


def _fit_report(path, raw, profile, a, corrs):
    fit, res = a.fit, a.effective

    def seg(f):
        return {"coeff": f.coeff, "exponent": f.exponent, "index_range": list(f.index_range),
                "n": f.n, "sse": f.sse, "r2": f.r2}

    preds = dict(a.predictions)
    if LANGLEY in corrs:
        preds["langley_in_range"] = bl_drag_langley(a.re_theta)[1]
    return {
        "input": {"file": path.name, "rows": len(profile), "sha256": digest(raw)},
        "profile": {"name": profile.name, "nu": profile.nu, "U_inf": profile.U_inf,
                    "u_tau": profile.u_tau},
        "two_layer_fit": {"points_fitted": len(a.scaled), "inner": seg(fit.inner),
                          "outer": seg(fit.outer), "eta_break": fit.eta_break,
                          "lambda": fit.lam, "total_sse": fit.total_sse},
        "effective_re": {"re_from_alpha": res.re_from_alpha, "re_from_A": res.re_from_A,
                         "re_eff": res.re_eff, "ln_discrepancy": res.ln_discrepancy,
                         "tol_ln": res.tol_ln, "consistent": res.consistent,
                         "length_scale": res.length_scale},
        "momentum_thickness": {"theta": a.theta, "re_theta": a.re_theta},
        "cf": a.cf,
        "correlations": [describe(c) for c in corrs],
        "predictions": preds,
        "warnings": list(a.warnings),
    }


def cmd_fit(args, stdout):
    corrs = _corrs(args.corr) or list(DEFAULT_CORRELATIONS)
    path, raw, profile, a = _fit_one(args.profile, args, corrs)
    _emit(args, dumps_report(_fit_report(path, raw, profile, a, corrs)), stdout)
    if args.strict and not a.effective.consistent:
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_theta(args, stdout):
    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as pool:
            results = list(pool.map(lambda p: _fit_one(p, args, ()), args.profiles))
    else:
        results = [_fit_one(p, args, ()) for p in args.profiles]
    rows = lambda_theta_table([r[2] for r in results], [r[3].effective for r in results],
                              [(r[3].theta, r[3].re_theta) for r in results])
    out = [{"source": r.source, "length_scale": r.length_scale, "theta": r.theta,
            "lambda_over_theta": "undefined" if r.ratio is None else r.ratio,
            "re_eff": r.re_eff, "re_theta": r.re_theta} for r in rows]
    cols = ["source", "length_scale", "theta", "lambda_over_theta", "re_eff", "re_theta"]
    _emit(args, table_text(out, cols), stdout)
    if args.strict and not all(r[3].effective.consistent for r in results):
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_drag(args, stdout):
    corr = parse_correlation(args.corr_spec)
    if corr.reynolds == "re_theta":
        if args.re_theta is None:
            raise UsageError(f"--re-theta is required for {corr.tag}")
        re = args.re_theta
    else:
        if args.re is None:
            raise UsageError(f"--re is required for {corr.tag}")
        re = args.re
    doc = {"correlation": describe(corr), corr.reynolds: re, "cf": corr(re)}
    if corr == LANGLEY:
        doc["in_range"] = bl_drag_langley(re)[1]
    _emit(args, dumps_report(doc), stdout)
    return EXIT_OK


def cmd_fit_constant(args, stdout):
    samples = [s for s in read_samples(args.summary, require=("re_eff",)) if s.re_eff is not None]
    fit = fit_logsq_constant([(s.re_eff, s.cf) for s in samples])
    _emit(args, dumps_report({"C": fit.C, "n": fit.n, "rms_rel": fit.rms_rel}), stdout)
    return EXIT_OK


def cmd_compare(args, stdout):
    corrs = _corrs(args.corr) or [LogSquare()]
    samples = read_samples(args.summary)
    reports = []
    for name, corr in zip(prediction_columns(corrs), corrs):
        r = evaluate(samples, corr, args.alpha)
        reports.append({"column": name, "correlation": describe(corr), "n": r.n,
                        "mean_rel": r.mean_rel, "rms_rel": r.rms_rel, "n_pos": r.n_pos,
                        "n_neg": r.n_neg, "p_sign": r.p_sign, "alpha": r.alpha,
                        "systematic": r.systematic, "residuals": list(r.residuals)})
    doc = {"input": {"file": Path(args.summary).name,
                     "sha256": digest(Path(args.summary).read_bytes()),
                     "rows": len(samples)},
           "comparisons": reports}
    if args.figure_out:
        rows = figure_table(samples, corrs)
        cols = ["source", "re_eff", "re_theta", "cf_obs", *prediction_columns(corrs)]
        Path(args.figure_out).write_text(table_text(rows, cols), encoding="utf-8", newline="\n")
    _emit(args, dumps_report(doc), stdout)
    return EXIT_OK


def cmd_synth(args, stdout):
    if args.seed is None:
        raise UsageError("--seed is required for synth")
    try:
        if args.kind == "profile":
            if args.re is None:
                raise UsageError("--re is required for synth profile")
            p = synth_profile(args.re, n=args.n, eta_lo=args.eta_lo, eta_hi=args.eta_hi,
                              noise_rel=args.noise, seed=args.seed, U=args.U, nu=args.nu,
                              C=args.constant, name=args.name)
            text = profile_text(p)
        else:
            samples = synth_dragset(args.constant, args.n, args.re_lo, args.re_hi,
                                    args.noise, args.seed)
            text = samples_text(samples)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, text, stdout)
    return EXIT_OK


def cmd_approx(args, stdout):
    if (args.x0 is None) == (args.gamma is None):
        raise UsageError("give exactly one of --x0 or --gamma")
    if args.gamma is not None:
        x0 = power_to_logsq(args.gamma)
        doc = {"direction": "power_to_logsq", "gamma": args.gamma, "x0": x0}
        if x0 > math.e:
            doc["G"] = tangency_map(x0).G
    else:
        t = tangency_map(args.x0)
        doc = {"direction": "logsq_to_power", "x0": t.x0, "gamma": t.gamma, "G": t.G}
        x0 = t.x0
    doc["C"] = args.constant
    if "G" in doc:
        doc["prefactor"] = args.constant * doc["G"]
    if args.lo is not None or args.hi is not None:
        if args.lo is None or args.hi is None:
            raise UsageError("--lo and --hi go together")
        doc["interval"] = [args.lo, args.hi]
        doc["n_grid"] = args.n_grid
        doc["max_rel_deviation"] = approximation_error(args.constant, x0, args.lo, args.hi,
                                                       args.n_grid)
    _emit(args, dumps_report(doc), stdout)
    return EXIT_OK


def _corrs(specs):
    return [parse_correlation(s) for s in specs or ()]


# parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for stochastic commands")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when the two Re estimates disagree")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel workers across input files")

    fitting = argparse.ArgumentParser(add_help=False)
    fitting.add_argument("--eta-min", type=float, default=DEFAULT_ETA_MIN)
    fitting.add_argument("--min-seg", type=int, default=MIN_SEGMENT)
    fitting.add_argument("--tol-ln", type=float, default=DEFAULT_TOL_LN)

    parser = _Parser(prog="bldrag", description="Turbulent boundary-layer drag analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", parents=[common, fitting], help="reduce a velocity profile")
    p.add_argument("profile")
    p.add_argument("--corr", action="append", help="correlation to predict with (repeatable)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("theta", parents=[common, fitting],
                       help="tabulate Lambda against momentum thickness")
    p.add_argument("profiles", nargs="+")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("drag", parents=[common], help="evaluate a drag correlation")
    p.add_argument("--corr", dest="corr_spec", required=True)
    p.add_argument("--re", type=float)
    p.add_argument("--re-theta", type=float)
    p.set_defaults(func=cmd_drag)

    p = sub.add_parser("fit-constant", parents=[common], help="fit C in cf = C/ln(Re)^2")
    p.add_argument("summary")
    p.set_defaults(func=cmd_fit_constant)

    p = sub.add_parser("compare", parents=[common], help="residuals against correlations")
    p.add_argument("summary")
    p.add_argument("--corr", action="append")
    p.add_argument("--alpha", type=float, default=0.05, help="sign-test significance")
    p.add_argument("--figure-out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("synth", parents=[common], help="write a synthetic data file")
    p.add_argument("kind", choices=["profile", "dragset"])
    p.add_argument("--re", type=float)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--eta-lo", type=float, default=30.0)
    p.add_argument("--eta-hi", type=float)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--U", type=float, default=10.0)
    p.add_argument("--nu", type=float, default=1.5e-5)
    p.add_argument("--name")
    p.add_argument("--constant", type=float, default=BL_CONSTANT)
    p.add_argument("--re-lo", type=float, default=1e5)
    p.add_argument("--re-hi", type=float, default=1e8)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("approx", parents=[common], help="tangent power-law approximation")
    p.add_argument("--x0", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--constant", type=float, default=1.0)
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--n-grid", type=int, default=1001)
    p.set_defaults(func=cmd_approx)
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "synth" and args.n is None:
        args.n = 200 if args.kind == "profile" else 40
    for name in ("tol_ln", "alpha"):
        val = getattr(args, name, None)
        if val is not None and not val > 0:
            stderr.write(f"bldrag: error: --{name.replace('_', '-')} must be positive\n")
            return EXIT_USAGE
    if args.jobs < 1:
        stderr.write("bldrag: error: --jobs must be at least 1\n")
        return EXIT_USAGE
    try:
        return args.func(args, stdout)
    except UsageError as exc:
        stderr.write(f"bldrag {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        stderr.write(f"bldrag {args.command}: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
