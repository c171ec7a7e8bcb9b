"""Command-line entry point: every pipeline stage behind one executable.

Subcommands

    profiles    growth-estimate data of the built-in L-function families
    constants   explicit (a, b) bound constants with the hypothesis report
    optimize    grid search for the (C1, C2[, C4]) minimizing a
    integrate   reciprocal-zeta and envelope integrals (Romberg panels)
    mertens     epsilon0 -> explicit Mertens bound -> sieve verification
    verify      empirical spot checks of the bounds against zeta values

Reports are JSON (sorted keys, two-space indent) on stdout or --output;
every report embeds the fully resolved parameter set, defaults included,
so a run can be replayed from its own output.  Floats serialize through
repr and therefore carry 17 significant digits; where a published constant
is reproduced the report adds its rounded-up display form.  CSV is used
only for per-panel and per-sample traces (--trace / --csv).

Bare invocations reproduce the published numbers: `constants a1` prints
the 5.44 bound, `integrate inv-zeta` the reciprocal-zeta integral ceiling,
`integrate envelope` the tail envelope below 5.946e14, `mertens bound` the
555.71 / 1.94e14 pair.

Exit codes: 0 success (including structured null results such as a missing
crossover), 1 violated hypothesis or domain error, 2 numerical
non-convergence, 64 usage errors.  Worker counts come from --threads, else
the NEARONE_WORKERS environment variable, else 1; "auto" means the CPU
count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .constants import (
    BoundParams,
    TARGET_LOG,
    TARGET_LOGDER,
    ceil_decimals,
    ceil_sigfigs,
    constants_report,
    dedekind_split,
)
from .errors import (
    ConvergenceError,
    DomainError,
    HypothesisError,
    NearOneError,
    NoCrossoverError,
)
from .mertens import (
    DEFAULT_C1,
    DEFAULT_C2,
    DEFAULT_C3,
    DEFAULT_INTEGRAL_BOUND,
    DEFAULT_LAMBDA,
    DEFAULT_SIGMA0,
    DEFAULT_T1,
    compute_epsilon0,
    crossover_trivial,
    default_T2,
    derive_m_bound,
    mertens_bound,
    sieve_mobius,
    verify_bound_on_range,
)
from .optimizer import SearchSpec, minimize
from .profiles import (
    ALPHA_DEFAULT,
    T0_DEFAULT,
    profile_dedekind,
    profile_dirichlet,
    profile_zeta,
    rademacher_prefactor_dedekind,
    rademacher_prefactor_dirichlet,
)
from .quadrature import integrate_envelope, integrate_inv_abs_zeta
from .verifier import default_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONVERGENCE = 2
EXIT_USAGE = 64

# the parameter sets behind the published constants, per family and target
_CONSTANT_DEFAULTS = {
    ("zeta", TARGET_LOG): dict(
        C1=0.25, C2=0.5, C3=1000.0, T1=1e4, T2=7778.0, t0=1e4, C4=None),
    ("zeta", TARGET_LOGDER): dict(
        C1=0.34, C2=0.67, C3=1000.0, T1=1e4, T2=7778.0, t0=1e4,
        C4=0.67 / 2.0001),
    ("dirichlet", TARGET_LOG): dict(
        C1=0.25, C2=0.5, C3=1000.0, T1=1e4, T2=7778.0, t0=1e4, C4=None),
    ("dirichlet", TARGET_LOGDER): dict(
        C1=0.34, C2=0.67, C3=1000.0, T1=1e4, T2=7778.0, t0=1e4,
        C4=0.67 / 2.0001),
    ("dedekind", TARGET_LOG): dict(
        C1=0.25, C2=0.5, C3=1000.0, T1=10188.0, T2=7794.0, t0=12128.0,
        C4=None),
    ("dedekind", TARGET_LOGDER): dict(
        C1=0.32, C2=0.64, C3=1000.0, T1=10188.0, T2=7794.0, t0=12128.0,
        C4=0.64 / 2.0001),
}

_TARGETS = {"a1": TARGET_LOG, "a2": TARGET_LOGDER}

# headline sieve-verification constants (display forms of the Mertens bound)
_M_A, _M_A_EXP = 555.71, 0.99
_M_B, _M_B_EXP = 1.94e14, 0.98


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_workers(flag: Optional[str]) -> int:
    text = flag if flag is not None else os.environ.get("NEARONE_WORKERS", "1")
    if text == "auto":
        return os.cpu_count() or 1
    try:
        n = int(text)
    except ValueError:
        raise _UsageError(
            f"--threads expects a positive integer or 'auto', got {text!r}")
    if n < 1:
        raise _UsageError(f"--threads must be >= 1, got {n}")
    return n


def _build_profile(args) -> tuple[object, dict]:
    family = args.family
    if family == "zeta":
        return profile_zeta(), {"family": "zeta"}
    if family == "dirichlet":
        prof = profile_dirichlet(args.q, args.alpha, args.profile_t0)
        return prof, {"family": "dirichlet", "q": args.q, "alpha": args.alpha,
                      "profile_t0": args.profile_t0}
    prof = profile_dedekind(args.degree, args.abs_disc, args.alpha,
                            args.profile_t0)
    return prof, {"family": "dedekind", "degree": args.degree,
                  "abs_disc": args.abs_disc, "alpha": args.alpha,
                  "profile_t0": args.profile_t0}


def _profile_dict(prof) -> dict:
    return {
        "degree": prof.degree,
        "euler_order": prof.euler_order,
        "log_power": prof.log_power,
        "amplitude": prof.amplitude,
        "conductor_scale": prof.conductor_scale,
        "min_height": prof.min_height,
    }


def _cmd_profiles(args) -> tuple[dict, int]:
    prof, family_params = _build_profile(args)
    report = {
        "subcommand": "profiles",
        "parameters": family_params,
        "profile": _profile_dict(prof),
    }
    if args.family == "dirichlet":
        report["prefactor"] = rademacher_prefactor_dirichlet(
            args.alpha, args.profile_t0)
        report["prefactor_ceiling"] = 1.0
    elif args.family == "dedekind":
        report["prefactor"] = rademacher_prefactor_dedekind(
            args.degree, args.alpha, args.profile_t0)
        report["prefactor_ceiling"] = 1.9
    return report, EXIT_OK


def _resolved_bound_params(args, target: str) -> BoundParams:
    defaults = _CONSTANT_DEFAULTS[(args.family, target)]
    values = {}
    for key in ("C1", "C2", "C3", "T1", "T2", "t0", "C4"):
        given = getattr(args, key)
        values[key] = defaults[key] if given is None else given
    if target == TARGET_LOG:
        values["C4"] = None  # only the derivative bound uses C4
    return BoundParams(**values)


def _cmd_constants(args) -> tuple[dict, int]:
    target = _TARGETS[args.which]
    prof, family_params = _build_profile(args)
    params = _resolved_bound_params(args, target)
    report = constants_report(prof, params, target)
    report["subcommand"] = "constants"
    report["family"] = family_params
    if args.family == "dedekind" and report["hypotheses_ok"]:
        k1, k2 = dedekind_split(params.C1, params.C3, params.T1, params.T2)
        report["b_split"] = {"base": k1, "per_inverse_degree": k2}
    if not report["hypotheses_ok"]:
        failed = next(ch for ch in report["hypotheses"] if not ch["ok"])
        print(f"error: hypothesis {failed['name']} failed: {failed['detail']}",
              file=sys.stderr)
        return report, EXIT_VALIDATION
    return report, EXIT_OK


def _cmd_optimize(args) -> tuple[dict, int]:
    target = _TARGETS[args.which]
    prof, family_params = _build_profile(args)
    defaults = _CONSTANT_DEFAULTS[(args.family, target)]
    fixed = {k: getattr(args, k) if getattr(args, k) is not None else defaults[k]
             for k in ("C3", "T1", "T2", "t0")}
    spec = SearchSpec(profile=prof, target=target, grid_step=args.grid_step,
                      refine_rounds=args.refine_rounds, **fixed)
    params, bc = minimize(spec, trace_path=args.trace)
    places = 2 if target == TARGET_LOG else 3
    report = {
        "subcommand": "optimize",
        "target": target,
        "family": family_params,
        "search": {**fixed, "grid_step": args.grid_step,
                   "refine_rounds": args.refine_rounds},
        "optimum": {
            "parameters": params.as_dict(),
            "constants": bc.as_dict(),
            "a_display": ceil_decimals(bc.a, places),
            "b_display": ceil_decimals(bc.b, 3),
        },
    }
    return report, EXIT_OK


def _cmd_integrate(args) -> tuple[dict, int]:
    workers = _resolve_workers(args.threads)
    if args.which == "inv-zeta":
        result = integrate_inv_abs_zeta(
            args.sigma0, args.lo, args.hi, panel_width=args.panel_width,
            rel_tol=args.rel_tol, max_levels=args.max_levels,
            workers=workers, trace_path=args.trace)
        parameters = {
            "sigma0": args.sigma0, "from": args.lo, "to": args.hi,
            "panel_width": args.panel_width, "rel_tol": args.rel_tol,
            "max_levels": args.max_levels, "workers": workers,
        }
    else:
        result = integrate_envelope(
            args.sigma0, args.a1, args.lo, args.hi, rel_tol=args.rel_tol,
            max_levels=args.max_levels, panel_width_v=args.panel_width_v,
            workers=workers, trace_path=args.trace)
        parameters = {
            "sigma0": args.sigma0, "a1": args.a1, "from": args.lo,
            "to": args.hi, "panel_width_v": args.panel_width_v,
            "rel_tol": args.rel_tol, "max_levels": args.max_levels,
            "workers": workers,
        }
    report = {
        "subcommand": "integrate",
        "integrand": args.which,
        "parameters": parameters,
        "result": {
            "value": result.value,
            "error_estimate": result.error_estimate,
            "certified_upper": result.value + result.error_estimate,
            "panels": result.panels,
            "evaluations": result.evaluations,
        },
    }
    return report, EXIT_OK


def _cmd_mertens(args) -> tuple[dict, int]:
    if args.action == "bound":
        T2 = args.T2 if args.T2 is not None else default_T2(args.T1, args.C3)
        eps0 = args.epsilon0
        if eps0 is None:
            eps0 = compute_epsilon0(args.sigma0, args.C1, args.C2, args.C3,
                                    args.T1, T2)
        spec = mertens_bound(args.sigma0, args.lam, args.T1, eps0,
                             args.integral)
        kappa_display = ceil_decimals(spec.kappa, 2)
        coef_kappa_display = ceil_decimals(spec.coef_kappa, 2)
        coef_sigma0_display = ceil_sigfigs(spec.coef_sigma0, 3)
        A_m, B_m = derive_m_bound(coef_kappa_display, kappa_display,
                                  coef_sigma0_display, args.sigma0)
        report = {
            "subcommand": "mertens.bound",
            "parameters": {
                "sigma0": args.sigma0, "C1": args.C1, "C2": args.C2,
                "C3": args.C3, "T1": args.T1, "T2": T2, "lambda": args.lam,
                "integral_bound": args.integral, "epsilon0": eps0,
            },
            "bound": spec.as_dict(),
            "display": {
                "kappa": kappa_display,
                "coef_kappa": coef_kappa_display,
                "coef_sigma0": coef_sigma0_display,
            },
            "m_transfer": {"A_m": A_m, "B_m": B_m},
        }
        try:
            report["crossover_log10"] = crossover_trivial(
                coef_kappa_display, kappa_display, coef_sigma0_display,
                args.sigma0)
        except NoCrossoverError as exc:
            report["crossover_log10"] = None
            report["crossover_note"] = str(exc)
        return report, EXIT_OK

    if args.action == "derive-m":
        A_m, B_m = derive_m_bound(args.A, args.a, args.B, args.b)
        report = {
            "subcommand": "mertens.derive-m",
            "parameters": {"A": args.A, "a": args.a, "B": args.B, "b": args.b},
            "A_m": A_m,
            "B_m": B_m,
        }
        return report, EXIT_OK

    if args.action == "crossover":
        report = {
            "subcommand": "mertens.crossover",
            "parameters": {"A": args.A, "a": args.a, "B": args.B, "b": args.b},
        }
        try:
            report["crossover_log10"] = crossover_trivial(
                args.A, args.a, args.B, args.b)
        except NoCrossoverError as exc:
            # a missing crossover is an answer, not a failure
            report["crossover_log10"] = None
            report["reason"] = str(exc)
        return report, EXIT_OK

    # sieve-verify
    table = sieve_mobius(args.limit)
    report = verify_bound_on_range(table, args.A, args.a, args.B, args.b)
    report = {
        "subcommand": "mertens.sieve-verify",
        "parameters": {"limit": args.limit, "A": args.A, "a": args.a,
                       "B": args.B, "b": args.b},
        **report,
        "M_spot": {"10": table.M(10), "100": table.M(100)}
        if args.limit >= 100 else {},
    }
    if report["violations"]:
        print(f"error: bound-violation: {report['violations']} points, "
              f"first at x={report['first_violation']}", file=sys.stderr)
        return report, EXIT_VALIDATION
    return report, EXIT_OK


def _cmd_verify(args) -> tuple[dict, int]:
    workers = _resolve_workers(args.threads)
    result = default_verification(samples=args.samples, abs_tol=args.abs_tol,
                                  workers=workers)
    report = {
        "subcommand": "verify",
        "parameters": {"samples": args.samples, "abs_tol": args.abs_tol,
                       "workers": workers},
        **result,
    }
    if args.csv is not None:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check", "sigma_mode", "sigma", "t",
                             "observed", "bound", "ratio"])
            for check in report["checks"]:
                for r in check["records"]:
                    writer.writerow([check["check"], check["sigma_mode"],
                                     repr(r["sigma"]), repr(r["t"]),
                                     repr(r["observed"]), repr(r["bound"]),
                                     repr(r["ratio"])])
    if not report["all_ok"]:
        print(f"error: bound-violation: {report['total_violations']} bound "
              f"and {report['elementary_violations']} elementary violations",
              file=sys.stderr)
        return report, EXIT_VALIDATION
    return report, EXIT_OK


def _add_family_flags(parser) -> None:
    parser.add_argument("--family", choices=("zeta", "dirichlet", "dedekind"),
                        default="zeta")
    parser.add_argument("--q", type=int, default=3,
                        help="Dirichlet modulus (family dirichlet)")
    parser.add_argument("--degree", type=int, default=2,
                        help="number field degree (family dedekind)")
    parser.add_argument("--abs-disc", type=float, default=3.0,
                        help="absolute discriminant (family dedekind)")
    parser.add_argument("--alpha", type=float, default=ALPHA_DEFAULT)
    parser.add_argument("--profile-t0", type=float, default=T0_DEFAULT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nearone",
                     description="explicit near-1-line bounds for zeta-like "
                                 "L-functions and the Mertens function")
    parser.add_argument("--output", default=None,
                        help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("profiles", help="growth-estimate profile data")
    _add_family_flags(p)
    p.set_defaults(handler=_cmd_profiles)

    p = sub.add_parser("constants", help="explicit bound constants")
    p.add_argument("which", choices=("a1", "a2"))
    _add_family_flags(p)
    for flag in ("C1", "C2", "C3", "C4", "T1", "T2", "t0"):
        p.add_argument(f"--{flag}", type=float, default=None)
    p.set_defaults(handler=_cmd_constants)

    p = sub.add_parser("optimize", help="grid search minimizing a1 or a2")
    p.add_argument("which", choices=("a1", "a2"))
    _add_family_flags(p)
    for flag in ("C3", "T1", "T2", "t0"):
        p.add_argument(f"--{flag}", type=float, default=None)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--refine-rounds", type=int, default=0)
    p.add_argument("--trace", default=None,
                   help="CSV trace of evaluated grid points")
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("integrate", help="Romberg panel integration")
    p.add_argument("which", choices=("inv-zeta", "envelope"))
    p.add_argument("--sigma0", type=float, default=0.98)
    p.add_argument("--from", dest="lo", type=float, default=None)
    p.add_argument("--to", dest="hi", type=float, default=None)
    p.add_argument("--a1", type=float, default=5.44,
                   help="envelope growth constant (integrand envelope)")
    p.add_argument("--panel-width", type=float, default=10.0)
    p.add_argument("--panel-width-v", type=float, default=0.5)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--max-levels", type=int, default=16)
    p.add_argument("--threads", default=None)
    p.add_argument("--trace", default=None,
                   help="CSV trace of per-panel results")
    p.set_defaults(handler=_cmd_integrate)

    p = sub.add_parser("mertens", help="explicit Mertens-function bounds")
    p.add_argument("action",
                   choices=("bound", "derive-m", "crossover", "sieve-verify"))
    p.add_argument("--sigma0", type=float, default=DEFAULT_SIGMA0)
    p.add_argument("--C1", type=float, default=DEFAULT_C1)
    p.add_argument("--C2", type=float, default=DEFAULT_C2)
    p.add_argument("--C3", type=float, default=DEFAULT_C3)
    p.add_argument("--T1", type=float, default=DEFAULT_T1)
    p.add_argument("--T2", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--integral", type=float, default=DEFAULT_INTEGRAL_BOUND)
    p.add_argument("--epsilon0", type=float, default=None,
                   help="skip the chain and use this exponent directly")
    p.add_argument("--A", type=float, default=_M_A)
    p.add_argument("--a", type=float, default=_M_A_EXP)
    p.add_argument("--B", type=float, default=_M_B)
    p.add_argument("--b", type=float, default=_M_B_EXP)
    p.add_argument("--limit", type=int, default=1_000_000,
                   help="sieve range for sieve-verify")
    p.set_defaults(handler=_cmd_mertens)

    p = sub.add_parser("verify", help="empirical bound spot checks")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--abs-tol", type=float, default=1e-6)
    p.add_argument("--threads", default=None)
    p.add_argument("--csv", default=None,
                   help="write per-sample records here as CSV")
    p.set_defaults(handler=_cmd_verify)

    return parser


def _fill_integrate_defaults(args) -> None:
    """Range defaults differ per integrand, so argparse can't own them."""
    if args.which == "inv-zeta":
        if args.lo is None:
            args.lo = 0.0
        if args.hi is None:
            args.hi = 11520.0
        if args.rel_tol is None:
            args.rel_tol = 1e-6
    else:
        if args.lo is None:
            args.lo = 11520.0
        if args.hi is None:
            args.hi = 2.6e7
        if args.rel_tol is None:
            args.rel_tol = 1e-9


def _emit(report: dict, path: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "integrate":
        _fill_integrate_defaults(args)
    try:
        report, code = args.handler(args)
    except _UsageError as exc:
        print(f"nearone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"error: non-convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, NearOneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
