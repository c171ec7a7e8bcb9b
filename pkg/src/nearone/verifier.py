"""Empirical spot checks of the near-1-line bounds against actual zeta values.

The two display inequalities under test, for s = sigma + it with c = 1,

    |log zeta(s)|        <= a1 (b1 log(c|t|))^(2(1-sigma)) loglog(c|t|)
    |zeta'/zeta(s)|      <= a2 (b2 log(c|t|))^(2(1-sigma)) (loglog(c|t|))^2

hold on the strip

    sigma in [1/2 + A/loglog(c|t|), 1 + B/loglog(c|t|)]

with (A, B) = (0.5, 0.5) for the first and (1.0051, 0.3349) for the second,
conditionally on a zero-free box reaching up to height t.  Zeros of zeta are
verified on the critical line far beyond t = 3*10^4, so on the sampled window
[10^4, 3*10^4] the hypothesis is known and the inequalities are testable.

Only the consequence |log|zeta|| <= |log zeta| is checked for the first
inequality: the imaginary part of log zeta needs branch tracking that this
module deliberately avoids, so a pass here is a necessary condition, not a
reproof.  The second inequality is checked in full since |zeta'/zeta| needs
no branch choice.

Sampling is deterministic low-discrepancy: t is log-uniform through a Halton
sequence in base 2, and sigma is placed by a base-3 Halton value either
across the strip's interior (INTERIOR_GRID) or alternately on its two edges
(REGION_EDGES).  Edge samples on the right boundary sigma = 1 + B/loglog t
are additionally compared against the unconditional Euler-product bounds

    |log zeta|     <= logloglog(c|t|) + log(1/B) + gamma B / loglog(t0)
    |zeta'/zeta|   <= (1/B) loglog(c|t|)

which must dominate the observations there.

A sample counts as a violation only when the observed quantity exceeds the
bound by more than the propagated engine error (the evaluations carry
certified absolute error bounds), so a red result cannot be an artifact of
the evaluator's own tolerance.
"""

from __future__ import annotations

import csv
import enum
import math
import statistics
from dataclasses import dataclass
from multiprocessing import Pool

from .constants import elementary_bounds, loglog
from .errors import ConvergenceError, DomainError
from .zeta import zeta, zeta_with_prime

T_FLOOR = 1.0e4
T_CEILING = 3.0e4

LOG_REGION = (0.5, 0.5, 1.0)
LOGDER_REGION = (1.0051, 0.3349, 1.0)
DISPLAY_A1 = 5.44
DISPLAY_B1 = 0.951
DISPLAY_A2 = 33.281
DISPLAY_B2 = 0.971

DEFAULT_ABS_TOL = 1.0e-6
DEFAULT_SAMPLES = 400

_EDGE_TOL = 1.0e-12


class SigmaMode(enum.Enum):
    """How sigma is placed inside the admissible strip."""

    REGION_EDGES = "region-edges"
    INTERIOR_GRID = "interior-grid"


def _halton(index: int, base: int) -> float:
    """The index-th element of the van der Corput sequence in the base."""
    f = 1.0
    r = 0.0
    while index > 0:
        f /= base
        r += f * (index % base)
        index //= base
    return r


def strip_edges(region: tuple[float, float, float], t: float) -> tuple[float, float]:
    """Admissible sigma interval [1/2 + A/loglog(ct), 1 + B/loglog(ct)]."""
    A, B, c = region
    ll = loglog(c * abs(t))
    return 0.5 + A / ll, 1.0 + B / ll


@dataclass(frozen=True)
class SampleGrid:
    """A deterministic batch of (sigma, t) samples inside one strip.

    t_values lie in [10^4, 3*10^4]; each sigma_values[i] is admissible for
    t_values[i] under the region (A, B, c).  Construction is by build_grid;
    the invariants are re-checked here so hand-built grids stay honest.
    """

    t_values: tuple[float, ...]
    sigma_values: tuple[float, ...]
    sigma_mode: SigmaMode
    region: tuple[float, float, float]
    seed: int = 0

    def __post_init__(self) -> None:
        A, B, c = self.region
        if not (A > 0.0 and B > 0.0 and c >= 1.0):
            raise DomainError(f"region needs A > 0, B > 0, c >= 1; got {self.region!r}")
        if len(self.t_values) != len(self.sigma_values):
            raise DomainError("t_values and sigma_values must align")
        if not self.t_values:
            raise DomainError("grid must contain at least one sample")
        for sigma, t in zip(self.sigma_values, self.t_values):
            if not (T_FLOOR <= t <= T_CEILING):
                raise DomainError(f"t={t!r} outside [{T_FLOOR}, {T_CEILING}]")
            lo, hi = strip_edges(self.region, t)
            if not (lo - _EDGE_TOL <= sigma <= hi + _EDGE_TOL):
                raise DomainError(
                    f"sigma={sigma!r} outside the strip [{lo!r}, {hi!r}] at t={t!r}")

    def __len__(self) -> int:
        return len(self.t_values)

    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.sigma_values, self.t_values))


def build_grid(n_samples: int, region: tuple[float, float, float],
               sigma_mode: SigmaMode, seed: int = 0) -> SampleGrid:
    """Low-discrepancy (sigma, t) samples, reproducible from the seed.

    t is log-uniform over [10^4, 3*10^4] via Halton base 2 and sigma via
    Halton base 3, both read from index seed+1 onward, so the same seed
    always yields the same grid.  REGION_EDGES alternates samples between
    the strip's left and right boundaries instead of spreading sigma.
    """
    if n_samples < 1:
        raise DomainError(f"need at least one sample, got {n_samples!r}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed!r}")
    log_lo, log_hi = math.log(T_FLOOR), math.log(T_CEILING)
    ts = []
    sigmas = []
    for k in range(n_samples):
        idx = seed + k + 1
        u = _halton(idx, 2)
        t = math.exp(log_lo + u * (log_hi - log_lo))
        lo, hi = strip_edges(region, t)
        if sigma_mode is SigmaMode.REGION_EDGES:
            sigma = lo if k % 2 == 0 else hi
        else:
            v = _halton(idx, 3)
            sigma = lo + v * (hi - lo)
        ts.append(t)
        sigmas.append(sigma)
    return SampleGrid(t_values=tuple(ts), sigma_values=tuple(sigmas),
                      sigma_mode=sigma_mode, region=region, seed=seed)


def _bound_value(kind: str, sigma: float, t: float, a: float, b: float,
                 c: float) -> float:
    L = math.log(c * abs(t))
    ll = loglog(c * abs(t))
    if kind == "log":
        return a * (b * L) ** (2.0 * (1.0 - sigma)) * ll
    return a * (b * L) ** (2.0 * (1.0 - sigma)) * ll ** 2


def _eval_sample(task: tuple) -> dict:
    """Evaluate one sample; top-level so worker pools can pickle it.

    task = (kind, sigma, t, a, b, A, B, c, abs_tol) with kind "log" or
    "logder".  Returns the per-sample record.
    """
    kind, sigma, t, a, b, A, B, c, abs_tol = task
    point = complex(sigma, t)
    try:
        if kind == "log":
            val = zeta(point, abs_tol=abs_tol)
            abs_v = abs(val.value)
            if abs_v <= val.abs_error_bound:
                raise DomainError("|zeta| indistinguishable from zero")
            observed = abs(math.log(abs_v))
            slack = val.abs_error_bound / (abs_v - val.abs_error_bound)
        else:
            val, prime = zeta_with_prime(point, abs_tol=abs_tol)
            abs_v = abs(val.value)
            if abs_v <= val.abs_error_bound:
                raise DomainError("|zeta| indistinguishable from zero")
            observed = abs(prime.value / val.value)
            slack = ((prime.abs_error_bound + observed * val.abs_error_bound)
                     / (abs_v - val.abs_error_bound))
    except (ConvergenceError, DomainError) as exc:
        raise type(exc)(f"sample (sigma={sigma!r}, t={t!r}): {exc}") from exc
    bound = _bound_value(kind, sigma, t, a, b, c)
    record = {
        "sigma": sigma,
        "t": t,
        "observed": observed,
        "bound": bound,
        "ratio": bound / observed if observed > 0.0 else math.inf,
        "engine_slack": slack,
        "ok": observed <= bound + slack,
    }
    ll = loglog(c * abs(t))
    if sigma >= 1.0 + B / ll - _EDGE_TOL:
        elem_log, elem_logder = elementary_bounds(1, B, c, t, T_FLOOR)
        elem = elem_log if kind == "log" else elem_logder
        record["elementary_bound"] = elem
        record["elementary_ok"] = observed <= elem + slack
    return record


def _run_check(kind: str, grid: SampleGrid, a: float, b: float,
               abs_tol: float, workers: int) -> dict:
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"bound constants must be positive; got a={a!r}, b={b!r}")
    if not (abs_tol > 0.0):
        raise DomainError(f"abs_tol must be positive, got {abs_tol!r}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers!r}")
    A, B, c = grid.region
    tasks = [(kind, sigma, t, a, b, A, B, c, abs_tol)
             for sigma, t in grid.samples()]
    if workers == 1:
        records = [_eval_sample(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * workers))
        with Pool(processes=workers) as pool:
            records = pool.map(_eval_sample, tasks, chunksize=chunk)
    violations = [r for r in records if not r["ok"]]
    elem_records = [r for r in records if "elementary_bound" in r]
    elem_violations = [r for r in elem_records if not r["elementary_ok"]]
    ratios = [r["ratio"] for r in records]
    return {
        "check": "log-zeta" if kind == "log" else "logder-zeta",
        "a": a,
        "b": b,
        "region": {"A": A, "B": B, "c": c},
        "sigma_mode": grid.sigma_mode.value,
        "seed": grid.seed,
        "abs_tol": abs_tol,
        "samples": len(records),
        "violations": len(violations),
        "first_violation": violations[0] if violations else None,
        "elementary_checked": len(elem_records),
        "elementary_violations": len(elem_violations),
        "min_ratio": min(ratios),
        "median_ratio": statistics.median(ratios),
        "records": records,
    }


def check_log_bound(grid: SampleGrid, a1: float, b1: float,
                    abs_tol: float = DEFAULT_ABS_TOL, workers: int = 1) -> dict:
    """Test |log|zeta(sigma+it)|| <= a1 (b1 log ct)^(2(1-sigma)) loglog ct.

    Returns a report with per-sample records, the violation count and
    margin statistics (min and median of bound/observed).  Engine failures
    propagate annotated with the offending sample.
    """
    return _run_check("log", grid, a1, b1, abs_tol, workers)


def check_logder_bound(grid: SampleGrid, a2: float, b2: float,
                       abs_tol: float = DEFAULT_ABS_TOL, workers: int = 1) -> dict:
    """Test |zeta'/zeta(sigma+it)| <= a2 (b2 log ct)^(2(1-sigma)) (loglog ct)^2.

    Right-edge samples are additionally required to sit under the
    unconditional Euler-product bound (1/B) loglog(ct); see the module
    docstring.  Report shape matches check_log_bound.
    """
    return _run_check("logder", grid, a2, b2, abs_tol, workers)


def default_verification(samples: int = DEFAULT_SAMPLES,
                         abs_tol: float = DEFAULT_ABS_TOL,
                         workers: int = 1) -> dict:
    """The standard suite: both inequalities at their published constants.

    The budget is split across four grids (interior and edge placement for
    each inequality).  Returns the four check reports plus roll-up counts;
    all_ok is True only with zero violations of both the tested bounds and
    the right-edge elementary bounds.
    """
    if samples < 4:
        raise DomainError(f"need at least 4 samples, got {samples!r}")
    per = samples // 4
    checks = [
        check_log_bound(build_grid(per, LOG_REGION, SigmaMode.INTERIOR_GRID,
                                   seed=0), DISPLAY_A1, DISPLAY_B1,
                        abs_tol=abs_tol, workers=workers),
        check_log_bound(build_grid(per, LOG_REGION, SigmaMode.REGION_EDGES,
                                   seed=1000), DISPLAY_A1, DISPLAY_B1,
                        abs_tol=abs_tol, workers=workers),
        check_logder_bound(build_grid(per, LOGDER_REGION, SigmaMode.INTERIOR_GRID,
                                      seed=2000), DISPLAY_A2, DISPLAY_B2,
                           abs_tol=abs_tol, workers=workers),
        check_logder_bound(build_grid(per, LOGDER_REGION, SigmaMode.REGION_EDGES,
                                      seed=3000), DISPLAY_A2, DISPLAY_B2,
                           abs_tol=abs_tol, workers=workers),
    ]
    total_violations = sum(c["violations"] for c in checks)
    elementary_violations = sum(c["elementary_violations"] for c in checks)
    return {
        "total_samples": sum(c["samples"] for c in checks),
        "total_violations": total_violations,
        "elementary_violations": elementary_violations,
        "all_ok": total_violations == 0 and elementary_violations == 0,
        "checks": checks,
    }


def dump_samples_csv(report: dict, path: str) -> None:
    """Write the per-sample records of one check report as CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sigma", "t", "observed", "bound", "ratio"])
        for r in report["records"]:
            writer.writerow([repr(r["sigma"]), repr(r["t"]),
                             repr(r["observed"]), repr(r["bound"]),
                             repr(r["ratio"])])
