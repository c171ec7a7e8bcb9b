"""Romberg quadrature on fixed panels for the reciprocal-zeta and envelope integrals.

Romberg's method builds the trapezoid refinements T_i with step
(b - a) / 2^i, reusing previous evaluations, and Richardson-extrapolates

    R[i][0] = T_i,
    R[i][j] = R[i][j-1] + (R[i][j-1] - R[i-1][j-1]) / (4^j - 1),

so the diagonal R[i][i] has error O(h^(2i+2)) for smooth integrands.  The
iteration stops when successive diagonal entries differ by at most
rel_tol * |R[i][i]|; that difference is reported as the error estimate.

Long intervals are split into consecutive panels of fixed width (default
10 for the reciprocal-zeta integral), each integrated by an independent
Romberg pass.  Panels are pure, independent work units and may be farmed
out to worker processes; the merge adds per-panel values with exact
compensated summation (math.fsum) in ascending panel order, so the total
is identical for every worker count and evaluation order.

The envelope integrand u^(a1 * loglog u / (log u)^(2 sigma0 - 1)) is
integrated after the substitution u = e^v, which turns it into

    exp(v + a1 * v^(2 (1 - sigma0)) * log v)  dv,

a well-conditioned integrand on short v-panels (default width 1/2); the
substitution requires v = log u > 1, hence the lower limit must satisfy
lo >= e^2.

Integrand evaluators passed to romberg() must be vectorized: they are
called with a one-dimensional numpy array of abscissae and must return
an array of the same shape.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConvergenceError, DomainError
from .zeta import inv_abs_zeta_many

__all__ = [
    "QuadratureResult",
    "romberg",
    "integrate_inv_abs_zeta",
    "integrate_envelope",
    "envelope_integrand_log_space",
]

DEFAULT_PANEL_WIDTH = 10.0
DEFAULT_MAX_LEVELS = 16
DEFAULT_V_PANEL_WIDTH = 0.5
MIN_LEVELS = 3
MAX_LEVELS_CAP = 24
T_CEILING = 3.0e4
LO_FLOOR_ENVELOPE = math.exp(2.0)


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate, and work count of one integration run."""

    value: float
    error_estimate: float
    panels: int
    evaluations: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.error_estimate) or self.error_estimate < 0.0:
            raise DomainError("error_estimate must be finite and non-negative")
        if self.evaluations < self.panels:
            raise DomainError("evaluations must be at least the panel count")


def romberg(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
            rel_tol: float, max_levels: int = DEFAULT_MAX_LEVELS) -> QuadratureResult:
    """Integrate a vectorized evaluator over [a, b] by Romberg extrapolation.

    Converged when successive diagonal entries differ by at most
    rel_tol * |value|; the last diagonal difference is the error estimate.
    Raises ConvergenceError("non-convergent ...") if max_levels is reached
    first.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"need finite a < b; got [{a!r}, {b!r}]")
    if not (math.isfinite(rel_tol) and rel_tol > 0.0):
        raise DomainError(f"rel_tol must be positive; got {rel_tol!r}")
    if not (MIN_LEVELS <= max_levels <= MAX_LEVELS_CAP):
        raise DomainError(
            f"max_levels must lie in [{MIN_LEVELS}, {MAX_LEVELS_CAP}]; "
            f"got {max_levels!r}")

    width = b - a
    ends = np.asarray(f(np.array([a, b], dtype=np.float64)), dtype=np.float64)
    if ends.shape != (2,) or not np.all(np.isfinite(ends)):
        raise DomainError("integrand must map a length-2 array to finite values")
    evaluations = 2
    rows = [[width * float(ends[0] + ends[1]) / 2.0]]

    for i in range(1, max_levels + 1):
        h = width / 2.0 ** i
        mids = a + h * np.arange(1, 2 ** i, 2, dtype=np.float64)
        vals = np.asarray(f(mids), dtype=np.float64)
        if vals.shape != mids.shape or not np.all(np.isfinite(vals)):
            raise DomainError("integrand returned a malformed or non-finite batch")
        evaluations += len(mids)
        trap = rows[-1][0] / 2.0 + h * float(np.sum(vals))
        row = [trap]
        for j in range(1, i + 1):
            row.append(row[j - 1]
                       + (row[j - 1] - rows[-1][j - 1]) / (4.0 ** j - 1.0))
        diff = abs(row[i] - rows[-1][i - 1])
        rows.append(row)
        if diff <= rel_tol * abs(row[i]):
            return QuadratureResult(row[i], diff, 1, evaluations)

    raise ConvergenceError(
        f"non-convergent on [{a!r}, {b!r}] after {max_levels} levels; "
        f"last diagonal difference {diff:.3e}")


def envelope_integrand_log_space(sigma0: float, a1: float) -> Callable[[np.ndarray], np.ndarray]:
    """Return v -> exp(v + a1 * v^(2(1-sigma0)) * log v), the u = e^v image."""
    expo = 2.0 * (1.0 - sigma0)

    def g(vs: np.ndarray) -> np.ndarray:
        vs = np.asarray(vs, dtype=np.float64)
        return np.exp(vs + a1 * vs ** expo * np.log(vs))

    return g


def _panel_edges(lo: float, hi: float, width: float) -> list[float]:
    count = int(math.ceil((hi - lo) / width - 1e-12))
    edges = [lo + k * width for k in range(count)]
    edges.append(hi)
    return edges


def _eval_panel(task) -> tuple[float, float, int]:
    kind, p1, p2, a, b, rel_tol, max_levels = task
    if kind == "inv":
        f = lambda us: inv_abs_zeta_many(p1, us)
    else:
        f = envelope_integrand_log_space(p1, p2)
    r = romberg(f, a, b, rel_tol, max_levels)
    return r.value, r.error_estimate, r.evaluations


def _run_panels(tasks: list, workers: int, trace_path: Optional[str]) -> QuadratureResult:
    if workers > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=min(workers, len(tasks))) as pool:
            chunk = max(1, len(tasks) // (4 * workers))
            results = pool.map(_eval_panel, tasks, chunksize=chunk)
    else:
        results = [_eval_panel(t) for t in tasks]

    value = math.fsum(r[0] for r in results)
    err = math.fsum(r[1] for r in results)
    evals = sum(r[2] for r in results)
    if trace_path is not None:
        with open(trace_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["lo", "hi", "value", "error_estimate", "evaluations"])
            for task, r in zip(tasks, results):
                writer.writerow([repr(task[3]), repr(task[4]), repr(r[0]),
                                 repr(r[1]), r[2]])
    return QuadratureResult(value, err, len(tasks), evals)


def integrate_inv_abs_zeta(sigma0: float, lo: float, hi: float,
                           panel_width: float = DEFAULT_PANEL_WIDTH,
                           rel_tol: float = 1e-6,
                           max_levels: int = DEFAULT_MAX_LEVELS,
                           workers: int = 1,
                           trace_path: Optional[str] = None) -> QuadratureResult:
    """Integrate 1/|zeta(sigma0 + iu)| over [lo, hi] on consecutive panels.

    The error estimate is the sum of per-panel estimates; the value is an
    exact compensated sum over ascending panel index, independent of the
    evaluation order and worker count.  A panel that fails to converge
    propagates ConvergenceError naming its interval.
    """
    if not (0.9 <= sigma0 < 1.0):
        raise DomainError(f"sigma0={sigma0!r} outside [0.9, 1.0)")
    if not (0.0 <= lo <= hi <= T_CEILING):
        raise DomainError(f"need 0 <= lo <= hi <= {T_CEILING}; got [{lo!r}, {hi!r}]")
    if not (math.isfinite(panel_width) and panel_width > 0.0):
        raise DomainError(f"panel_width must be positive; got {panel_width!r}")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0, 0)
    edges = _panel_edges(lo, hi, panel_width)
    tasks = [("inv", sigma0, 0.0, edges[k], edges[k + 1], rel_tol, max_levels)
             for k in range(len(edges) - 1)]
    return _run_panels(tasks, workers, trace_path)


def integrate_envelope(sigma0: float, a1: float, lo: float, hi: float,
                       rel_tol: float = 1e-9,
                       max_levels: int = DEFAULT_MAX_LEVELS,
                       panel_width_v: float = DEFAULT_V_PANEL_WIDTH,
                       workers: int = 1,
                       trace_path: Optional[str] = None) -> QuadratureResult:
    """Integrate u^(a1 loglog u / (log u)^(2 sigma0 - 1)) du over [lo, hi].

    Evaluated in log space (u = e^v) on v-panels of width panel_width_v.
    Requires lo >= e^2 so the inner logarithm stays positive; a1 = 0
    degenerates to the integrand 1.
    """
    if not (0.5 < sigma0 < 1.0):
        raise DomainError(f"sigma0={sigma0!r} outside (0.5, 1.0)")
    if not (math.isfinite(a1) and a1 >= 0.0):
        raise DomainError(f"a1 must be non-negative; got {a1!r}")
    if not (lo >= LO_FLOOR_ENVELOPE and hi > lo and math.isfinite(hi)):
        raise DomainError(
            f"need e^2 <= lo < hi < inf; got [{lo!r}, {hi!r}]")
    if not (math.isfinite(panel_width_v) and panel_width_v > 0.0):
        raise DomainError(f"panel_width_v must be positive; got {panel_width_v!r}")
    edges = _panel_edges(math.log(lo), math.log(hi), panel_width_v)
    tasks = [("env", sigma0, a1, edges[k], edges[k + 1], rel_tol, max_levels)
             for k in range(len(edges) - 1)]
    return _run_panels(tasks, workers, trace_path)
