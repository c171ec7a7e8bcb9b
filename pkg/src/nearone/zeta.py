"""Euler-Maclaurin evaluation of the Riemann zeta function and its derivative.

For s = sigma + it with sigma > 0 and s != 1, every truncation point
N >= 2 gives the exact decomposition

    zeta(s) = sum_{n=1}^{N-1} n^(-s) + N^(1-s)/(s-1) + N^(-s)/2
              + sum_{k=1}^{K} T_k(s, N) + R_K(s, N),

    T_k(s, N) = B_{2k}/(2k)! * N^(1-s-2k) * prod_{j=0}^{2k-2} (s+j),

with B_{2k} the Bernoulli numbers (see nearone.bernoulli).  The remainder
after K correction terms obeys the classical estimate, valid for
sigma > -(2K+1):

    |R_K(s, N)| <= |T_{K+1}(s, N)| * |s + 2K + 1| / (sigma + 2K + 1).

Choosing N >= max(20, ceil(1.1 |t|)) keeps |s| / (2 pi N) <= 0.145, so the
correction terms decay by more than a factor 40 per step and a handful of
them reach double precision; the engine adds terms until the remainder
estimate clears the requested tolerance and doubles N if the asymptotic
tail stalls first.

Derivative.  zeta'(s) is evaluated by differentiating every piece term by
term: the main sum acquires -log n weights, the two tail terms are
differentiated in closed form, and each correction term satisfies
T_k'(s) = T_k(s) * (sum_{j=0}^{2k-2} 1/(s+j) - log N).  The remainder of
the differentiated series is bounded through the Cauchy integral formula
on the circle |w - s| = rho with rho = 5e-4:

    |R_K'(s)| <= max_{|w-s|=rho} |R_K(w)| / rho,

and the right side is majorized by the remainder estimate evaluated with
Re w >= sigma - rho and |w| <= |s| + rho, computed in log space to avoid
overflow of the intermediate product.

Rounding allowance.  Reported error bounds add a worst-case model of the
double-precision rounding error.  Writing eps for the unit roundoff step
(2^-52), S1 for an integral upper bound on sum n^(-sigma), and M for the
total magnitude of all accumulated terms, the model charges

    eps * ((log2 N + 28) * M  +  2 |t| log N * S1):

the first part covers pairwise summation and the O(10) scalar operations
per term, the second the phase error of exp(-i t log n), whose argument
is computed in double precision with relative error below 2 eps (log n
and the product each contribute at most one unit).  The derivative model
is identical with every weight inflated by log N.  This floor is what
makes very small tolerances unreachable at large |t|; the engine raises
ConvergenceError("tolerance unreachable ...") rather than returning a
bound it cannot honor.

Supported domain: sigma in [0.4, 3], |t| <= 1e5, |s - 1| >= 1e-3; the
derivative additionally keeps a 1e-3 margin from the sigma and t edges.
Negative t is folded to positive by the reflection zeta(conj s) =
conj(zeta(s)).  All evaluation is pure and safe for concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .bernoulli import BERNOULLI_EVEN
from .errors import ConvergenceError, DomainError

__all__ = [
    "ComplexPoint",
    "EvaluatedValue",
    "zeta",
    "zeta_prime",
    "zeta_with_prime",
    "zeta_many",
    "inv_abs_zeta",
    "inv_abs_zeta_many",
    "SIGMA_MIN",
    "SIGMA_MAX",
    "T_MAX",
    "POLE_MARGIN",
    "ZETA_FLOOR",
]

SIGMA_MIN = 0.4
SIGMA_MAX = 3.0
T_MAX = 1.0e5
POLE_MARGIN = 1.0e-3
EDGE_MARGIN = 1.0e-3          # extra boundary distance required by zeta_prime
DERIV_RADIUS = 5.0e-4         # Cauchy circle radius; < EDGE_MARGIN by design
MIN_ABS_TOL = 1.0e-13
DEFAULT_ABS_TOL = 1.0e-10
ZETA_FLOOR = 1.0e-3           # |zeta| guard for the reciprocal integrand
INV_REL_TOL = 9.0e-9          # internal target giving 1/|zeta| rel err <= 1e-8

_EPS = math.ulp(1.0)          # 2^-52
_PHASE_ROUNDING = 2.0
_SUM_SLACK = 28.0
_SUM_SLACK_PRIME = 38.0
_CHUNK = 1 << 21              # max elements of the (points x terms) phase matrix
_MAX_DOUBLINGS = 3

# B_{2k}/(2k)! for k = 1..31, exact rationals rounded once to double.
_BFAC = tuple(
    float(Fraction(num, den) / math.factorial(2 * k))
    for k, (num, den) in enumerate(BERNOULLI_EVEN, start=1)
)
_LOG_ABS_BFAC = tuple(math.log(abs(b)) for b in _BFAC)


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = sigma + it of the complex plane."""

    sigma: float
    t: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise DomainError("ComplexPoint requires finite coordinates")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class EvaluatedValue:
    """An evaluation result with a rigorous absolute error bound.

    terms_used is the truncation point N of the main Dirichlet sum.
    """

    value: complex
    abs_error_bound: float
    terms_used: int

    def __post_init__(self) -> None:
        if not (self.abs_error_bound >= 0.0 and math.isfinite(self.abs_error_bound)):
            raise DomainError("abs_error_bound must be finite and non-negative")
        if self.terms_used < 1:
            raise DomainError("terms_used must be a positive integer")


class _RoundingFloor(Exception):
    """Internal: tolerance below the rounding floor; N growth cannot help."""

    def __init__(self, floor: float, t: float, basis: float) -> None:
        super().__init__()
        self.floor = floor
        self.t = t
        self.basis = basis


class _TruncationStall(Exception):
    """Internal: correction terms exhausted or diverging at this N."""


def _power_sum_bound(N: int, a: float) -> float:
    """Upper bound for sum_{n=1}^{N-1} n^(-a) via integral comparison, a > 0."""
    if abs(a - 1.0) < 1.0e-12:
        return 1.0 + math.log(N)
    return 1.0 + (N ** (1.0 - a) - 1.0) / (1.0 - a)


def _coerce_point(s: Union[ComplexPoint, complex, float]) -> tuple[float, float]:
    if isinstance(s, ComplexPoint):
        return float(s.sigma), float(s.t)
    z = complex(s)
    return z.real, z.imag


def _check_domain(sigma: float, t: float, margin: float = 0.0) -> None:
    if not (math.isfinite(sigma) and math.isfinite(t)):
        raise DomainError("non-finite coordinates")
    if sigma < SIGMA_MIN + margin or sigma > SIGMA_MAX - margin:
        raise DomainError(
            f"sigma={sigma!r} outside supported strip "
            f"[{SIGMA_MIN + margin}, {SIGMA_MAX - margin}]")
    if abs(t) > T_MAX - margin:
        raise DomainError(f"|t|={abs(t)!r} exceeds supported height {T_MAX - margin}")
    if abs(complex(sigma, t) - 1.0) < POLE_MARGIN:
        raise DomainError(
            f"s={complex(sigma, t)!r} within {POLE_MARGIN} of the pole at s=1")


def _check_tol(abs_tol: float) -> None:
    if not (math.isfinite(abs_tol) and abs_tol >= MIN_ABS_TOL):
        raise DomainError(f"abs_tol must be >= {MIN_ABS_TOL}; got {abs_tol!r}")


def _attempt(sigma: float, ts: np.ndarray, N: int, abs_tol: float,
             rel_tol: float, want_prime: bool):
    """One Euler-Maclaurin pass at fixed truncation point N.

    ts must be non-negative.  Returns (values, primes, bounds, bounds_prime)
    with primes/bounds_prime None unless want_prime.  Raises _RoundingFloor
    if some point's tolerance sits below the rounding model (final), or
    _TruncationStall if the correction terms cannot clear the budget at
    this N (retryable with larger N).
    """
    npts = len(ts)
    lnN = math.log(N)
    log2N = math.log2(N)
    S1 = _power_sum_bound(N, sigma)

    n = np.arange(1, N, dtype=np.float64)
    logn = np.log(n)
    amp = np.exp(-sigma * logn)
    amp_log = amp * logn if want_prime else None

    values = np.empty(npts, dtype=np.complex128)
    primes = np.empty(npts, dtype=np.complex128) if want_prime else None
    bounds = np.empty(npts, dtype=np.float64)
    bounds_p = np.empty(npts, dtype=np.float64) if want_prime else None

    rows = max(1, _CHUNK // max(N - 1, 1))
    for start in range(0, npts, rows):
        tc = ts[start:start + rows]
        phases = np.outer(tc, logn)
        cis = np.exp(-1j * phases)
        del phases
        main = cis @ amp
        main_p = -(cis @ amp_log) if want_prime else None
        del cis

        s = sigma + 1j * tc
        sm1 = s - 1.0
        abs_sm1 = np.abs(sm1)
        abs_s = np.abs(s)
        nphase = np.exp(-1j * tc * lnN)
        npow = N ** (1.0 - sigma) * nphase
        half = 0.5 * N ** (-sigma)

        value = main + npow / sm1 + half * nphase
        mag = S1 + N ** (1.0 - sigma) / abs_sm1 + half
        phase_floor = _PHASE_ROUNDING * _EPS * tc * lnN * S1

        prime = magp = phase_floor_p = None
        if want_prime:
            prime = (main_p
                     + npow * (-lnN / sm1 - 1.0 / sm1 ** 2)
                     - lnN * half * nphase)
            magp = (lnN * S1
                    + N ** (1.0 - sigma) * (lnN / abs_sm1 + 1.0 / abs_sm1 ** 2)
                    + lnN * half)
            phase_floor_p = phase_floor * lnN

        # Correction terms.  Q_k = N^(1-s-2k) * prod_{j<=2k-2}(s+j); at
        # iteration k the remainder of stopping with k-1 terms is checked
        # through T_k before T_k is added.
        Q = npow / (N * N) * s
        psum = 1.0 / s if want_prime else None
        logpoly_rho = np.log(abs_s + DERIV_RADIUS)
        trunc = trunc_p = None
        prev_worst = math.inf
        for k in range(1, len(_BFAC) + 1):
            Tk = _BFAC[k - 1] * Q
            abs_Tk = np.abs(Tk)
            rem = abs_Tk * (abs_s + (2 * k - 1)) / (sigma + (2 * k - 1))
            floor_v = _EPS * ((log2N + _SUM_SLACK) * mag + 0.0) + phase_floor
            basis = np.maximum(abs_tol, rel_tol * np.maximum(np.abs(value), ZETA_FLOOR))
            bad = basis <= floor_v
            if np.any(bad):
                i = int(np.argmax(bad))
                raise _RoundingFloor(float(floor_v[i]), float(tc[i]), float(basis[i]))
            ok = bool(np.all(rem <= basis - floor_v))
            rem_p = floor_p = None
            if want_prime:
                log_rem_p = (_LOG_ABS_BFAC[k - 1]
                             + (1.0 - (sigma - DERIV_RADIUS) - 2 * k) * lnN
                             + logpoly_rho
                             + np.log((abs_s + DERIV_RADIUS + 2 * k - 1)
                                      / (sigma - DERIV_RADIUS + 2 * k - 1))
                             - math.log(DERIV_RADIUS))
                rem_p = np.exp(log_rem_p)
                floor_p = _EPS * (log2N + _SUM_SLACK_PRIME) * magp + phase_floor_p
                basis_p = np.maximum(abs_tol,
                                     rel_tol * np.maximum(np.abs(prime), ZETA_FLOOR))
                bad_p = basis_p <= floor_p
                if np.any(bad_p):
                    i = int(np.argmax(bad_p))
                    raise _RoundingFloor(float(floor_p[i]), float(tc[i]),
                                         float(basis_p[i]))
                ok = ok and bool(np.all(rem_p <= basis_p - floor_p))
            if ok:
                trunc = rem + floor_v
                if want_prime:
                    trunc_p = rem_p + floor_p
                break
            worst = float(np.max(rem))
            if k >= 4 and worst > prev_worst:
                raise _TruncationStall
            prev_worst = worst

            value = value + Tk
            mag = mag + abs_Tk
            if want_prime:
                Tkp = Tk * (psum - lnN)
                prime = prime + Tkp
                magp = magp + np.abs(Tkp)
                f1 = s + (2 * k - 1)
                f2 = s + 2 * k
                psum = psum + 1.0 / f1 + 1.0 / f2
                Q = Q * f1 * f2 / (N * N)
            else:
                Q = Q * (s + (2 * k - 1)) * (s + 2 * k) / (N * N)
            logpoly_rho = (logpoly_rho
                           + np.log(abs_s + DERIV_RADIUS + 2 * k - 1)
                           + np.log(abs_s + DERIV_RADIUS + 2 * k))
        else:
            raise _TruncationStall

        values[start:start + rows] = value
        bounds[start:start + rows] = trunc
        if want_prime:
            primes[start:start + rows] = prime
            bounds_p[start:start + rows] = trunc_p

    return values, primes, bounds, bounds_p


def _eval_block(sigma: float, ts: np.ndarray, abs_tol: float, rel_tol: float,
                want_prime: bool):
    """Evaluate a block of non-negative heights sharing one truncation point.

    N is set from the largest height in the block, so callers should pass
    heights of comparable magnitude.  Returns (values, primes, bounds,
    bounds_prime, N).
    """
    tmax = float(np.max(ts)) if len(ts) else 0.0
    N = max(20, int(math.ceil(1.1 * tmax)))
    for _ in range(_MAX_DOUBLINGS + 1):
        try:
            values, primes, bounds, bounds_p = _attempt(
                sigma, ts, N, abs_tol, rel_tol, want_prime)
            return values, primes, bounds, bounds_p, N
        except _RoundingFloor as exc:
            raise ConvergenceError(
                "tolerance unreachable: rounding floor "
                f"{exc.floor:.3e} exceeds the budget {exc.basis:.3e} "
                f"at sigma={sigma!r}, t={exc.t!r}") from None
        except _TruncationStall:
            N *= 2
    raise ConvergenceError(
        f"tolerance unreachable: correction terms exhausted up to N={N} "
        f"at sigma={sigma!r}")


def _eval_scalar(sigma: float, t: float, abs_tol: float, want_prime: bool):
    ts = np.array([abs(t)], dtype=np.float64)
    values, primes, bounds, bounds_p, N = _eval_block(
        sigma, ts, abs_tol, 0.0, want_prime)
    value = complex(values[0])
    prime = complex(primes[0]) if want_prime else None
    if t < 0.0:
        value = value.conjugate()
        prime = prime.conjugate() if want_prime else None
    bound = float(bounds[0])
    bound_p = float(bounds_p[0]) if want_prime else None
    return value, prime, bound, bound_p, N


def zeta(s: Union[ComplexPoint, complex, float],
         abs_tol: float = DEFAULT_ABS_TOL) -> EvaluatedValue:
    """Evaluate zeta(s) with |value - zeta(s)| <= abs_error_bound <= abs_tol.

    Raises DomainError outside the supported strip and ConvergenceError
    when abs_tol sits below the attainable rounding floor.
    """
    _check_tol(abs_tol)
    sigma, t = _coerce_point(s)
    _check_domain(sigma, t)
    value, _, bound, _, N = _eval_scalar(sigma, t, abs_tol, False)
    return EvaluatedValue(value, bound, N)


def zeta_prime(s: Union[ComplexPoint, complex, float],
               abs_tol: float = DEFAULT_ABS_TOL) -> EvaluatedValue:
    """Evaluate zeta'(s) with |value - zeta'(s)| <= abs_error_bound <= abs_tol.

    Requires s at distance >= 1e-3 from the strip boundary so the Cauchy
    circle of radius 5e-4 used by the remainder bound stays inside.
    """
    _check_tol(abs_tol)
    sigma, t = _coerce_point(s)
    _check_domain(sigma, t, margin=EDGE_MARGIN)
    _, prime, _, bound_p, N = _eval_scalar(sigma, t, abs_tol, True)
    return EvaluatedValue(prime, bound_p, N)


def zeta_with_prime(s: Union[ComplexPoint, complex, float],
                    abs_tol: float = DEFAULT_ABS_TOL
                    ) -> tuple[EvaluatedValue, EvaluatedValue]:
    """Evaluate zeta(s) and zeta'(s) together, sharing the main sum."""
    _check_tol(abs_tol)
    sigma, t = _coerce_point(s)
    _check_domain(sigma, t, margin=EDGE_MARGIN)
    value, prime, bound, bound_p, N = _eval_scalar(sigma, t, abs_tol, True)
    return EvaluatedValue(value, bound, N), EvaluatedValue(prime, bound_p, N)


def zeta_many(sigma: float, ts: Sequence[float],
              abs_tol: float = DEFAULT_ABS_TOL) -> tuple[np.ndarray, np.ndarray, int]:
    """Evaluate zeta(sigma + it) for a batch of heights of similar size.

    One truncation point serves the whole batch (set by max |t|), so this
    is intended for clustered heights such as quadrature nodes of one
    panel.  Returns (values, abs_error_bounds, terms_used).
    """
    _check_tol(abs_tol)
    arr = np.asarray(ts, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError("ts must be one-dimensional")
    if len(arr) == 0:
        return np.empty(0, dtype=np.complex128), np.empty(0), 20
    for t in arr:
        _check_domain(sigma, float(t))
    neg = arr < 0.0
    values, _, bounds, _, N = _eval_block(sigma, np.abs(arr), abs_tol, 0.0, False)
    values = np.where(neg, np.conj(values), values)
    return values, bounds, N


def _inv_block(sigma0: float, ts_abs: np.ndarray) -> np.ndarray:
    values, _, bounds, _, _ = _eval_block(sigma0, ts_abs, 0.0, INV_REL_TOL, False)
    abs_v = np.abs(values)
    bad = abs_v - bounds < ZETA_FLOOR
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(
            f"|zeta({sigma0!r} + {float(ts_abs[i])!r}i)| = {float(abs_v[i]):.6f} "
            f"is below the {ZETA_FLOOR} reciprocal guard")
    return 1.0 / abs_v


def _check_sigma0(sigma0: float) -> None:
    if not (0.9 <= sigma0 < 1.0):
        raise DomainError(f"sigma0={sigma0!r} outside [0.9, 1.0)")


def inv_abs_zeta(sigma0: float, t: float) -> float:
    """Return 1/|zeta(sigma0 + it)| with relative error <= 1e-8.

    sigma0 must lie in [0.9, 1.0); t of either sign is accepted since
    |zeta| is even in t.  Raises DomainError if |zeta| falls below the
    1e-3 guard (cannot happen for sigma0 in this range at moderate t, but
    checked unconditionally) and propagates engine errors.
    """
    _check_sigma0(sigma0)
    _check_domain(sigma0, t)
    return float(_inv_block(sigma0, np.array([abs(t)], dtype=np.float64))[0])


def inv_abs_zeta_many(sigma0: float, ts: Sequence[float]) -> np.ndarray:
    """Vectorized inv_abs_zeta over clustered heights (one shared N)."""
    _check_sigma0(sigma0)
    arr = np.asarray(ts, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError("ts must be one-dimensional")
    if len(arr) == 0:
        return np.empty(0)
    for t in arr:
        _check_domain(sigma0, float(t))
    return _inv_block(sigma0, np.abs(arr))
