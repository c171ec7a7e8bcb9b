"""Fully explicit constants (a, b) for bounds near the 1-line.

Given a growth profile (d, m, l, C, c, T) and tunable parameters
(C1, C2, C3, C4, T1, T2, t0), this module evaluates the closed-form
constants of the two bound shapes

    |log L(s)|      <= a1 * (b1 * log(c|t|))^(2(1-sigma)) * loglog(c|t|)
    |L'/L(s)|       <= a2 * (b2 * log(c|t|))^(2(1-sigma)) * (loglog(c|t|))^2

valid on the region 1/2 + A/loglog(c|t|) <= sigma <= 1 + B/loglog(c|t|)
for |t| >= t0, where (A, B) is reported as ``sigma_region``.  The central
ingredient is

    K(d, m, l, C, C1, t0') = d/4 + C1 d / (2 loglog t0')
        + (1 + 2 C1/loglog t0') * ( l loglog t0'/log t0'
            + (m/log t0') (logloglog t0' + log(1/C1)
                           + gamma C1/loglog t0')
            + log+ C / log t0' )

together with two window factors F1, F2 depending on (C3, T1), giving

    b1 = (K(d, m, l, C, C1, T2)/m) * F1 * F2 ,

and the exponential rate

    R(C2, C3, T1) = (2 C2 + 1/(2 C3)) / (1 - 1/(4 C3 loglog T1)) .

Every hypothesis of the underlying statements is validated by name before
anything is computed; ``hypothesis_report`` exposes the full pass/fail list
for machine-readable reports.  All arithmetic is IEEE float64; rounding
helpers that only ever round upward are provided so displayed constants
stay valid bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_CEILING

from .errors import DomainError, HypothesisError
from .profiles import GAMMA_EULER, LFunctionProfile, T0_DEFAULT, DEDEKIND_AMPLITUDE

# Safety inflation of the derivative-bound prefactor; absorbs the +-1 shift
# of the imaginary part and the loglog inflation incurred when re-centering
# the local bound.
A2_INFLATION = 1.0002
# Left-edge stretch of the derivative sigma-region.
REGION_STRETCH = 1.00006
# C4 must stay strictly below C2/2; this divisor enforces the gap.
C4_GAP = 2.0001
# Phase-shift inflation arising mid-derivation; already absorbed into
# A2_INFLATION, kept as a named constant for traceability.
PHASE_SLACK = 1.00009

# Floor under which the iterated logarithms in K are all positive and
# monotone: exp(e^2) ~ 1618.18.
ITERLOG_FLOOR = math.exp(math.e ** 2)

TARGET_LOG = "log"
TARGET_LOGDER = "logder"


def loglog(x: float) -> float:
    """log(log(x)); the argument must exceed e."""
    if x <= math.e:
        raise DomainError(f"loglog needs x > e, got {x}")
    return math.log(math.log(x))


def logloglog(x: float) -> float:
    """log(log(log(x))); the argument must exceed e."""
    if x <= math.e:
        raise DomainError(f"logloglog needs x > e, got {x}")
    return math.log(math.log(math.log(x)))


def logplus(x: float) -> float:
    """max(0, log x) for x > 0."""
    if x <= 0:
        raise DomainError(f"logplus needs x > 0, got {x}")
    return max(0.0, math.log(x))


def ceil_decimals(x: float, places: int) -> float:
    """Round x up (toward +inf) at the given number of decimal places."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_CEILING))


def ceil_sigfigs(x: float, digits: int) -> float:
    """Round x up (toward +inf) at the given number of significant figures."""
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    if x == 0:
        return 0.0
    d = Decimal(repr(x))
    q = Decimal(1).scaleb(d.adjusted() - digits + 1)
    return float(d.quantize(q, rounding=ROUND_CEILING))


@dataclass(frozen=True)
class BoundParams:
    """Tunable parameters of one constants computation.

    C4 is only meaningful for the derivative target and stays None
    otherwise.  t0 is the height floor of the region on which the final
    bound is asserted; T1, T2 are the interior heights the derivation runs
    through and C3 controls the window between them.
    """

    C1: float
    C2: float
    C3: float
    T1: float
    T2: float
    t0: float
    C4: float | None = None

    def as_dict(self) -> dict:
        d = {"C1": self.C1, "C2": self.C2, "C3": self.C3,
             "T1": self.T1, "T2": self.T2, "t0": self.t0}
        if self.C4 is not None:
            d["C4"] = self.C4
        return d


@dataclass(frozen=True)
class BoundConstants:
    """Computed constants of one bound, with the region they are valid on."""

    a: float
    b: float
    sigma_region: tuple[float, float]  # (A, B): 1/2 + A/loglog <= sigma <= 1 + B/loglog
    target: str

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b,
                "sigma_region": list(self.sigma_region), "target": self.target}


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    ok: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _check(name: str, ok: bool, detail: str) -> HypothesisCheck:
    return HypothesisCheck(name, bool(ok), detail)


def _exp_exp(x: float) -> float:
    """exp(exp(x)), saturating to +inf instead of raising OverflowError."""
    y = math.exp(x) if x < 710 else math.inf
    return math.exp(y) if y < 710 else math.inf


def hypothesis_report(profile: LFunctionProfile, params: BoundParams,
                      target: str) -> list[HypothesisCheck]:
    """Evaluate every named hypothesis of the chosen target; never raises.

    Checks whose prerequisites are unavailable (for example a loglog of an
    argument that is too small) are reported as failed rather than raising,
    so the report is always complete.
    """
    if target not in (TARGET_LOG, TARGET_LOGDER):
        raise DomainError(f"unknown target {target!r}")
    p = params
    d, m = profile.degree, profile.euler_order
    c, T = profile.conductor_scale, profile.min_height
    deriv = target == TARGET_LOGDER

    checks = [
        _check("C1-range", 0 < p.C1 <= 1, f"need 0 < C1 <= 1, got C1={p.C1}"),
        _check("C2-range", 0 < p.C2 <= 2 * p.C1,
               f"need 0 < C2 <= 2*C1={2 * p.C1}, got C2={p.C2}"),
        _check("C3-floor", p.C3 >= 1, f"need C3 >= 1, got C3={p.C3}"),
    ]
    if deriv:
        c4_ok = p.C4 is not None and 0 < p.C4 <= p.C2 / C4_GAP
        checks.append(_check(
            "C4-range", c4_ok,
            f"need 0 < C4 <= C2/{C4_GAP}={p.C2 / C4_GAP}, got C4={p.C4}"))
        edge = REGION_STRETCH * p.C2 + (p.C4 if p.C4 is not None else 0.0)
    else:
        edge = p.C2

    t1_floor = max(_exp_exp(2 * edge), math.exp(4 * m / d),
                   p.C3, ITERLOG_FLOOR) + (1 if deriv else 0)
    checks.append(_check("T1-floor", p.T1 >= t1_floor,
                         f"need T1 >= {t1_floor}, got T1={p.T1}"))

    gap_need = 1.0 if deriv else 0.0
    if p.T1 > math.e:
        gap = p.T1 - 2 * p.C3 * loglog(p.T1)
        checks.append(_check("T1-gap", gap >= gap_need,
                             f"need T1 - 2*C3*loglog(T1) >= {gap_need}, got {gap}"))
    else:
        checks.append(_check("T1-gap", False, f"T1={p.T1} too small for loglog"))

    checks.append(_check("t0-floor", p.t0 >= p.T1,
                         f"need t0 >= T1={p.T1}, got t0={p.t0}"))

    margin = 1.5 if deriv else 0.5
    if c * p.t0 > math.e:
        win = p.t0 - p.C3 * loglog(c * p.t0) - margin
        checks.append(_check(
            "T2-window", win >= p.T2,
            f"need t0 - C3*loglog(c*t0) - {margin} = {win} >= T2={p.T2}"))
    else:
        checks.append(_check("T2-window", False,
                             f"c*t0={c * p.t0} too small for loglog"))

    t2_floor = max(T + 1, ITERLOG_FLOOR)
    checks.append(_check("T2-floor", p.T2 >= t2_floor,
                         f"need T2 >= {t2_floor}, got T2={p.T2}"))
    return checks


def _require(checks: list[HypothesisCheck]) -> None:
    for ch in checks:
        if not ch.ok:
            raise HypothesisError(ch.name, ch.detail)


def compute_K(profile: LFunctionProfile, C1: float, t0_prime: float) -> float:
    """The kernel K(d, m, l, C, C1, t0') of the b-constant.

    Requires 0 < C1 <= 1 and t0' >= max(T+1, exp(e^2)); under these the
    result is guaranteed >= d/4 since every addend is nonnegative.
    """
    if not 0 < C1 <= 1:
        raise HypothesisError("C1-range", f"need 0 < C1 <= 1, got {C1}")
    floor = max(profile.min_height + 1, ITERLOG_FLOOR)
    if t0_prime < floor:
        raise HypothesisError("t0-prime-floor",
                              f"need t0' >= {floor}, got {t0_prime}")
    d, m = profile.degree, profile.euler_order
    L = math.log(t0_prime)
    ll = loglog(t0_prime)
    lll = logloglog(t0_prime)
    return (d / 4 + C1 * d / (2 * ll)
            + (1 + 2 * C1 / ll)
            * (profile.log_power * ll / L
               + (m / L) * (lll + math.log(1 / C1) + GAMMA_EULER * C1 / ll)
               + logplus(profile.amplitude) / L))


def _window_factors(C3: float, T1: float) -> tuple[float, float]:
    L1 = math.log(T1)
    ll1 = loglog(T1)
    f1 = 1 + math.log(1 + (C3 * ll1 + 1.5) / T1) / L1
    f2 = 1 + math.log(1 + math.log(1 + (2 * C3 * ll1 + 1) / T1) / L1) / ll1
    return f1, f2


def _b1_checks(profile: LFunctionProfile, C1: float, C3: float,
               T1: float, T2: float) -> list[HypothesisCheck]:
    d, m = profile.degree, profile.euler_order
    checks = [
        _check("C1-range", 0 < C1 <= 1, f"need 0 < C1 <= 1, got C1={C1}"),
        _check("C3-floor", C3 >= 1, f"need C3 >= 1, got C3={C3}"),
    ]
    floor = max(math.exp(4 * m / d), C3, ITERLOG_FLOOR)
    checks.append(_check("T1-floor", T1 >= floor,
                         f"need T1 >= {floor}, got T1={T1}"))
    if T1 > math.e:
        gap = T1 - 2 * C3 * loglog(T1)
        checks.append(_check("T1-gap", gap >= 0,
                             f"need T1 - 2*C3*loglog(T1) >= 0, got {gap}"))
    else:
        checks.append(_check("T1-gap", False, f"T1={T1} too small for loglog"))
    t2_floor = max(profile.min_height + 1, ITERLOG_FLOOR)
    checks.append(_check("T2-floor", T2 >= t2_floor,
                         f"need T2 >= {t2_floor}, got T2={T2}"))
    return checks


def compute_b1(profile: LFunctionProfile, C1: float, C3: float,
               T1: float, T2: float) -> float:
    """The b-constant (K(..., T2)/m) * F1(C3, T1) * F2(C3, T1), always >= d/(4m)."""
    _require(_b1_checks(profile, C1, C3, T1, T2))
    f1, f2 = _window_factors(C3, T1)
    return (compute_K(profile, C1, T2) / profile.euler_order) * f1 * f2


def compute_R(C2: float, C3: float, T1: float) -> float:
    """Exponential rate (2 C2 + 1/(2 C3)) / (1 - 1/(4 C3 loglog T1))."""
    if C2 <= 0:
        raise HypothesisError("C2-range", f"need C2 > 0, got {C2}")
    if C3 < 1:
        raise HypothesisError("C3-floor", f"need C3 >= 1, got {C3}")
    if T1 < ITERLOG_FLOOR:
        raise HypothesisError("T1-floor",
                              f"need T1 >= {ITERLOG_FLOOR}, got {T1}")
    den = 1 - 1 / (4 * C3 * loglog(T1))
    return (2 * C2 + 1 / (2 * C3)) / den


def _a1_value(m: float, C2: float, b: float, R: float, ll_t1: float) -> float:
    return (m / C2) * math.exp((1 + logplus(b) / ll_t1) * R)


def _a2_value(m: float, C2: float, C4: float, b2: float, R2: float,
              ll_t1: float, ll_t1m1: float) -> float:
    return (A2_INFLATION * m / (C2 * C4)) * math.exp(
        2 * C4 * (1 + logplus(b2) / ll_t1)
        + (1 + logplus(b2) / ll_t1m1) * R2)


def compute_a1(profile: LFunctionProfile, params: BoundParams) -> BoundConstants:
    """Constants of the |log L| bound; region (C2, C2) around the 1-line.

    Validates the full hypothesis list of the log target and raises
    HypothesisError naming the first violated condition.
    """
    _require(hypothesis_report(profile, params, TARGET_LOG))
    p = params
    b = compute_b1(profile, p.C1, p.C3, p.T1, p.T2)
    a = _a1_value(profile.euler_order, p.C2, b,
                  compute_R(p.C2, p.C3, p.T1), loglog(p.T1))
    return BoundConstants(a=a, b=b, sigma_region=(p.C2, p.C2), target=TARGET_LOG)


def compute_a2(profile: LFunctionProfile, params: BoundParams) -> BoundConstants:
    """Constants of the |L'/L| bound; region (1.00006 C2 + C4, C4).

    The b-constant and the rate are evaluated at T1 - 1: the derivative
    bound is assembled from log-bounds on a unit strip below T1.
    """
    _require(hypothesis_report(profile, params, TARGET_LOGDER))
    p = params
    b2 = compute_b1(profile, p.C1, p.C3, p.T1 - 1, p.T2)
    a = _a2_value(profile.euler_order, p.C2, p.C4, b2,
                  compute_R(p.C2, p.C3, p.T1 - 1),
                  loglog(p.T1), loglog(p.T1 - 1))
    region = (REGION_STRETCH * p.C2 + p.C4, p.C4)
    return BoundConstants(a=a, b=b2, sigma_region=region, target=TARGET_LOGDER)


def dedekind_split(C1: float, C3: float, T1: float, T2: float) -> tuple[float, float]:
    """Degree-independent split (K1, K2) of the Dedekind b-constant.

    For the degree-n_K Dedekind profile, b1 = K1 + K2/n_K: the kernel keeps
    the shape of the degree-1 case except for the amplitude term
    log(1.9)/log T2, whose weight decays like 1/n_K.  Validated against the
    default Dedekind height floor (min_height 7778).
    """
    if not 0 < C1 <= 1:
        raise HypothesisError("C1-range", f"need 0 < C1 <= 1, got {C1}")
    if C3 < 1:
        raise HypothesisError("C3-floor", f"need C3 >= 1, got {C3}")
    floor = max(math.exp(4.0), C3, ITERLOG_FLOOR)
    if T1 < floor:
        raise HypothesisError("T1-floor", f"need T1 >= {floor}, got {T1}")
    if T1 - 2 * C3 * loglog(T1) < 0:
        raise HypothesisError("T1-gap",
                              f"need T1 - 2*C3*loglog(T1) >= 0 at T1={T1}")
    t2_floor = max(T0_DEFAULT + 1, ITERLOG_FLOOR)
    if T2 < t2_floor:
        raise HypothesisError("T2-floor", f"need T2 >= {t2_floor}, got {T2}")
    L2 = math.log(T2)
    ll2 = loglog(T2)
    weight = 1 + 2 * C1 / ll2
    base = (0.25 + C1 / (2 * ll2)
            + weight * (ll2 / L2
                        + (logloglog(T2) + math.log(1 / C1)
                           + GAMMA_EULER * C1 / ll2) / L2))
    extra = weight * math.log(DEDEKIND_AMPLITUDE) / L2
    f1, f2 = _window_factors(C3, T1)
    return base * f1 * f2, extra * f1 * f2


def elementary_bounds(euler_order: int, B: float, conductor_scale: float,
                      t: float, t0: float) -> tuple[float, float]:
    """Bounds on (|log L|, |L'/L|) valid for sigma >= 1 + B/loglog(c|t|).

    Away from the critical strip both follow from the Euler product alone:

        |log L|  <= m logloglog(c|t|) + m log(1/B) + m gamma B / loglog(t0)
        |L'/L|   <= (m/B) loglog(c|t|)

    for |t| >= t0.  Requires B > 0, c >= 1 and t0 > e^e so the iterated
    logs are positive.
    """
    if B <= 0:
        raise HypothesisError("B-positive", f"need B > 0, got {B}")
    if conductor_scale < 1:
        raise DomainError(f"conductor_scale must be >= 1, got {conductor_scale}")
    if t0 <= math.exp(math.e):
        raise HypothesisError("t0-floor", f"need t0 > e^e, got {t0}")
    if abs(t) < t0:
        raise HypothesisError("t-floor", f"need |t| >= t0={t0}, got t={t}")
    m = euler_order
    ct = conductor_scale * abs(t)
    log_bound = (m * logloglog(ct) + m * math.log(1 / B)
                 + m * GAMMA_EULER * B / loglog(t0))
    logder_bound = (m / B) * loglog(ct)
    return log_bound, logder_bound


def constants_report(profile: LFunctionProfile, params: BoundParams,
                     target: str) -> dict:
    """Machine-readable report: inputs, hypothesis list, computed constants.

    The constants block is present only when every hypothesis passes.
    Display values are rounded upward (2 decimals for a1, 3 for a2) so they
    remain valid bounds.
    """
    checks = hypothesis_report(profile, params, target)
    report = {
        "target": target,
        "profile": {
            "degree": profile.degree,
            "euler_order": profile.euler_order,
            "log_power": profile.log_power,
            "amplitude": profile.amplitude,
            "conductor_scale": profile.conductor_scale,
            "min_height": profile.min_height,
        },
        "parameters": params.as_dict(),
        "hypotheses": [ch.as_dict() for ch in checks],
        "hypotheses_ok": all(ch.ok for ch in checks),
    }
    if report["hypotheses_ok"]:
        fn = compute_a1 if target == TARGET_LOG else compute_a2
        bc = fn(profile, params)
        places = 2 if target == TARGET_LOG else 3
        report["constants"] = bc.as_dict()
        report["constants"]["a_display"] = ceil_decimals(bc.a, places)
        report["constants"]["b_display"] = ceil_decimals(bc.b, 3)
    return report
