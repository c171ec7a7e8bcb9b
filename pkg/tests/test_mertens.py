"""Tests for the explicit Mertens bound pipeline and the Mobius sieve.

Chain reference values (epsilon0, coefficients, crossover) were computed
with an independent 50-digit evaluation of the same closed forms and
frozen here; Mertens function spot values M(10^k) are classical.
"""

import math

import numpy as np
import pytest

from nearone.constants import ceil_decimals, ceil_sigfigs, loglog
from nearone.errors import DomainError, HypothesisError, NoCrossoverError
from nearone.mertens import (
    MertensBoundSpec,
    compute_epsilon0,
    crossover_trivial,
    default_T2,
    derive_m_bound,
    epsilon0_hypotheses,
    mertens_bound,
    mertens_from_first_principles,
    sieve_mobius,
    verify_bound_on_range,
)

EPS0_ORACLE = 0.998851918717975160454122
T2_ORACLE = 25997161.96617350835
KAPPA_ORACLE = 0.9899942562964706200116843
COEF_SIGMA0_ORACLE = 193259588323242.9619575157
COEF_KAPPA_ORACLE = 555.7034124310972481672217
LOG10_XMIN_ORACLE = 710.9859659704752510237691
CROSSOVER_ORACLE = 714.3909528630345482130138
REL = 1e-12

M_KNOWN = {1: 1, 2: 0, 10: -1, 100: 1, 10**4: -23, 10**5: -48, 10**6: 212}
MU_FIRST_TEN = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@pytest.fixture(scope="module")
def table_1e6():
    return sieve_mobius(10**6)


def test_default_T2_matches_window_edge():
    assert default_T2(2.6e7, 1.0e3) == pytest.approx(T2_ORACLE, rel=REL)


def test_epsilon0_matches_oracle():
    eps0 = compute_epsilon0(0.98, 0.5, 0.5, 1.0e3, 2.6e7, default_T2(2.6e7, 1.0e3))
    assert eps0 == pytest.approx(EPS0_ORACLE, rel=REL)
    assert eps0 < 1.0


def test_epsilon0_hypothesis_names_and_rejections():
    T2 = default_T2(2.6e7, 1.0e3)
    ok = epsilon0_hypotheses(0.98, 0.5, 1.0e3, 2.6e7, T2)
    assert [c.name for c in ok] == [
        "sigma0-range", "sigma0-floor", "T1-floor", "T1-gap",
        "T2-window", "T2-floor"]
    assert all(c.ok for c in ok)
    cases = [
        (dict(sigma0=0.5), "sigma0-range"),
        (dict(sigma0=0.60), "sigma0-floor"),
        (dict(T1=1000.0, T2=900.0), "T1-floor"),
        (dict(T1=2000.0, T2=1619.0), "T1-gap"),
        (dict(T2=2.6e7), "T2-window"),
        (dict(T2=100.0), "T2-floor"),
    ]
    base = dict(sigma0=0.98, C1=0.5, C2=0.5, C3=1.0e3, T1=2.6e7, T2=T2)
    for override, name in cases:
        kw = dict(base)
        kw.update(override)
        with pytest.raises(HypothesisError) as err:
            compute_epsilon0(**kw)
        assert err.value.condition == name


def test_epsilon0_flags_bound_inapplicable():
    # at sigma0 close to the floor the exponent exceeds 1
    with pytest.raises(HypothesisError) as err:
        compute_epsilon0(0.68, 0.5, 0.5, 1.0e3, 2.6e7, default_T2(2.6e7, 1.0e3))
    assert err.value.condition == "epsilon0-applicability"


def test_mertens_bound_coefficients_match_oracle():
    eps0, spec = mertens_from_first_principles()
    assert spec.kappa == pytest.approx(KAPPA_ORACLE, rel=REL)
    assert spec.kappa <= 0.99
    assert spec.coef_sigma0 == pytest.approx(COEF_SIGMA0_ORACLE, rel=REL)
    assert spec.coef_kappa == pytest.approx(COEF_KAPPA_ORACLE, rel=REL)
    assert spec.log10_x_min == pytest.approx(LOG10_XMIN_ORACLE, rel=REL)
    assert spec.additive_one == 1.0
    assert spec.x_min == math.inf
    assert 710.0 <= spec.log10_x_min <= 712.0


def test_published_ceilings():
    _, spec = mertens_from_first_principles()
    assert ceil_decimals(spec.coef_kappa, 2) == 555.71
    assert ceil_sigfigs(spec.coef_sigma0, 3) == 1.94e14


def test_mertens_bound_rejections():
    with pytest.raises(HypothesisError) as err:
        mertens_bound(0.98, 2.0, 2.6e7, 1.0, 5.95e14)
    assert err.value.condition == "epsilon0-applicability"
    with pytest.raises(HypothesisError) as err:
        mertens_bound(0.98, 2.7e7, 2.6e7, 0.99, 5.95e14)
    assert err.value.condition == "lambda-range"
    with pytest.raises(DomainError):
        mertens_bound(0.98, 2.0, 2.6e7, 0.99, -1.0)
    # lambda = T1 boundary is accepted and doubles the growth factor
    spec = mertens_bound(0.98, 2.6e7, 2.6e7, 0.99, 5.95e14)
    assert spec.coef_sigma0 == pytest.approx(
        5.95e14 * 2.0 ** 0.98 / (math.pi * 0.98), rel=REL)


def test_lambda_two_sits_near_scan_minimum():
    eps0, spec2 = mertens_from_first_principles()
    lams = np.geomspace(0.05, 1.0e4, 400)
    coefs = np.array([
        mertens_bound(0.98, float(l), 2.6e7, eps0, 5.95e14).coef_kappa
        for l in lams])
    k = int(np.argmin(coefs))
    assert 0 < k < len(lams) - 1
    diffs = np.diff(coefs)
    assert np.all(diffs[:k] < 0.0)
    assert np.all(diffs[k:] > 0.0)
    assert spec2.coef_kappa <= 1.01 * float(coefs[k])


def test_x_min_increasing_in_epsilon0():
    prev = -math.inf
    for eps0 in np.linspace(0.3, 0.999, 25):
        spec = mertens_bound(0.98, 2.0, 2.6e7, float(eps0), 5.95e14)
        assert spec.log10_x_min > prev
        prev = spec.log10_x_min


def test_explicit_factor_decreasing_beyond_floor():
    sigma0 = 0.75
    floor = math.exp(math.exp(1.0 / (2.0 * sigma0 - 1.0)))
    f = lambda T1: loglog(T1) / math.log(T1) ** (2.0 * sigma0 - 1.0)
    for T1 in (floor, 2.0 * floor, 10.0 * floor, 1.0e7):
        assert f(2.0 * T1) < f(T1)


def test_derive_m_bound_exact_products():
    A_m, B_m = derive_m_bound(555.71, 0.99, 1.94e14, 0.98)
    assert A_m == 56126.71
    assert B_m == 9.894e15


def test_derive_m_bound_linearity_and_limit():
    A_m, B_m = derive_m_bound(555.71, 0.99, 1.94e14, 0.98)
    A_m2, B_m2 = derive_m_bound(2 * 555.71, 0.99, 2 * 1.94e14, 0.98)
    assert A_m2 == 2 * A_m
    assert B_m2 == 2 * B_m
    near2, _ = derive_m_bound(1.0, 1e-9, 1.0, 0.5)
    assert abs(near2 - 2.0) < 1e-8


def test_derive_m_bound_rejections():
    with pytest.raises(DomainError):
        derive_m_bound(1.0, 0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        derive_m_bound(1.0, 0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        derive_m_bound(0.0, 0.5, 1.0, 0.5)


def test_crossover_matches_oracle():
    got = crossover_trivial(555.71, 0.99, 1.94e14, 0.98)
    assert abs(got - CROSSOVER_ORACLE) < 1e-5
    assert abs(got - 714.4) < 0.1


def test_crossover_boundary_and_failure_cases():
    assert crossover_trivial(1.0, 0.5, 0.0, 0.5) == 0.0
    with pytest.raises(NoCrossoverError, match="above 1"):
        crossover_trivial(0.5, 0.99, 0.0, 0.5)
    with pytest.raises(NoCrossoverError):
        crossover_trivial(555.71, 0.9999, 0.0, 0.5)


def test_sieve_first_ten_and_known_values(table_1e6):
    assert table_1e6.mu[1:11].tolist() == MU_FIRST_TEN
    for x, expected in M_KNOWN.items():
        assert table_1e6.M(x) == expected


def test_sieve_against_brute_force_oracle(table_1e6):
    sympy = pytest.importorskip("sympy")
    for n in range(1, 10_001):
        assert int(table_1e6.mu[n]) == int(sympy.mobius(n))


def test_divisor_sum_identity(table_1e6):
    sympy = pytest.importorskip("sympy")
    rng = np.random.default_rng(404)
    ns = rng.integers(1, table_1e6.limit + 1, size=10_000)
    for n in ns:
        total = sum(int(table_1e6.mu[d]) for d in sympy.divisors(int(n)))
        assert total == (1 if n == 1 else 0)


def test_m_prefix_matches_compensated_recompute(table_1e6):
    for x in (12_345, 10**6):
        exact = math.fsum(int(table_1e6.mu[n]) / n for n in range(1, x + 1))
        assert abs(table_1e6.m(x) - exact) <= 1e-12


def test_verify_report_clean(table_1e6):
    rep = verify_bound_on_range(table_1e6, 555.71, 0.99, 1.94e14, 0.98)
    assert rep["violations"] == 0
    assert rep["first_violation"] is None
    assert 0.0 < rep["max_ratio_M"] < 1e-10
    assert 0.0 < rep["max_ratio_m"] < 1e-10
    assert rep["max_ratio_trivial"] == 1.0  # |M(1)| = 1 meets x = 1 exactly
    assert rep["A_m"] == 56126.71
    assert rep["runtime_seconds"] >= 0.0


def test_verify_detects_planted_violation():
    table = sieve_mobius(100)
    table.M_prefix[50] = 10**9
    rep = verify_bound_on_range(table, 555.71, 0.99, 1.94e14, 0.98)
    assert rep["violations"] == 1
    assert rep["first_violation"] == 50


def test_sieve_resource_limits():
    with pytest.raises(DomainError, match="resource limit"):
        sieve_mobius(200_000_001)
    with pytest.raises(DomainError):
        sieve_mobius(0)


def test_bound_spec_invariants():
    with pytest.raises(DomainError):
        MertensBoundSpec(sigma0=0.98, lam=2.0, epsilon0=1.2, kappa=0.99,
                         coef_sigma0=1.0, coef_kappa=1.0, additive_one=1.0,
                         log10_x_min=100.0)
    with pytest.raises(DomainError):
        MertensBoundSpec(sigma0=0.98, lam=2.0, epsilon0=0.5, kappa=0.97,
                         coef_sigma0=1.0, coef_kappa=1.0, additive_one=1.0,
                         log10_x_min=100.0)
