"""Tests for Romberg panel quadrature.

Integral reference values were computed with an independent
arbitrary-precision adaptive quadrature at 30 significant digits and
frozen here; the Gauss-Kronrod cross-check uses scipy when available.
"""

import csv
import math

import numpy as np
import pytest

from nearone.errors import ConvergenceError, DomainError
from nearone.quadrature import (
    QuadratureResult,
    envelope_integrand_log_space,
    integrate_envelope,
    integrate_inv_abs_zeta,
    romberg,
)
from nearone.zeta import inv_abs_zeta

INV_INTEGRAL_0_10 = 10.73523409961820064373
INV_INTEGRAL_0_100 = 112.3737422204433969998446
ENVELOPE_11520_1E5 = 140772530214.4804092337


def test_romberg_exact_on_squares_at_level_two():
    r = romberg(lambda x: x ** 2, 0.0, 1.0, 1e-10)
    assert abs(r.value - 1.0 / 3.0) < 1e-15
    assert r.error_estimate == 0.0
    assert r.evaluations == 5
    assert r.panels == 1


def test_romberg_sin_classical_value():
    r = romberg(np.sin, 0.0, math.pi, 1e-10)
    assert abs(r.value - 2.0) < 1e-10
    assert r.evaluations <= 65  # converged by level 6


def test_romberg_validation():
    with pytest.raises(DomainError):
        romberg(np.sin, 1.0, 1.0, 1e-8)
    with pytest.raises(DomainError):
        romberg(np.sin, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        romberg(np.sin, 0.0, 1.0, 1e-8, max_levels=2)
    with pytest.raises(DomainError):
        romberg(np.sin, 0.0, 1.0, 1e-8, max_levels=25)


def test_romberg_non_convergent():
    with pytest.raises(ConvergenceError, match="non-convergent"):
        romberg(lambda x: np.sin(40.0 * x), 0.0, 1.0, 1e-12, max_levels=3)


def test_reciprocal_zeta_panel_against_oracles():
    f = lambda us: np.array([inv_abs_zeta(0.98, float(u)) for u in us])
    r = romberg(f, 0.0, 10.0, 1e-6)
    assert abs(r.value - INV_INTEGRAL_0_10) <= 1e-6 * INV_INTEGRAL_0_10
    scipy_integrate = pytest.importorskip("scipy.integrate")
    gk, gk_err = scipy_integrate.quad(lambda u: inv_abs_zeta(0.98, u), 0.0, 10.0)
    assert abs(r.value - gk) <= 1e-6 * abs(gk) + gk_err


def test_integrate_inv_abs_zeta_partial_range():
    r = integrate_inv_abs_zeta(0.98, 0.0, 100.0)
    assert r.panels == 10
    assert abs(r.value - INV_INTEGRAL_0_100) <= 1e-6 * INV_INTEGRAL_0_100
    assert abs(r.value - INV_INTEGRAL_0_100) <= r.error_estimate


def test_integrate_empty_interval():
    r = integrate_inv_abs_zeta(0.98, 0.0, 0.0)
    assert r.value == 0.0
    assert r.error_estimate == 0.0
    assert r.panels == 0
    assert r.evaluations == 0


def test_integrate_validation():
    with pytest.raises(DomainError):
        integrate_inv_abs_zeta(0.89, 0.0, 10.0)
    with pytest.raises(DomainError):
        integrate_inv_abs_zeta(0.98, -1.0, 10.0)
    with pytest.raises(DomainError):
        integrate_inv_abs_zeta(0.98, 0.0, 3.1e4)
    with pytest.raises(DomainError):
        integrate_inv_abs_zeta(0.98, 10.0, 5.0)
    with pytest.raises(DomainError):
        integrate_inv_abs_zeta(0.98, 0.0, 10.0, panel_width=0.0)


def test_additivity_within_error_estimates():
    left = integrate_inv_abs_zeta(0.98, 0.0, 37.0)
    right = integrate_inv_abs_zeta(0.98, 37.0, 80.0)
    whole = integrate_inv_abs_zeta(0.98, 0.0, 80.0)
    gap = abs(left.value + right.value - whole.value)
    assert gap <= left.error_estimate + right.error_estimate + whole.error_estimate


def test_worker_count_does_not_change_result():
    serial = integrate_inv_abs_zeta(0.98, 0.0, 60.0)
    parallel = integrate_inv_abs_zeta(0.98, 0.0, 60.0, workers=2)
    assert parallel.value == serial.value
    assert parallel.error_estimate == serial.error_estimate
    assert parallel.evaluations == serial.evaluations


def test_panel_trace_csv(tmp_path):
    path = tmp_path / "panels.csv"
    r = integrate_inv_abs_zeta(0.98, 0.0, 35.0, trace_path=str(path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["lo", "hi", "value", "error_estimate", "evaluations"]
    body = rows[1:]
    assert len(body) == r.panels == 4
    assert float(body[-1][1]) == 35.0
    assert math.fsum(float(row[2]) for row in body) == r.value
    assert sum(int(row[4]) for row in body) == r.evaluations


def test_envelope_collapses_to_length_when_a1_zero():
    r = integrate_envelope(0.98, 0.0, 11520.0, 11620.0)
    assert abs(r.value - 100.0) <= 1e-8 * 100.0


def test_envelope_partial_against_oracle():
    r = integrate_envelope(0.98, 5.44, 11520.0, 1.0e5)
    assert abs(r.value - ENVELOPE_11520_1E5) <= 1e-6 * ENVELOPE_11520_1E5


def test_envelope_validation():
    with pytest.raises(DomainError):
        integrate_envelope(0.98, 5.44, 5.0, 100.0)  # lo < e^2
    with pytest.raises(DomainError):
        integrate_envelope(1.0, 5.44, 11520.0, 12000.0)
    with pytest.raises(DomainError):
        integrate_envelope(0.98, -1.0, 11520.0, 12000.0)
    with pytest.raises(DomainError):
        integrate_envelope(0.98, 5.44, 12000.0, 11520.0)


def test_envelope_monotone_panel_sandwich():
    g = envelope_integrand_log_space(0.98, 5.44)
    a, b = 2.5, 3.0
    r = romberg(g, a, b, 1e-10)
    lo_rect = (b - a) * float(g(np.array([a]))[0])
    hi_rect = (b - a) * float(g(np.array([b]))[0])
    assert lo_rect <= r.value <= hi_rect


def test_quadrature_result_invariants():
    with pytest.raises(DomainError):
        QuadratureResult(1.0, -1e-9, 1, 2)
    with pytest.raises(DomainError):
        QuadratureResult(1.0, math.inf, 1, 2)
    with pytest.raises(DomainError):
        QuadratureResult(1.0, 0.0, 3, 2)
