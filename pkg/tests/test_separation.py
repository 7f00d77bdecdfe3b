import math

import pytest
from sympy import Matrix, Rational

from hyperlab.chart_base import AmbientPoint, Space, get_chart
from hyperlab.errors import ChartNotOrthogonalError, InvalidParameterError
from hyperlab.orbits import Orbit
from hyperlab.separation import (
    char_roots,
    classical_coeffs,
    commutation_certificate,
    compound_certificate,
    cross_variation,
    lambda_consistency,
    liouville_check,
)


@pytest.mark.parametrize("chart_id", ["H2/SH", "H2/EP", "H2/SPH", "H~2/EQ-Ib", "H2/E"])
def test_lambda_consistency(chart_id):
    report = lambda_consistency(get_chart(chart_id), samples=30)
    assert report.passed, report
    assert report.offending is None


def test_lambda_map_matches_pencil():
    report = lambda_consistency(get_chart("H2/SPH"), samples=30)
    assert report.maxMapResidual is not None
    assert report.maxMapResidual <= 1e-10
    assert "maxSystemResidual" not in report._fields


def test_wrong_lambda_map_is_detected(monkeypatch):
    "The documented lambdas are compared against the pencil, not the roots"
    chart = get_chart("H2/SPH")
    monkeypatch.setattr(chart, "lambda_map", lambda xi1, xi2: (math.sinh(xi1) ** 2, 1.0))
    report = lambda_consistency(chart, samples=10)
    assert report.maxMapResidual > 1e-3
    assert not report.passed


def test_wrong_operator_is_detected():
    "Equidistant roots vary along both pseudo-spherical coordinates"
    report = lambda_consistency(get_chart("H2/SPH"), Orbit.EQ, samples=30)
    assert not report.passed
    assert report.offending is not None


def test_constant_root_serves_one_coordinate():
    "A root constant in both directions is lambda1 or lambda2, not both"
    assert cross_variation((0.0, 5.0), (0.0, 6.0), (0.0, 7.0), 1.0) == pytest.approx(1.0)
    assert cross_variation((1.0, 4.0), (1.0, 9.0), (2.0, 4.0), 1.0) == 0.0
    # swapped order of the roots along xi2
    assert cross_variation((1.0, 4.0), (9.0, 1.0), (4.0, 2.0), 1.0) == 0.0


def test_chart_without_operator():
    with pytest.raises(InvalidParameterError):
        lambda_consistency(get_chart("E2/cartesian"), samples=5)


@pytest.mark.parametrize("chart_id", ["H2/SPH", "H2/EQ", "H2/HO", "H~2/SPH"])
def test_liouville_form(chart_id):
    report = liouville_check(get_chart(chart_id), 30, seed=3)
    assert report.passed, report
    assert report.samples > 0


def test_liouville_needs_orthogonal_chart():
    with pytest.raises(ChartNotOrthogonalError):
        liouville_check(get_chart("H2/SPH-NO"), 10)


def test_spherical_symbol():
    "L^2 is p_phi^2"
    point = get_chart("H2/SPH").embed(0.8, 0.3)
    assert tuple(classical_coeffs(Orbit.SPH, point)) == pytest.approx((0, 0, 1), abs=1e-12)


def test_semicircular_roots_are_complex_inside_the_band():
    "On H~2 the SCP pencil has complex roots for |u2| < R"
    point = AmbientPoint(1.0, math.sqrt(1.75), 0.5, Space.H2_TILDE)
    roots = char_roots(Orbit.SCP, point)
    assert roots.complex
    assert roots.lambda1 == roots.lambda2.conjugate()
    assert roots.system_residual() <= 1e-12


def test_semicircular_roots_are_real_outside_the_band():
    point = AmbientPoint(1.0, math.sqrt(0.56), 1.2, Space.H2_TILDE)
    roots = char_roots(Orbit.SCP, point)
    assert not roots.complex
    assert roots.lambda1 < roots.lambda2
    assert roots.system_residual() <= 1e-12


def test_commutation_certificates():
    assert commutation_certificate(Orbit.SH, {"c": 2}).is_zero()
    assert commutation_certificate(Orbit.H, {"k2": Rational(1, 3)}).is_zero()
    assert commutation_certificate(
        Matrix([[1, 2, 0], [2, 0, 1], [0, 1, 3]]), linear=[1, 0, -1]
    ).is_zero()
    assert compound_certificate(2).is_zero()
