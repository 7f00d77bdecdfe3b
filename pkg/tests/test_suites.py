import math

import pytest

from hyperlab.chart_base import CHARTS_BY_ID, Space
from hyperlab.config import Config
from hyperlab.errors import UnknownIdError
from hyperlab.orbits import Orbit
from hyperlab.polyops import GeneratorSpace
from hyperlab.suites import (
    COVER_FAMILIES,
    DECAYING_CHARTS,
    SUITES_BY_ID,
    check,
    classification_check,
    cover_check,
    decay_check,
    elliptic_checks,
    elliptic_degeneration_checks,
    get_suite,
    hyperboloid_points,
    jacobi_degeneration_check,
    lower_bound,
    metric_limit_check,
    parameter_label,
    reality_check,
    relation_checks,
    run_suites,
    slope,
)


def assert_passed(checks):
    failures = [result for result in checks if not result.passed]
    assert checks
    assert not failures, failures


def test_check_bounds():
    assert check("x", 1e-10, 1e-9).passed
    assert not check("x", 1e-8, 1e-9).passed
    assert not check("x", math.nan, 1.0).passed
    result = lower_bound("slope", 1.95, 1.9)
    assert result.passed
    assert result.as_record() == {
        "name": "slope",
        "maxResidual": 1.95,
        "tolerance": 1.9,
        "pass": True,
        "bound": "lower",
    }


def test_slope_and_labels():
    assert slope([1, 10, 100], [1, 100, 10_000]) == pytest.approx(2)
    assert slope([1, 10], [1, 0]) == math.inf
    assert parameter_label({}) == ""
    assert parameter_label({"c": 1, "k2": "1/2"}) == "[c=1,k2=1/2]"


@pytest.mark.parametrize("space", list(GeneratorSpace))
def test_relations(space):
    assert_passed(relation_checks(space))


@pytest.mark.parametrize("orbit, params", [(Orbit.SH, {"c": 2}), (Orbit.HP, {"gamma": 3})])
def test_classification(orbit, params, config):
    assert_passed(classification_check(orbit, params, 10, config))


@pytest.mark.parametrize("space", [Space.H2, Space.H2_TILDE])
def test_metric_limits(space):
    assert_passed(metric_limit_check(space))


@pytest.mark.parametrize("chart_id", DECAYING_CHARTS)
def test_nonorthogonal_decay(chart_id):
    "g12 falls off like 1/alpha"
    assert_passed(decay_check(CHARTS_BY_ID[chart_id], 0))


def test_elliptic_identities():
    assert_passed(elliptic_checks())
    assert_passed(elliptic_degeneration_checks())


def test_jacobi_form_degenerates_to_spherical():
    assert_passed(jacobi_degeneration_check())


@pytest.mark.parametrize("space", [Space.H2, Space.H2_TILDE])
def test_hyperboloid_points(space):
    points = hyperboloid_points(space, 50, 0)
    assert len(points) == 50
    assert max(point.embedding_residual() for point in points) <= 1e-12


def test_roots_are_real_on_h2(config):
    assert_passed(reality_check(Orbit.SH, {"c": 1}, 50, 0, config))


@pytest.mark.parametrize("family", sorted(COVER_FAMILIES))
def test_cover_families(family):
    "Region inequalities and real roots of the chart's operator agree"
    assert_passed(cover_check(family, 300, 0))


def test_suite_registry():
    assert set(SUITES_BY_ID) == {"algebra", "charts", "separation"}
    with pytest.raises(UnknownIdError):
        get_suite("physics")
    with pytest.raises(UnknownIdError):
        get_suite("charts")(chart="H2/XYZ")


def test_algebra_suite_for_one_class(config):
    checks = run_suites(["algebra"], config, orbit=Orbit.SH)
    assert_passed(checks)
    names = [result.name for result in checks]
    assert "classify:SH[c=0]:class" in names
    assert "commutation:SH[c=2]" in names
    assert names == sorted(names)


@pytest.mark.slow
def test_algebra_suite_at_shipped_size():
    "All classes with the shipped seed count"
    assert_passed(run_suites(["algebra"], Config()))


def test_algebra_suite_with_parameters(config):
    checks = run_suites(["algebra"], config, orbit=Orbit.SH, params={"c": 5})
    assert_passed(checks)
    assert {result.name for result in checks} >= {"classify:SH[c=5]:params"}


def test_charts_suite_for_jacobi_chart(config):
    checks = run_suites(["charts"], config, chart="H2/E-jacobi")
    assert_passed(checks)
    names = {result.name for result in checks}
    assert "jacobi:H2/E-jacobi" in names
    assert "embedding:H2/E-jacobi" in names


def test_separation_suite_for_one_chart(config):
    checks = run_suites(["separation"], config, chart="H2/SH")
    assert_passed(checks)
    assert {result.name for result in checks} >= {"lambda:H2/SH", "liouville:H2/SH"}
