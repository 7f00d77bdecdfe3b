import csv
import io
import math

import mpmath
import numpy as np
import pytest
from mpmath import mp
from numpy.testing import assert_allclose

from hyperlab.chart_base import (
    CHARTS_BY_ID,
    AmbientPoint,
    Space,
    catalog,
    get_chart,
    normalize_id,
    pencil,
    write_grid_csv,
)
from hyperlab.errors import InvalidParameterError, OutOfDomainError, UnknownIdError
from hyperlab.orbits import Orbit, canonical_matrix

HYPERBOLOID_CHARTS = sorted(
    chart_id for chart_id, cls in CHARTS_BY_ID.items() if not cls.space.is_flat
)
ALL_CHARTS = sorted(CHARTS_BY_ID)


def test_catalog_size():
    assert len(HYPERBOLOID_CHARTS) >= 30
    assert len(catalog()) == len(CHARTS_BY_ID)
    assert {info["space"] for info in catalog()} == {"H2", "H~2", "E2", "E11"}


def test_targets_are_registered():
    for cls in CHARTS_BY_ID.values():
        for target in cls.targets:
            assert CHARTS_BY_ID[target].space.is_flat


@pytest.mark.parametrize("chart_id", ALL_CHARTS)
def test_embedding(chart_id):
    "Sampled points lie on their surface"
    chart = get_chart(chart_id)
    points = chart.sample(50, seed=1)
    assert points
    for xi1, xi2 in points:
        assert chart.embed(xi1, xi2).embedding_residual() <= 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("chart_id", HYPERBOLOID_CHARTS)
def test_chart_census(chart_id):
    "Ten thousand sampled points per chart, embedding and orthogonality at full tolerance"
    chart = get_chart(chart_id)
    points = chart.sample(10_000, seed=0)
    assert points
    embedding = max(chart.embed(*p).embedding_residual() for p in points)
    assert embedding <= 1e-9
    if chart.orthogonal:
        orthogonality = max(chart.metric(*p).orthogonality_residual() for p in points)
        assert orthogonality <= 1e-8


@pytest.mark.parametrize(
    "chart_id", [i for i in ALL_CHARTS if CHARTS_BY_ID[i].orthogonal]
)
def test_orthogonal_metric(chart_id):
    chart = get_chart(chart_id)
    for xi1, xi2 in chart.sample(30, seed=2):
        assert chart.metric(xi1, xi2).orthogonality_residual() <= 1e-8


@pytest.mark.parametrize(
    "chart_id", [i for i in ALL_CHARTS if not CHARTS_BY_ID[i].orthogonal]
)
def test_nonorthogonal_metric(chart_id):
    chart = get_chart(chart_id)
    residuals = [
        chart.metric(xi1, xi2).orthogonality_residual()
        for xi1, xi2 in chart.sample(30, seed=2)
    ]
    assert max(residuals) > 1e-6


def test_spherical_values():
    point = get_chart("H2/SPH", R=2).embed(1.0, 0.0)
    assert_allclose(tuple(point), (2 * math.cosh(1), 2 * math.sinh(1), 0), atol=1e-15)
    assert point.space is Space.H2


def test_horocyclic_metric_is_conformal():
    "g = R^2 / y^2 (dx^2 + dy^2)"
    metric = get_chart("H2/HO", R=3).metric(0.4, 0.5)
    assert metric.g11 == pytest.approx(9 / 0.25)
    assert metric.g22 == pytest.approx(9 / 0.25)
    assert metric.g12 == pytest.approx(0, abs=1e-12)


def test_horocyclic_metric_at_random_points(rng):
    chart = get_chart("H2/HO")
    for x, y in zip(rng.uniform(-2, 2, 10), rng.uniform(0.1, 3, 10)):
        metric = chart.metric(float(x), float(y))
        assert metric.g11 == pytest.approx(1 / y**2)
        assert metric.g22 == pytest.approx(1 / y**2)


def test_jacobian_shape():
    jacobian = get_chart("H~2/SPH").jacobian(0.5, 0.3)
    assert jacobian.shape == (3, 2)


def test_lambda_map_solves_pencil():
    "The chart's lambdas are the roots of the SPH pencil"
    chart = get_chart("H2/SPH")
    lambdas = chart.lambda_map(1.2, 0.4)
    assert lambdas == pytest.approx((math.sinh(1.2) ** 2, 0))
    values = pencil(
        np.array(canonical_matrix(Orbit.SPH).evalf(), dtype=float), chart.embed(1.2, 0.4)
    )
    assert values.trace == pytest.approx(sum(lambdas))
    assert values.product == pytest.approx(lambdas[0] * lambdas[1], abs=1e-12)


def test_out_of_domain():
    chart = get_chart("H2/SPH")
    with pytest.raises(OutOfDomainError):
        chart.embed(-1.0, 0.0)
    with pytest.raises(OutOfDomainError):
        chart.embed(1.0, 4.0)


def test_cover_is_strict():
    "Points with |u2| <= R are outside semi-circular-parabolic coordinates"
    chart = get_chart("H~2/SCP")
    assert not chart.covered(AmbientPoint(0.0, 0.5, 0.5, Space.H2_TILDE))
    assert not chart.covered(AmbientPoint(1.0, 1.0, 1.0, Space.H2_TILDE))
    assert chart.covered(AmbientPoint(1.0, 0.0, math.sqrt(2), Space.H2_TILDE))


def test_identifiers():
    assert normalize_id("H̃2/SPH") == "H~2/SPH"
    assert normalize_id(" H₂/EQ ") == "H2/EQ"
    with pytest.raises(UnknownIdError):
        get_chart("H2/XYZ")


def test_parameter_validation():
    with pytest.raises(InvalidParameterError):
        get_chart("H2/SPH", gamma=2)
    with pytest.raises(InvalidParameterError):
        get_chart("H2/SPH", R=0)
    with pytest.raises(InvalidParameterError):
        get_chart("H2/SPH-NO", alpha=0)
    with pytest.raises(InvalidParameterError):
        get_chart("H~2/H-rot", k=1)
    assert get_chart("H2/EP", gamma=3).params["gamma"] == 3


def test_grid_rows():
    rows = get_chart("H2/HO").grid(20, 20)
    assert len(rows) == 400
    assert all(row.covered for row in rows)
    with pytest.raises(InvalidParameterError):
        get_chart("H2/HO").grid(1, 20)


def test_grid_flags_uncovered_cells():
    "|u2| > R holds exactly on the covered rows"
    for row in get_chart("H~2/SCP").grid(20, 20):
        if row.covered:
            assert abs(row.u2) > 1
        else:
            assert math.isnan(row.u2) or abs(row.u2) <= 1 + 1e-12


def test_flat_grid():
    rows = get_chart("E11/elliptic-II").grid(10, 10)
    assert len(rows) == 100
    assert all(row.u2 == 0 for row in rows)


def test_grid_csv():
    stream = io.StringIO()
    write_grid_csv(get_chart("H2/SPH").grid(3, 4), stream)
    text = stream.getvalue()
    assert "\r" not in text
    lines = list(csv.reader(io.StringIO(text)))
    assert lines[0] == ["xi1", "xi2", "u0", "u1", "u2", "covered"]
    assert len(lines) == 13
    # round trip notation
    assert float(lines[1][2]) == pytest.approx(math.cosh(float(lines[1][0])))


def test_extended_precision(monkeypatch):
    monkeypatch.setenv("HYPERLAB_PRECISION", "extended")
    point = get_chart("H2/SPH").embed(1.0, 0.5)
    assert isinstance(point.u0, mpmath.mpf)
    with mp.workdps(30):
        quadric = -point.u0**2 + point.u1**2 + point.u2**2 + 1
    assert abs(quadric) < 1e-25
