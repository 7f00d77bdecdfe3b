import io

import pytest
from sympy import Matrix

from hyperlab.chart_base import Space
from hyperlab.config import ContractionConfig
from hyperlab.contraction import (
    CASES_BY_ID,
    ContractionCase,
    Status,
    beltrami,
    beltrami_metric_convergence,
    beltrami_metric_limit,
    catalog_cases,
    compound_limit,
    fit_order,
    get_case,
    lift,
    operator_contraction,
    order_passes,
    parabolic_II_compound,
    register,
    run_contraction,
)
from hyperlab.errors import (
    InvalidParameterError,
    NoContractionError,
    OutOfDomainError,
    UnknownIdError,
)

OPERATOR_CASES = sorted(
    case_id
    for case_id, case in CASES_BY_ID.items()
    if case.positive and case.operator is not None
)


def test_catalog():
    cases = catalog_cases()
    assert sum(case.positive for case in cases) >= 25
    assert not cases[-1].positive
    assert "H~2/EQ-IIa" in CASES_BY_ID


@pytest.mark.parametrize(
    "case_id", ["H2/SPH->E2/polar", "H2/EQ->E2/cartesian", "H~2/SPH->E11/cartesian-I"]
)
def test_positive_case_converges(case_id, config):
    report = run_contraction(get_case(case_id), config.contraction, seed=0)
    assert report.passed, report
    assert report.status in (Status.CONVERGED, Status.EXACT)
    assert report.r_values == [1e2, 1e3, 1e4]
    assert report.max_errors[-1] < report.max_errors[0] or report.fitted_order is None


def test_negative_case_raises():
    with pytest.raises(NoContractionError) as info:
        run_contraction(get_case("H~2/EQ-IIa"))
    assert "R -> oo" in info.value.reason


def test_hyperbolic_parabolic_types_on_two_sheets(config):
    "Types II and III reach the hyperbolic III chart, type I has no flat limit"
    for case_id in ["H~2/HP-II->E11/hyperbolic-III", "H~2/HP-III->E11/hyperbolic-III"]:
        assert get_case(case_id).positive
        assert run_contraction(get_case(case_id), config.contraction, seed=0).passed
    assert not get_case("H~2/HP-I").positive
    with pytest.raises(NoContractionError):
        run_contraction(get_case("H~2/HP-I"))


def test_negative_operator_limit():
    "The SCP limit exists as an operator but generates no coordinates"
    assert operator_contraction(get_case("H~2/SCP")).residual.is_zero()
    with pytest.raises(NoContractionError):
        run_contraction(get_case("H~2/SCP"))
    with pytest.raises(NoContractionError):
        operator_contraction(get_case("H~2/EQ-IIa"))


@pytest.mark.parametrize("case_id", OPERATOR_CASES)
def test_operator_limit_is_exact(case_id):
    "The scaled operator reaches the flat one with zero residual"
    contraction = operator_contraction(CASES_BY_ID[case_id])
    assert contraction.residual.is_zero()
    assert contraction.limit == contraction.target


def test_compound_limit():
    assert compound_limit(1).residual.is_zero()
    assert compound_limit(3).residual.is_zero()


def test_parabolic_compound_reconstructs_points(config):
    report = parabolic_II_compound(1, config.contraction, seed=0)
    assert report.passed, report
    assert report.reason is None
    with pytest.raises(InvalidParameterError):
        parabolic_II_compound(0, config.contraction)


@pytest.mark.parametrize("space, signs", [(Space.H2, (1, 1)), (Space.H2_TILDE, (1, -1))])
def test_beltrami_metric_limit(space, signs):
    assert beltrami_metric_limit(space) == Matrix.diag(*signs)


def test_beltrami_metric_converges_quadratically(config):
    report = beltrami_metric_convergence(Space.H2, config.contraction)
    assert report.passed
    assert report.fitted_order == pytest.approx(2, abs=0.15)


def test_beltrami_projection_round_trip():
    point = lift(Space.H2, 0.3, -0.4, 2)
    assert point.embedding_residual() == pytest.approx(0, abs=1e-15)
    assert beltrami(point) == pytest.approx((0.3, -0.4))
    with pytest.raises(OutOfDomainError):
        lift(Space.H2, 3, 0, 2)
    with pytest.raises(InvalidParameterError):
        lift(Space.E2, 0, 0, 1)


def test_fit_order():
    r_values = [1e2, 1e3, 1e4]
    assert fit_order(r_values, [3 / r for r in r_values]) == pytest.approx(1)
    assert fit_order(r_values, [1 / r**2 for r in r_values]) == pytest.approx(2)
    assert fit_order(r_values, [0, 0, 0]) is None
    with pytest.raises(InvalidParameterError):
        fit_order([1e2], [1e-2])


def test_faster_decay_passes(config):
    "Expected orders are lower bounds, only falling short by the band fails"
    contraction = config.contraction
    assert order_passes(1.0 + 10 * contraction.order_band, 1.0, contraction)
    assert order_passes(4.0, 2.0, contraction)
    assert not order_passes(2.0 - 2 * contraction.order_band, 2.0, contraction)


def test_order_band():
    config = ContractionConfig()
    assert order_passes(0.95, 1.0, config)
    assert order_passes(None, 1.0, config)
    assert order_passes(3.0, 1.0, config)
    assert not order_passes(0.5, 1.0, config)
    assert not order_passes(1.7, 2.0, config)


def test_report_csv(config):
    report = run_contraction(get_case("H2/SPH->E2/polar"), config.contraction)
    stream = io.StringIO()
    report.write_csv(stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "R,max_error"
    assert len(lines) == 4
    record = report.as_record()
    assert record["caseId"] == "H2/SPH->E2/polar"
    assert record["pass"] is True


def test_registry():
    with pytest.raises(UnknownIdError):
        get_case("H2/XYZ->E2/polar")
    with pytest.raises(UnknownIdError):
        register(ContractionCase("broken", "H2/SPH", "E2/nowhere"))
    with pytest.raises(ValueError):
        register(ContractionCase("H2/SPH->E2/polar", "H2/SPH", "E2/polar"))
