"""
Contractions of hyperboloid charts to charts of E2 and E11.

A `ContractionCase` ties a source chart to a flat target chart by a schedule,
the leading-order substitution (flat point, R) -> (xi1(R), xi2(R)). Running a
case embeds the scheduled point for growing R, projects it with the Beltrami
map and fits the order of the error decay on log-log data. The operator side
is exact: the scaled operator is written in Beltrami generators with
eps = 1/R and compared to the flat operator at eps = 0.

The cases themselves are registered in `hyperlab.cases`.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

import csv
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Any,
    Callable,
    Final,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    TextIO,
)

import mpmath
import numpy as np
import structlog
from mpmath import mp
from sympy import Basic, Matrix, Symbol, limit, nsimplify, simplify, sqrt, symbols
from sympy import lambdify as sympy_lambdify

from hyperlab.chart_base import (
    CHARTS_BY_ID,
    AmbientPoint,
    Chart,
    Interval,
    Space,
    get_chart,
    normalize_id,
    parameter,
    pencil,
)
from hyperlab.config import EXTENDED_DPS, ContractionConfig, Precision
from hyperlab.errors import (
    InvalidParameterError,
    NoContractionError,
    OperatorLimitError,
    OutOfDomainError,
    ProjectionPoleError,
    UnknownIdError,
)
from hyperlab.polyops import (
    R_SYMBOL,
    DiffOperator,
    GeneratorSpace,
    flat_operator,
    scaled_beltrami_operator,
)

logger = structlog.get_logger(module="contraction")

CASES_BY_ID: Final[dict[str, "ContractionCase"]] = {}

# errors below this are rounding noise of the 30 digit evaluation
ERROR_FLOOR: Final[float] = 1e-28

Schedule = Callable[[Any, Any, Any], tuple[Any, Any]]
OctantSelector = Callable[[float, float], tuple[int, int, int]]


class Status(str, Enum):
    CONVERGED = "converged"
    EXACT = "exact"
    FAILED = "failed"
    NO_CONTRACTION = "no-contraction"
    ERROR = "error"


GENERATOR_SPACES: Final[dict[Space, tuple[GeneratorSpace, GeneratorSpace]]] = {
    Space.H2: (GeneratorSpace.BELTRAMI_H2, GeneratorSpace.FLAT_E2),
    Space.H2_TILDE: (GeneratorSpace.BELTRAMI_H2_TILDE, GeneratorSpace.FLAT_E11),
}


# projections


def beltrami(point: AmbientPoint) -> tuple[Any, Any]:
    """x = R (u1, u2) / u0 on H2, y = R (u0, u1) / u2 on H~2.

    The image is the (t, x) resp. (x1, x2) pair of the flat chart triple.
    """
    u0, u1, u2 = point
    if point.space is Space.H2:
        if u0 == 0:
            raise ProjectionPoleError("u0 = 0")
        return (point.R * u1 / u0, point.R * u2 / u0)
    if point.space is Space.H2_TILDE:
        if u2 == 0:
            raise ProjectionPoleError("u2 = 0")
        return (point.R * u0 / u2, point.R * u1 / u2)
    raise InvalidParameterError(f"{point.space.value} has no Beltrami projection")


def lift(space: Space, first: Any, second: Any, R: Any) -> AmbientPoint:
    "Inverse of `beltrami` on the upper sheet resp. the half u2 > 0"
    if space is Space.H2:
        radicand = R**2 - first**2 - second**2
        if not radicand > 0:
            raise OutOfDomainError(f"{space.value}/beltrami", "x1^2 + x2^2 < R^2")
        u0 = R**2 / radicand**0.5
        return AmbientPoint(u0, first * u0 / R, second * u0 / R, space, R)
    if space is Space.H2_TILDE:
        radicand = R**2 - first**2 + second**2
        if not radicand > 0:
            raise OutOfDomainError(f"{space.value}/beltrami", "y0^2 - y1^2 < R^2")
        u2 = R**2 / radicand**0.5
        return AmbientPoint(first * u2 / R, second * u2 / R, u2, space, R)
    raise InvalidParameterError(f"{space.value} has no Beltrami projection")


def _beltrami_metric(space: Space, R: Any) -> tuple[Matrix, tuple[Symbol, Symbol]]:
    first, second = symbols("x1 x2", real=True)
    if space is Space.H2:
        u0 = R**2 / sqrt(R**2 - first**2 - second**2)
        u = Matrix([u0, first * u0 / R, second * u0 / R])
    else:
        u2 = R**2 / sqrt(R**2 - first**2 + second**2)
        u = Matrix([first * u2 / R, second * u2 / R, u2])
    jacobian = u.jacobian(Matrix([first, second]))
    signature = Matrix.diag(*space.signature)
    return jacobian.T * signature * jacobian, (first, second)


def beltrami_metric_limit(space: Space) -> Matrix:
    """The pulled back metric of the Beltrami chart at eps = 1/R -> 0.

    diag(1, 1) on H2 and diag(1, -1) on H~2.
    """
    if space not in GENERATOR_SPACES:
        raise InvalidParameterError(f"{space.value} has no Beltrami projection")
    eps = Symbol("eps", positive=True)
    metric, _ = _beltrami_metric(space, 1 / eps)
    return metric.applyfunc(lambda entry: limit(simplify(entry), eps, 0))


# cases


@dataclass(frozen=True)
class OperatorLimit:
    """scale * (S + casimir_coefficient * C) -> target as eps -> 0.

    `matrix` and `linear` default to the source chart's operator. Entries may
    depend on `R_SYMBOL`. `target` is a matrix over the flat triple, (p1, p2,
    M) on E2 and (p0, p1, N) on E11.
    """

    target: Matrix
    matrix: Optional[Matrix] = None
    linear: Optional[Sequence[Any]] = None
    target_linear: Optional[Sequence[Any]] = None
    scale: Any = 1
    casimir_coefficient: Any = 0


def _no_parameters(R: Any) -> dict[str, Any]:
    return {}


@dataclass(frozen=True)
class ContractionCase:
    case_id: str
    source_id: str
    target_id: str
    schedule: Optional[Schedule] = None
    # source chart parameters as functions of R, numeric or symbolic
    source_parameters: Callable[[Any], dict[str, Any]] = _no_parameters
    target_parameters: Mapping[str, Any] = field(default_factory=dict)
    octant: Optional[OctantSelector] = None
    flat_box: Optional[tuple[Interval, Interval]] = None
    operator: Optional[OperatorLimit] = None
    expected_order: float = 1.0
    # leading-order substitution, as documented in the catalog
    anchor: str = ""
    # reason for catalogued negative cases
    negative: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.negative is None

    @property
    def source_space(self) -> Space:
        return CHARTS_BY_ID[self.source_id].space


def register(case: ContractionCase) -> ContractionCase:
    if existing := CASES_BY_ID.get(case.case_id):
        # this case can happen during development with live reload
        if existing is not case:
            raise ValueError(f"Case id {case.case_id} is already taken")
    for chart_id in (case.source_id, case.target_id):
        if chart_id not in CHARTS_BY_ID:
            raise UnknownIdError("chart", chart_id)
    CASES_BY_ID[case.case_id] = case
    return case


def get_case(case_id: str) -> ContractionCase:
    try:
        return CASES_BY_ID[normalize_id(case_id)]
    except KeyError:
        raise UnknownIdError("case", case_id)


def catalog_cases() -> list[ContractionCase]:
    "Positive cases first, each group sorted by id"
    return sorted(CASES_BY_ID.values(), key=lambda case: (not case.positive, case.case_id))


# reports


class ConvergenceReport(NamedTuple):
    case_id: str
    source_id: str
    target_id: str
    status: Status
    r_values: list[float]
    max_errors: list[float]
    fitted_order: Optional[float]
    expected_order: float
    operator_residual: Optional[str]
    passed: bool
    reason: Optional[str] = None

    @property
    def max_error_at_rmax(self) -> Optional[float]:
        return self.max_errors[-1] if self.max_errors else None

    def as_record(self) -> dict[str, Any]:
        record = {
            "caseId": self.case_id,
            "sourceId": self.source_id,
            "targetId": self.target_id,
            "status": self.status.value,
            "fittedOrder": self.fitted_order,
            "expectedOrder": self.expected_order,
            "maxErrorAtRmax": self.max_error_at_rmax,
            "operatorResidual": self.operator_residual,
            "pass": self.passed,
        }
        if self.reason:
            record["reason"] = self.reason
        return record

    def write_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("R", "max_error"))
        for R, error in zip(self.r_values, self.max_errors):
            writer.writerow((repr(float(R)), repr(float(error))))


def fit_order(r_values: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Least-squares order p of error ~ C R^-p, None if every error is at the floor.

    Errors are clipped to `ERROR_FLOOR` before taking logarithms.
    """
    if len(r_values) != len(errors) or len(r_values) < 2:
        raise InvalidParameterError("at least two (R, error) pairs")
    clipped = [max(float(error), ERROR_FLOOR) for error in errors]
    if all(error <= ERROR_FLOOR for error in clipped):
        return None
    slope, _ = np.polyfit(np.log(r_values), np.log(clipped), 1)
    return float(-slope)


def order_passes(
    fitted: Optional[float], expected: float, config: ContractionConfig
) -> bool:
    "Only the lower side of the band is enforced, faster decay is fine"
    if fitted is None:
        return True
    return fitted >= max(config.minimum_order, expected - config.order_band)


# operator contractions


class OperatorContraction(NamedTuple):
    case_id: str
    limit: DiffOperator
    target: DiffOperator
    residual: DiffOperator

    def verify(self) -> DiffOperator:
        "Returns the zero residual, raises `OperatorLimitError` otherwise"
        if not self.residual.is_zero():
            raise OperatorLimitError(
                f"{self.case_id}: the scaled operator misses its target",
                terms=self.residual,
            )
        return self.residual


def _exact(value: Any) -> Any:
    if isinstance(value, Basic):
        return value
    return nsimplify(value, [sqrt(2)])


def operator_contraction(case: ContractionCase) -> OperatorContraction:
    """Scaled operator of the source chart at eps = 0 against the flat target.

    Raises `NoContractionError` for cases without an operator limit and
    `OperatorLimitError` if a coefficient diverges.
    """
    spec = case.operator
    if spec is None:
        raise NoContractionError(case.case_id, case.negative or "no operator limit")
    source = CHARTS_BY_ID[case.source_id]
    beltrami_space, flat_space = GENERATOR_SPACES[source.space]
    matrix = spec.matrix if spec.matrix is not None else source.operator()
    if matrix is None:
        raise OperatorLimitError(f"{case.source_id} documents no operator")
    values = {**source.PARAMETERS, **case.source_parameters(R_SYMBOL)}
    substitutions = {parameter(name): _exact(value) for name, value in values.items()}
    matrix = Matrix(matrix).subs(substitutions)
    scaled = scaled_beltrami_operator(
        beltrami_space,
        matrix,
        linear=spec.linear,
        scale=spec.scale,
        casimir_coefficient=spec.casimir_coefficient,
    )
    limit_operator = scaled.subs_eps(0)
    target = flat_operator(flat_space, Matrix(spec.target), spec.target_linear)
    residual = limit_operator - target
    logger.debug(
        "operator_contracted", case=case.case_id, residual_zero=residual.is_zero()
    )
    return OperatorContraction(case.case_id, limit_operator, target, residual)


# coordinate contractions


class _SourceCharts:
    "Source chart instances per (R, octant)"

    def __init__(self, case: ContractionCase) -> None:
        self.case = case
        self.charts: dict[tuple[Any, tuple[int, int, int]], Chart] = {}

    def get(self, R: Any, octant: tuple[int, int, int]) -> Chart:
        key = (R, octant)
        if key not in self.charts:
            self.charts[key] = get_chart(
                self.case.source_id,
                R,
                octant=octant,
                **self.case.source_parameters(R),
            )
        return self.charts[key]


def _distance(first: tuple[Any, Any], second: tuple[Any, Any]) -> Any:
    return mpmath.sqrt((first[0] - second[0]) ** 2 + (first[1] - second[1]) ** 2)


def flat_points(
    case: ContractionCase, config: ContractionConfig, seed: int = 0
) -> tuple[Chart, list[tuple[float, float]]]:
    target = get_chart(case.target_id, **case.target_parameters)
    points = target.sample(config.flat_points, seed=seed, box=case.flat_box)
    if len(points) < config.flat_points:
        raise InvalidParameterError(
            f"{case.case_id}: found {len(points)} of {config.flat_points} flat points"
        )
    return target, points


def contraction_errors(
    case: ContractionCase,
    points: Sequence[tuple[float, float]],
    target: Chart,
    r_values: Sequence[float],
) -> list[float]:
    "Maximal distance of the projected source points per R"
    if case.schedule is None:
        raise NoContractionError(case.case_id, case.negative or "no schedule")
    sources = _SourceCharts(case)
    maxima = []
    with mp.workdps(EXTENDED_DPS):
        references = [
            target.evaluate(
                mpmath.mpf(z1), mpmath.mpf(z2), precision=Precision.EXTENDED
            ).flat_pair()
            for z1, z2 in points
        ]
        for R in r_values:
            radius = mpmath.mpf(R)
            worst = mpmath.mpf(0)
            for (z1, z2), reference in zip(points, references):
                octant = case.octant(z1, z2) if case.octant else (1, 1, 1)
                chart = sources.get(radius, octant)
                xi1, xi2 = case.schedule(mpmath.mpf(z1), mpmath.mpf(z2), radius)
                chart.check_domain(xi1, xi2)
                point = chart.evaluate(xi1, xi2, precision=Precision.EXTENDED)
                worst = max(worst, _distance(beltrami(point), reference))
            maxima.append(float(worst))
    return maxima


def run_contraction(
    case: ContractionCase,
    config: ContractionConfig = ContractionConfig(),
    *,
    seed: int = 0,
    points: Optional[Sequence[tuple[float, float]]] = None,
) -> ConvergenceReport:
    """Fits the convergence order of `case` over `config.r_values`.

    Catalogued negative cases raise `NoContractionError`.
    """
    log = logger.bind(case=case.case_id)
    if not case.positive:
        raise NoContractionError(case.case_id, case.negative or "")
    target, sampled = flat_points(case, config, seed)
    points = list(points) if points is not None else sampled
    errors = contraction_errors(case, points, target, config.r_values)
    fitted = fit_order(config.r_values, errors)
    residual: Optional[str] = None
    residual_zero = True
    if case.operator is not None:
        contraction = operator_contraction(case)
        residual_zero = contraction.residual.is_zero()
        residual = "0" if residual_zero else repr(contraction.residual)
    passed = order_passes(fitted, case.expected_order, config) and residual_zero
    if fitted is None:
        status = Status.EXACT
    else:
        status = Status.CONVERGED if passed else Status.FAILED
    log.debug("contraction_run", fitted_order=fitted, max_error=errors[-1])
    return ConvergenceReport(
        case.case_id,
        case.source_id,
        case.target_id,
        status,
        list(config.r_values),
        errors,
        fitted,
        case.expected_order,
        residual,
        passed,
    )


def negative_report(case: ContractionCase, reason: str) -> ConvergenceReport:
    return ConvergenceReport(
        case.case_id,
        case.source_id,
        case.target_id,
        Status.NO_CONTRACTION,
        [],
        [],
        None,
        case.expected_order,
        None,
        True,
        reason,
    )


# the compound operator of the second parabolic system of E11

PARABOLIC_II_ID: Final[str] = "E11/parabolic-II"


def compound_matrix(alpha: Any, R: Any) -> list[list[Any]]:
    "{K1, K2} + {L, K2} + alpha/R (L - K1)^2 over (K1, K2, L)"
    a = alpha / R
    return [[a, 1, -a], [1, 0, 1], [-a, 1, a]]


def compound_limit(alpha: Any) -> OperatorContraction:
    "{p0, N} + {p1, N} + alpha (p0 - p1)^2 in the flat triple (p0, p1, N)"
    alpha = _exact(alpha)
    matrix = Matrix(compound_matrix(alpha, R_SYMBOL))
    scaled = scaled_beltrami_operator(
        GeneratorSpace.BELTRAMI_H2_TILDE, matrix, scale=1 / R_SYMBOL
    )
    limit_operator = scaled.subs_eps(0)
    target = flat_operator(
        GeneratorSpace.FLAT_E11,
        Matrix([[alpha, -alpha, 1], [-alpha, alpha, 1], [1, 1, 0]]),
    )
    return OperatorContraction(
        "compound", limit_operator, target, limit_operator - target
    )


def parabolic_II_compound(
    alpha: Any,
    config: ContractionConfig = ContractionConfig(),
    *,
    seed: int = 0,
) -> ConvergenceReport:
    """Reconstructs parabolic-II points from the roots of the compound operator.

    Every flat point is lifted to H~2, where the pencil of the compound operator
    has the roots 4 R xi and 4 R eta up to O(1). The coordinates read off the
    roots are mapped back with the flat chart and compared to the point.
    Complex roots end the run with status "failed".
    """
    if alpha == 0:
        raise InvalidParameterError("alpha != 0")
    case_id = f"H~2/compound[alpha={alpha}]->{PARABOLIC_II_ID}"
    log = logger.bind(case=case_id)
    target = get_chart(PARABOLIC_II_ID, alpha=alpha)
    points = target.sample(config.flat_points, seed=seed)
    maxima: list[float] = []
    complex_roots = 0
    with mp.workdps(EXTENDED_DPS):
        a = mpmath.mpf(alpha)
        references = [
            target.evaluate(
                mpmath.mpf(xi), mpmath.mpf(eta), precision=Precision.EXTENDED
            ).flat_pair()
            for xi, eta in points
        ]
        for R in config.r_values:
            radius = mpmath.mpf(R)
            matrix = compound_matrix(a, radius)
            worst = mpmath.mpf(0)
            for reference in references:
                point = lift(Space.H2_TILDE, reference[0], reference[1], radius)
                roots = pencil(matrix, point).roots()
                if roots is None:
                    complex_roots += 1
                    continue
                xi, eta = roots[0] / (4 * radius), roots[1] / (4 * radius)
                estimate = target.evaluate(
                    xi, eta, precision=Precision.EXTENDED
                ).flat_pair()
                worst = max(worst, _distance(estimate, reference))
            maxima.append(float(worst))
    operator = compound_limit(alpha)
    residual_zero = operator.residual.is_zero()
    if complex_roots:
        log.warning("complex_roots", count=complex_roots)
        fitted = None
        passed = False
        status = Status.FAILED
    else:
        fitted = fit_order(config.r_values, maxima)
        passed = order_passes(fitted, 1.0, config) and residual_zero
        status = Status.EXACT if fitted is None else (
            Status.CONVERGED if passed else Status.FAILED
        )
    log.debug("compound_run", fitted_order=fitted, complex_roots=complex_roots)
    return ConvergenceReport(
        case_id,
        "H~2/compound",
        PARABOLIC_II_ID,
        status,
        list(config.r_values),
        maxima,
        fitted,
        1.0,
        "0" if residual_zero else repr(operator.residual),
        passed,
        f"{complex_roots} complex root pairs" if complex_roots else None,
    )


def beltrami_metric_convergence(
    space: Space,
    config: ContractionConfig = ContractionConfig(),
    *,
    seed: int = 0,
) -> ConvergenceReport:
    "Largest deviation of the Beltrami metric from the flat one, order 2 expected"
    radius = Symbol("R", positive=True)
    metric, variables = _beltrami_metric(space, radius)
    flat = Matrix.diag(1, 1 if space is Space.H2 else -1)
    deviation = sympy_lambdify(
        (*variables, radius), (metric - flat).tolist(), modules="mpmath"
    )
    rng = np.random.default_rng(seed)
    samples = rng.uniform(-2, 2, size=(config.flat_points, 2))
    maxima = []
    with mp.workdps(EXTENDED_DPS):
        for R in config.r_values:
            worst = mpmath.mpf(0)
            for x1, x2 in samples:
                entries = deviation(mpmath.mpf(x1), mpmath.mpf(x2), mpmath.mpf(R))
                worst = max(worst, max(abs(v) for row in entries for v in row))
            maxima.append(float(worst))
    fitted = fit_order(config.r_values, maxima)
    passed = fitted is None or fitted >= 2.0 - config.order_band
    return ConvergenceReport(
        f"{space.value}/beltrami-metric",
        space.value,
        "E2" if space is Space.H2 else "E11",
        Status.CONVERGED if passed else Status.FAILED,
        list(config.r_values),
        maxima,
        fitted,
        2.0,
        None,
        passed,
    )
