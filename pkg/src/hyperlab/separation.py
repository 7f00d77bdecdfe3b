"""
Operators against charts: classical symbols, characteristic roots, the
Liouville form and the consistency of lambda maps.

Everything is stated in the reference pseudo-spherical gauge: the momenta
(p_tau, p_phi) of the chart u0 = R cosh(tau) (resp. u0 = R sinh(tau)) and the
metric g = diag(R^2, eps (u1^2 + u2^2)).
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

import cmath
from dataclasses import dataclass
from typing import Any, Mapping, NamedTuple, Optional, Sequence, Union

import structlog
from sympy import Matrix

from hyperlab.chart_base import (
    AmbientPoint,
    Chart,
    classical_symbol,
    pencil,
)
from hyperlab.config import Tolerances
from hyperlab.errors import (
    AxisSingularityError,
    ChartNotOrthogonalError,
    InvalidParameterError,
    NonzeroCommutatorError,
    OutOfDomainError,
)
from hyperlab.orbits import CASIMIR_MATRIX, Orbit, canonical_matrix
from hyperlab.polyops import (
    EPS,
    DiffOperator,
    casimir,
    op_commutator,
    quadratic_operator,
)

logger = structlog.get_logger(module="separation")

OperatorSpec = Union[Orbit, Matrix]


class ClassicalSymbol(NamedTuple):
    "S = A p_tau^2 + 2 B p_tau p_phi + C p_phi^2"

    A: Any
    B: Any
    C: Any


@dataclass(frozen=True)
class CharRoots:
    lambda1: Any
    lambda2: Any
    trace: Any
    product: Any
    discriminant: Any
    complex: bool
    double: bool

    def system_residual(self) -> float:
        "Relative residual of lambda1 + lambda2 = trace, lambda1 lambda2 = product"
        scale = max(abs(self.lambda1), abs(self.lambda2), 1.0)
        return float(
            max(
                abs(self.lambda1 + self.lambda2 - self.trace) / scale,
                abs(self.lambda1 * self.lambda2 - self.product) / scale**2,
            )
        )


class LiouvilleReport(NamedTuple):
    chart: str
    samples: int
    maxOffDiag: float
    maxConformal: float
    maxMixedPartial: float
    passed: bool


class LambdaReport(NamedTuple):
    chart: str
    samples: int
    maxCrossVariation: float
    maxMapResidual: Optional[float]
    offending: Optional[tuple[float, float]]
    passed: bool


def _numeric(matrix: Matrix) -> list[list[float]]:
    return [[float(entry) for entry in row] for row in matrix.tolist()]


def operator_matrix(spec: OperatorSpec, params: Mapping[str, Any] = {}) -> Matrix:
    "Resolves an orbit tag with parameters or passes a matrix through"
    if isinstance(spec, Orbit):
        if spec is Orbit.CASIMIR:
            return CASIMIR_MATRIX
        return canonical_matrix(spec, params)
    return Matrix(spec)


def classical_coeffs(
    spec: OperatorSpec, point: AmbientPoint, params: Mapping[str, Any] = {}
) -> ClassicalSymbol:
    return ClassicalSymbol(
        *classical_symbol(_numeric(operator_matrix(spec, params)), point)
    )


def char_roots(
    spec: OperatorSpec,
    point: AmbientPoint,
    params: Mapping[str, Any] = {},
    *,
    double_root: float = 1e-8,
) -> CharRoots:
    """Roots of det(a - lambda g^-1) = 0 at `point`.

    A negative discriminant yields the complex conjugate pair, flagged with
    `complex`. `double` is set if the discriminant vanishes relative to
    trace^2.
    """
    values = pencil(_numeric(operator_matrix(spec, params)), point)
    discriminant = values.discriminant
    scale = max(float(abs(values.trace)) ** 2, float(abs(values.product)), 1e-300)
    double = abs(float(discriminant)) <= double_root * scale
    if discriminant < 0 and not double:
        root = cmath.sqrt(float(discriminant))
        trace = float(values.trace)
        first, second = (trace - root) / 2, (trace + root) / 2
        return CharRoots(
            first, second, values.trace, values.product, discriminant, True, False
        )
    root = abs(discriminant) ** 0.5 if not double else 0
    return CharRoots(
        (values.trace - root) / 2,
        (values.trace + root) / 2,
        values.trace,
        values.product,
        discriminant,
        False,
        double,
    )


def liouville_check(
    chart: Chart,
    samples: int = 200,
    *,
    seed: int = 0,
    tolerances: Tolerances = Tolerances(),
) -> LiouvilleReport:
    """Checks that `chart` admits the Liouville form (a(u) + b(v)) (du^2 +- dv^2).

    Only the ratio |g22 / g11| = h2(xi2) / h1(xi1) has to factor; u and v are
    the arclength normalizations du = sqrt(h1) dxi1, dv = sqrt(h2) dxi2 around
    the first sample. Additivity of the conformal factor is then checked with
    the cross difference of a square stencil, which vanishes exactly for
    a(xi1) + b(xi2).
    """
    if not chart.orthogonal:
        raise ChartNotOrthogonalError(chart.chart_id)
    logger = structlog.get_logger(chart=chart.chart_id, check="liouville")
    points = chart.sample(samples, seed=seed)
    if not points:
        return LiouvilleReport(chart.chart_id, 0, 0.0, 0.0, 0.0, False)
    a0, b0 = points[0]
    (low1, high1), (low2, high2) = chart.sample_box()
    step1, step2 = 0.01 * (high1 - low1), 0.01 * (high2 - low2)

    def ratio(xi1: float, xi2: float) -> float:
        g = chart.metric(xi1, xi2)
        return abs(g.g22) / abs(g.g11)

    def conformal(xi1: float, xi2: float) -> float:
        return abs(chart.metric(xi1, xi2).g11) * ratio(xi1, b0)

    reference = ratio(a0, b0)
    max_offdiag = max_conformal = max_mixed = 0.0
    checked = 0
    for xi1, xi2 in points:
        try:
            metric = chart.metric(xi1, xi2)
            max_offdiag = max(max_offdiag, metric.orthogonality_residual())
            expected = ratio(xi1, b0) * ratio(a0, xi2) / reference
            max_conformal = max(
                max_conformal, abs(ratio(xi1, xi2) / expected - 1)
            )
            corners = [
                conformal(xi1 + s1 * step1, xi2 + s2 * step2)
                for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1))
            ]
        except OutOfDomainError:
            continue
        checked += 1
        cross = corners[0] - corners[1] - corners[2] + corners[3]
        max_mixed = max(max_mixed, abs(cross) / max(abs(c) for c in corners))
    passed = (
        checked > 0
        and max_offdiag <= tolerances.orthogonality
        and max_conformal <= tolerances.orthogonality
        and max_mixed <= 1e-6
    )
    logger.debug(
        "liouville_checked",
        samples=checked,
        off_diagonal=max_offdiag,
        conformal=max_conformal,
        mixed=max_mixed,
    )
    return LiouvilleReport(
        chart.chart_id, checked, max_offdiag, max_conformal, max_mixed, passed
    )


def commutation_certificate(
    spec: OperatorSpec,
    params: Mapping[str, Any] = {},
    *,
    linear: Optional[Sequence[Any]] = None,
) -> DiffOperator:
    """Returns the normal form of [C, S], the zero operator.

    Raises `NonzeroCommutatorError` otherwise.
    """
    operator = quadratic_operator(operator_matrix(spec, params), linear=linear)
    commutator = op_commutator(casimir(), operator)
    if not commutator.is_zero():
        raise NonzeroCommutatorError(commutator)
    return commutator


def parabolic_II_operator(alpha: Any) -> DiffOperator:
    "{K1, K2} + {L, K2} + alpha eps (L - K1)^2 over the ambient triple"
    compound = quadratic_operator(Matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]]))
    square = quadratic_operator(Matrix([[1, 0, -1], [0, 0, 0], [-1, 0, 1]]))
    return compound + square.scale(EPS * alpha)


def compound_certificate(alpha: Any) -> DiffOperator:
    commutator = op_commutator(casimir(), parabolic_II_operator(alpha))
    if not commutator.is_zero():
        raise NonzeroCommutatorError(commutator)
    return commutator


def _base_point(chart: Chart, xi1: float, xi2: float) -> AmbientPoint:
    "Chart point in the frame of `parametrization`, octant signs applied"
    point = chart.evaluate(xi1, xi2)
    inverse = chart._inverse_transform
    if inverse is None:
        return point
    u = [sum(row[j] * value for j, value in enumerate(point)) for row in inverse]
    return AmbientPoint(u[0], u[1], u[2], point.space, point.R)


def _roots_at(
    chart: Chart, matrix: list[list[float]], xi1: float, xi2: float
) -> tuple[float, float]:
    values = pencil(matrix, _base_point(chart, xi1, xi2))
    discriminant = max(float(values.discriminant), 0.0)
    root = discriminant**0.5
    return ((values.trace - root) / 2, (values.trace + root) / 2)


def _distance(value: float, roots: Sequence[float], scale: float) -> float:
    return min(abs(value - other) for other in roots) / scale


def cross_variation(
    here: Sequence[float],
    along2: Sequence[float],
    along1: Sequence[float],
    scale: float,
) -> float:
    """Relative change of lambda1 along xi2 and of lambda2 along xi1.

    lambda1 and lambda2 are two different roots of `here`, the smaller
    residual of both assignments is returned. A root that is constant on its
    own cannot serve as both.
    """
    return min(
        max(_distance(here[i], along2, scale), _distance(here[1 - i], along1, scale))
        for i in (0, 1)
    )


def lambda_consistency(
    chart: Chart,
    spec: Optional[OperatorSpec] = None,
    params: Mapping[str, Any] = {},
    *,
    samples: int = 200,
    seed: int = 0,
    tolerances: Tolerances = Tolerances(),
) -> LambdaReport:
    """Checks that lambda1 only depends on xi1 and lambda2 only on xi2.

    The operator is `spec` (a canonical orbit or a matrix) in the frame of the
    chart's parametrization, by default the chart's own base operator. If the
    chart documents its lambda map it is compared as well.
    """
    logger = structlog.get_logger(chart=chart.chart_id, check="lambda")
    if spec is None:
        base = type(chart).base_operator()
        if base is None:
            raise InvalidParameterError(f"{chart.chart_id} documents no operator")
        matrix = chart._substitute(base).tolist()
    else:
        matrix = _numeric(operator_matrix(spec, params))
    points = chart.sample(samples, seed=seed)
    (low1, high1), (low2, high2) = chart.sample_box()
    shift1, shift2 = 0.05 * (high1 - low1), 0.05 * (high2 - low2)
    r2 = float(chart.R) ** 2
    max_cross = 0.0
    max_map: Optional[float] = None
    offending: Optional[tuple[float, float]] = None
    for xi1, xi2 in points:
        try:
            here = _roots_at(chart, matrix, xi1, xi2)
            along2 = _roots_at(chart, matrix, xi1, xi2 + shift2)
            along1 = _roots_at(chart, matrix, xi1 + shift1, xi2)
        except (OutOfDomainError, AxisSingularityError):
            continue
        scale = r2 + abs(here[0]) + abs(here[1])
        cross = cross_variation(here, along2, along1, scale)
        if cross > max_cross:
            max_cross, offending = cross, (xi1, xi2)
        mapped = chart.lambda_map(xi1, xi2)
        if mapped is not None and spec is None:
            values = pencil(matrix, _base_point(chart, xi1, xi2))
            residual = max(
                abs(mapped[0] + mapped[1] - float(values.trace)) / scale,
                abs(mapped[0] * mapped[1] - float(values.product)) / scale**2,
            )
            max_map = max(max_map or 0.0, residual)
    passed = bool(points) and max_cross <= tolerances.orthogonality
    if max_map is not None:
        passed = passed and max_map <= tolerances.lambda_system
    logger.debug(
        "lambda_checked",
        samples=len(points),
        cross_variation=max_cross,
        map_residual=max_map,
    )
    return LambdaReport(
        chart.chart_id,
        len(points),
        max_cross,
        max_map,
        None if passed else offending,
        passed,
    )
