"""
Base class of all coordinate charts.

A chart is a class registered under its id (e.g. "H2/SPH", "H~2/EQ-Ib",
"E11/parabolic-I"). Subclasses describe the parametrization as sympy
expressions in `XI1`, `XI2`, `R_SYMBOL` and their parameter symbols; the
expressions and their first derivatives are compiled once per backend with
`lambdify`.

Flat charts store their point in the same triple as the hyperboloids: E2 as
(0, x1, x2) and E11 as (t, x, 0).
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

import csv
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from math import inf, isfinite, nan
from typing import (
    Any,
    Callable,
    ClassVar,
    Final,
    Iterator,
    NamedTuple,
    Optional,
    TextIO,
    Type,
    TypedDict,
)

import mpmath
import numpy as np
import structlog
from mpmath import mp
from sympy import Expr, Function, Matrix, Symbol, diag, lambdify, symbols
from sympy.core.function import ArgumentIndexError

from hyperlab.config import EXTENDED_DPS, Precision, precision_from_env
from hyperlab.elliptic import jacobi_real
from hyperlab.errors import (
    AxisSingularityError,
    InvalidParameterError,
    OutOfDomainError,
    UnknownIdError,
)
from hyperlab.orbits import CASIMIR_MATRIX, Orbit
from hyperlab.polyops import R_SYMBOL

logger = structlog.get_logger(module="chart_base")

XI1, XI2 = symbols("xi1 xi2", real=True)
R = R_SYMBOL

Interval = tuple[float, float]

CHARTS_BY_ID: Final[dict[str, Type["Chart"]]] = {}

# exchanges u1 and u2, see `hyperlab.orbits.PERMUTATION` for the operator side
SWAP_U1_U2: Final[Matrix] = Matrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])

# K1, K2, L as linear vector fields u -> T u of the ambient space
GENERATOR_MATRICES: Final[tuple[Matrix, Matrix, Matrix]] = (
    Matrix([[0, 0, -1], [0, 0, 0], [-1, 0, 0]]),
    Matrix([[0, -1, 0], [-1, 0, 0], [0, 0, 0]]),
    Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]]),
)

# plastic number, generator of the R2 low discrepancy sequence
_PLASTIC: Final[float] = 1.324717957244746


@lru_cache(maxsize=None)
def parameter(name: str) -> Symbol:
    return Symbol(name, real=True)


class jacobi_sn(Function):
    nargs = 2

    def fdiff(self, argindex: int = 1) -> Expr:
        if argindex != 1:
            raise ArgumentIndexError(self, argindex)
        u, k = self.args
        return jacobi_cn(u, k) * jacobi_dn(u, k)


class jacobi_cn(Function):
    nargs = 2

    def fdiff(self, argindex: int = 1) -> Expr:
        if argindex != 1:
            raise ArgumentIndexError(self, argindex)
        u, k = self.args
        return -jacobi_sn(u, k) * jacobi_dn(u, k)


class jacobi_dn(Function):
    nargs = 2

    def fdiff(self, argindex: int = 1) -> Expr:
        if argindex != 1:
            raise ArgumentIndexError(self, argindex)
        u, k = self.args
        return -(k**2) * jacobi_sn(u, k) * jacobi_cn(u, k)


def _jacobi_namespace(as_float: bool) -> dict[str, Callable[..., Any]]:
    convert: Callable[[Any], Any] = float if as_float else (lambda x: x)
    return {
        "jacobi_sn": lambda u, k: convert(jacobi_real(u, k).sn),
        "jacobi_cn": lambda u, k: convert(jacobi_real(u, k).cn),
        "jacobi_dn": lambda u, k: convert(jacobi_real(u, k).dn),
    }


def pushforward(matrix: Matrix, transform: Matrix) -> Matrix:
    """Operator of the chart `transform` o f if `matrix` belongs to the chart f.

    Every generator T_j is carried to transform T_j transform^-1 = sum_i B_ij T_i,
    the operator matrix to B M B^T. The Casimir matrix is invariant.
    """
    inverse = transform.inv()
    columns = []
    for generator in GENERATOR_MATRICES:
        image = transform * generator * inverse
        columns.append([-image[0, 2], -image[0, 1], image[2, 1]])
    b = Matrix(columns).T
    return (b * matrix * b.T).applyfunc(lambda entry: entry.simplify())


def casimir_shifted(matrix: Matrix, coefficient: Any) -> Matrix:
    return matrix + coefficient * CASIMIR_MATRIX


class PencilValues(NamedTuple):
    "Trace and product of the characteristic roots at one point"

    trace: Any
    product: Any

    @property
    def discriminant(self) -> Any:
        return self.trace**2 - 4 * self.product

    def roots(self) -> Optional[tuple[Any, Any]]:
        "Ascending real roots, None unless the discriminant is positive"
        discriminant = self.discriminant
        if not discriminant > 0:
            return None
        root = discriminant**0.5
        return ((self.trace - root) / 2, (self.trace + root) / 2)


def classical_symbol(matrix: Any, point: "AmbientPoint") -> tuple[Any, Any, Any]:
    """A, B, C of the operator `matrix` as quadratic form A p_tau^2 + 2B p_tau p_phi
    + C p_phi^2 in the pseudo-spherical momenta at `point`.
    """
    u0, u1, u2 = point
    rho2 = u1**2 + u2**2
    if rho2 == 0:
        raise AxisSingularityError()
    rho = rho2**0.5
    alpha = (-u2 / rho, -u1 / rho, 0)
    beta = (-u0 * u1 / rho2, u0 * u2 / rho2, 1)

    def form(x: tuple[Any, ...], y: tuple[Any, ...]) -> Any:
        return sum(
            matrix[i][j] * x[i] * y[j]
            for i in range(3)
            for j in range(3)
            if matrix[i][j]
        )

    return form(alpha, alpha), form(alpha, beta), form(beta, beta)


def pencil(matrix: Any, point: "AmbientPoint") -> PencilValues:
    "det(a - lambda g^-1) = 0 with g = diag(R^2, eps rho^2)"
    a, b, c = classical_symbol(matrix, point)
    g11 = point.R**2
    g22 = point.space.epsilon * (point.u1**2 + point.u2**2)
    return PencilValues(a * g11 + c * g22, (a * c - b**2) * g11 * g22)


class Space(str, Enum):
    H2 = "H2"
    H2_TILDE = "H~2"
    E2 = "E2"
    E11 = "E11"

    @property
    def epsilon(self) -> int:
        "+1 on the two-sheeted, -1 on the one-sheeted hyperboloid, 0 if flat"
        return {Space.H2: 1, Space.H2_TILDE: -1}.get(self, 0)

    @property
    def is_flat(self) -> bool:
        return self in (Space.E2, Space.E11)

    @property
    def signature(self) -> tuple[int, int, int]:
        "Diagonal of the pulled back quadratic form in (u0, u1, u2)"
        if self is Space.E2:
            return (0, 1, 1)
        if self is Space.E11:
            return (1, -1, 0)
        return (-self.epsilon, self.epsilon, self.epsilon)


def normalize_id(identifier: str) -> str:
    "Accepts the combining tilde spelling H̃2 and returns the ASCII id"
    return (
        identifier.strip()
        .replace("H̃₂", "H~2")
        .replace("H̃2", "H~2")
        .replace("H₂", "H2")
    )


@dataclass(frozen=True)
class AmbientPoint:
    u0: Any
    u1: Any
    u2: Any
    space: Space
    R: Any = 1

    def __iter__(self) -> Iterator[Any]:
        return iter((self.u0, self.u1, self.u2))

    def embedding_residual(self) -> float:
        """|(-u0^2 + u1^2 + u2^2) + eps R^2| / R^2 on a hyperboloid.

        Flat points report the component which has to vanish.
        """
        if self.space is Space.E2:
            return float(abs(self.u0))
        if self.space is Space.E11:
            return float(abs(self.u2))
        quadric = -self.u0**2 + self.u1**2 + self.u2**2
        return float(abs(quadric + self.space.epsilon * self.R**2) / self.R**2)

    def flat_pair(self) -> tuple[Any, Any]:
        "(x1, x2) of an E2 point, (t, x) of an E11 point"
        if self.space is Space.E2:
            return (self.u1, self.u2)
        if self.space is Space.E11:
            return (self.u0, self.u1)
        raise InvalidParameterError(f"{self.space.value} points have no flat pair")

    def swapped(self) -> "AmbientPoint":
        return AmbientPoint(self.u0, self.u2, self.u1, self.space, self.R)


@dataclass(frozen=True)
class MetricTensor:
    g11: float
    g12: float
    g22: float

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12**2

    def orthogonality_residual(self) -> float:
        scale = max(abs(self.g11), abs(self.g22))
        return abs(self.g12) / scale if scale else inf


class GridRow(NamedTuple):
    xi1: float
    xi2: float
    u0: float
    u1: float
    u2: float
    covered: bool


class ChartInfo(TypedDict):
    id: str
    space: str
    coordinates: list[str]
    orthogonal: bool
    orbit: Optional[str]
    parameters: dict[str, Any]
    targets: list[str]
    description: str


class _Compiled(NamedTuple):
    embed: Callable[..., Any]
    jacobian: Callable[..., Any]
    lambdas: Optional[Callable[..., Any]]


def _clamp(interval: Interval, span: float = 2.5) -> Interval:
    low, high = interval
    if isfinite(low) and isfinite(high):
        return (low, high)
    if isfinite(low):
        return (low, low + span)
    if isfinite(high):
        return (high - span, high)
    return (-span, span)


def _inset(interval: Interval, fraction: float = 0.02) -> Interval:
    low, high = interval
    margin = (high - low) * fraction
    return (low + margin, high - margin)


def _apply(matrix: Optional[list[list[float]]], values: Any) -> list[Any]:
    values = list(values)
    if matrix is None:
        return values
    return [sum(row[j] * values[j] for j in range(3) if row[j]) for row in matrix]


def _is_real(value: Any) -> bool:
    if isinstance(value, mpmath.mpc):
        return False
    if isinstance(value, complex):
        return False
    return bool(mpmath.isfinite(value))


@lru_cache(maxsize=None)
def _compiled(cls: Type["Chart"], precision: Precision) -> _Compiled:
    arguments = (XI1, XI2, R, *(parameter(name) for name in cls.PARAMETERS))
    expressions = Matrix(cls.expressions())
    jacobian = expressions.jacobian(Matrix([XI1, XI2]))
    if precision is Precision.DOUBLE:
        modules: list[Any] = [_jacobi_namespace(as_float=True), "math"]
    else:
        modules = [_jacobi_namespace(as_float=False), "mpmath"]
    lambdas = cls.lambda_expressions()
    logger.debug("chart_compiled", chart=cls.chart_id, precision=precision.value)
    return _Compiled(
        embed=lambdify(arguments, list(expressions), modules=modules),
        jacobian=lambdify(arguments, jacobian.tolist(), modules=modules),
        lambdas=(
            lambdify(arguments, list(lambdas), modules=modules)
            if lambdas is not None
            else None
        ),
    )


class Chart(ABC):
    """A parametrization (xi1, xi2) -> (u0, u1, u2) with domain and region.

    Class attributes describe the chart, instances fix R and the parameter
    values. Instances are immutable.
    """

    chart_id: ClassVar[str]
    space: ClassVar[Space]
    coordinates: ClassVar[tuple[str, str]] = ("xi1", "xi2")
    orthogonal: ClassVar[bool] = True
    orbit: ClassVar[Optional[Orbit]] = None
    PARAMETERS: ClassVar[dict[str, Any]] = {}
    DOMAIN: ClassVar[tuple[Interval, Interval]] = ((-inf, inf), (-inf, inf))
    SAMPLE_BOX: ClassVar[Optional[tuple[Interval, Interval]]] = None
    COVER_INEQUALITY: ClassVar[Optional[str]] = None
    # flat chart ids this chart contracts to, empty if there is no limit
    targets: ClassVar[tuple[str, ...]] = ()
    # squared coordinates like u_i^2 = ... allow to pick one of eight points
    squared_form: ClassVar[bool] = False
    permuted: ClassVar[bool] = False

    def __init__(
        self,
        R: Any = 1,
        *,
        octant: tuple[int, int, int] = (1, 1, 1),
        **params: Any,
    ) -> None:
        unknown = set(params) - set(self.PARAMETERS)
        if unknown:
            raise InvalidParameterError(
                f"{self.chart_id} takes the parameters "
                f"{sorted(self.PARAMETERS) or 'none'}, got {sorted(unknown)}"
            )
        if not R > 0:
            raise InvalidParameterError("R > 0")
        if tuple(octant) != (1, 1, 1):
            if not self.squared_form:
                raise InvalidParameterError(
                    f"{self.chart_id} has no octant selector"
                )
            if any(sign not in (1, -1) for sign in octant):
                raise InvalidParameterError("octant signs have to be +1 or -1")
        self.R = R
        self.octant = tuple(octant)
        self.params: dict[str, Any] = {**self.PARAMETERS, **params}
        self.validate()
        self.logger = structlog.get_logger(chart=self.chart_id)

    def __init_subclass__(cls, /, chart_id: Optional[str] = None, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        # intermediate classes sharing formulas are not registered
        if chart_id is None:
            return
        if existing_chart := CHARTS_BY_ID.get(chart_id):
            # this case can happen during development with live reload
            if existing_chart is not cls:
                raise ValueError(
                    f"Chart id {chart_id} is already taken by {existing_chart}"
                )
        cls.chart_id = chart_id
        CHARTS_BY_ID[chart_id] = cls

    def __repr__(self) -> str:
        params = ", ".join(f"{key}={value}" for key, value in self.params.items())
        return f"{type(self).__name__}(R={self.R}{', ' if params else ''}{params})"

    # description

    @classmethod
    @abstractmethod
    def parametrization(cls) -> tuple[Expr, Expr, Expr]:
        ...

    @classmethod
    def transform(cls) -> Optional[Matrix]:
        "Linear isometry applied after `parametrization`"
        return SWAP_U1_U2 if cls.permuted else None

    @classmethod
    def expressions(cls) -> tuple[Expr, Expr, Expr]:
        u = Matrix(cls.parametrization())
        matrix = cls.transform()
        if matrix is not None:
            u = matrix * u
        return tuple(u)  # type: ignore

    @classmethod
    def lambda_expressions(cls) -> Optional[tuple[Expr, Expr]]:
        """Characteristic roots (lambda1(xi1), lambda2(xi2)) of the chart's operator.

        Stated for the pencil det(a - lambda g^-1) = 0 in the reference
        pseudo-spherical gauge, see `hyperlab.separation.char_roots`.
        """
        return None

    @classmethod
    def base_operator(cls) -> Optional[Matrix]:
        return None

    @classmethod
    def operator(cls) -> Optional[Matrix]:
        "Matrix over (K1, K2, L) of the operator diagonalized by the chart"
        matrix = cls.base_operator()
        transform = cls.transform()
        if matrix is not None and transform is not None:
            return pushforward(matrix, transform)
        return matrix

    @classmethod
    def info(cls) -> ChartInfo:
        return ChartInfo(
            id=cls.chart_id,
            space=cls.space.value,
            coordinates=list(cls.coordinates),
            orthogonal=cls.orthogonal,
            orbit=cls.orbit.value if cls.orbit else None,
            parameters={key: str(value) for key, value in cls.PARAMETERS.items()},
            targets=list(cls.targets),
            description=(cls.__doc__ or "").strip(),
        )

    # parameters and domains

    def validate(self) -> None:
        "Raises `InvalidParameterError` naming the violated constraint"

    def value(self, name: str) -> float:
        return float(self.params[name])

    def domain(self) -> tuple[Interval, Interval]:
        return self.DOMAIN

    def constraint(self, xi1: Any, xi2: Any) -> Optional[str]:
        "Returns the violated inequality between both coordinates, if any"
        return None

    def sample_box(self) -> tuple[Interval, Interval]:
        if self.SAMPLE_BOX is not None:
            return self.SAMPLE_BOX
        first, second = self.domain()
        return (_inset(_clamp(first)), _inset(_clamp(second)))

    def check_domain(self, xi1: Any, xi2: Any) -> None:
        for name, value, (low, high) in zip(self.coordinates, (xi1, xi2), self.domain()):
            if not low < value < high:
                raise OutOfDomainError(self.chart_id, f"{low} < {name} < {high}")
        if violated := self.constraint(xi1, xi2):
            raise OutOfDomainError(self.chart_id, violated)

    def covered(self, point: AmbientPoint) -> bool:
        "True iff `point` lies strictly inside the region parametrized by the chart"
        inverse = self._inverse_transform
        if inverse is None:
            return self.region(point)
        u = _apply(inverse, point)
        return self.region(AmbientPoint(*u, space=point.space, R=point.R))

    @cached_property
    def _octant_exact(self) -> Optional[list[list[Any]]]:
        "Octant signs applied in the frame of `parametrization`, mpf entries"
        if self.octant == (1, 1, 1):
            return None
        signs = diag(*self.octant)
        transform = type(self).transform()
        if transform is not None:
            transform = self._bind(transform)
            signs = transform * signs * transform.inv()
        with mp.workdps(EXTENDED_DPS):
            return [
                [mpmath.mpf(str(entry.evalf(EXTENDED_DPS))) for entry in row]
                for row in signs.tolist()
            ]

    @cached_property
    def _octant_matrix(self) -> Optional[list[list[float]]]:
        if self._octant_exact is None:
            return None
        return [[float(entry) for entry in row] for row in self._octant_exact]

    @cached_property
    def _base_matrix(self) -> Optional[list[list[float]]]:
        matrix = type(self).base_operator()
        return None if matrix is None else self._substitute(matrix).tolist()

    def _roots(self, point: AmbientPoint) -> Optional[tuple[Any, Any]]:
        "Real characteristic roots of the base operator at a base frame point"
        try:
            return pencil(self._base_matrix, point).roots()
        except AxisSingularityError:
            return None

    def _octant_agrees(self, point: AmbientPoint, axes: tuple[int, ...]) -> bool:
        u = tuple(point)
        return all(u[axis] * self.octant[axis] > 0 for axis in axes)

    @cached_property
    def _inverse_transform(self) -> Optional[list[list[float]]]:
        transform = type(self).transform()
        if transform is None:
            return None
        return self._substitute(transform.inv()).tolist()

    def _bind(self, matrix: Matrix) -> Matrix:
        "Substitutes R and the parameter values, keeps the result symbolic"
        substitutions = {parameter(name): self.params[name] for name in self.PARAMETERS}
        substitutions[R] = self.R
        return matrix.subs(substitutions)

    def _substitute(self, matrix: Matrix) -> np.ndarray:
        return np.array(self._bind(matrix).evalf(), dtype=float)

    def region(self, point: AmbientPoint) -> bool:
        "Region inequality before the transformation of the chart"
        return True

    # evaluation

    def _arguments(self, xi1: Any, xi2: Any, precision: Precision) -> list[Any]:
        values = [xi1, xi2, self.R, *(self.params[name] for name in self.PARAMETERS)]
        if precision is Precision.DOUBLE:
            return [float(v) for v in values]
        return [mpmath.mpf(v) if not isinstance(v, mpmath.mpf) else v for v in values]

    def _call(self, which: str, xi1: Any, xi2: Any, precision: Optional[Precision]) -> Any:
        precision = precision or precision_from_env()
        function = getattr(_compiled(type(self), precision), which)
        try:
            if precision is Precision.DOUBLE:
                return function(*self._arguments(xi1, xi2, precision))
            with mp.workdps(EXTENDED_DPS):
                return function(*self._arguments(xi1, xi2, precision))
        except (ValueError, ZeroDivisionError, OverflowError):
            raise OutOfDomainError(self.chart_id, f"defined at ({xi1}, {xi2})")

    def evaluate(
        self, xi1: Any, xi2: Any, *, precision: Optional[Precision] = None
    ) -> AmbientPoint:
        "Evaluates the parametrization without domain and region checks"
        precision = precision or precision_from_env()
        values = self._call("embed", xi1, xi2, precision)
        if not all(_is_real(v) for v in values):
            raise OutOfDomainError(self.chart_id, f"real at ({xi1}, {xi2})")
        if precision is Precision.DOUBLE:
            u0, u1, u2 = _apply(self._octant_matrix, values)
        else:
            with mp.workdps(EXTENDED_DPS):
                u0, u1, u2 = _apply(self._octant_exact, values)
        return AmbientPoint(u0, u1, u2, self.space, self.R)

    def embed(
        self, xi1: Any, xi2: Any, *, precision: Optional[Precision] = None
    ) -> AmbientPoint:
        self.check_domain(xi1, xi2)
        point = self.evaluate(xi1, xi2, precision=precision)
        if not self.covered(point):
            raise OutOfDomainError(
                self.chart_id, self.COVER_INEQUALITY or "the covered region"
            )
        return point

    def jacobian(self, xi1: Any, xi2: Any) -> np.ndarray:
        "3x2 matrix of first derivatives d u_mu / d xi^i, octant signs applied"
        self.check_domain(xi1, xi2)
        rows = np.array(self._call("jacobian", xi1, xi2, Precision.DOUBLE), dtype=float)
        if self._octant_matrix is None:
            return rows
        return np.array(self._octant_matrix) @ rows

    def metric(self, xi1: Any, xi2: Any) -> MetricTensor:
        "Pullback g_ik = eps G(d u / d xi^i, d u / d xi^k)"
        jacobian = self.jacobian(xi1, xi2)
        g = jacobian.T @ np.diag(self.space.signature) @ jacobian
        return MetricTensor(float(g[0, 0]), float(g[0, 1]), float(g[1, 1]))

    def lambda_map(self, xi1: Any, xi2: Any) -> Optional[tuple[float, float]]:
        if _compiled(type(self), Precision.DOUBLE).lambdas is None:
            return None
        values = self._call("lambdas", xi1, xi2, Precision.DOUBLE)
        return (float(values[0]), float(values[1]))

    def operator_matrix(self) -> Optional[np.ndarray]:
        matrix = type(self).operator()
        return None if matrix is None else self._substitute(matrix)

    # sampling and export

    def sample(
        self,
        count: int,
        seed: int = 0,
        box: Optional[tuple[Interval, Interval]] = None,
    ) -> list[tuple[float, float]]:
        """Quasi-random interior points of `box`, by default the sample box.

        Uses the R2 sequence, shifted by a seeded random offset, and drops
        points which violate `constraint` or the covered region.
        """
        (low1, high1), (low2, high2) = box or self.sample_box()
        offset = np.random.default_rng(seed).random(2)
        step = np.array([1 / _PLASTIC, 1 / _PLASTIC**2])
        points: list[tuple[float, float]] = []
        index = 0
        # every chart region occupies a sizeable part of its box
        while len(points) < count and index < 20 * count + 100:
            index += 1
            u = (offset + index * step) % 1
            xi1 = low1 + (high1 - low1) * u[0]
            xi2 = low2 + (high2 - low2) * u[1]
            if self.constraint(xi1, xi2):
                continue
            try:
                self.embed(xi1, xi2, precision=Precision.DOUBLE)
            except OutOfDomainError:
                continue
            points.append((float(xi1), float(xi2)))
        if len(points) < count:
            self.logger.warning("sample_short", requested=count, found=len(points))
        return points

    def grid(self, n1: int, n2: int) -> list[GridRow]:
        "Row-major mesh over the sample box, uncovered cells flagged"
        if n1 < 2 or n2 < 2:
            raise InvalidParameterError("n1, n2 >= 2")
        (low1, high1), (low2, high2) = self.sample_box()
        rows = []
        for xi1 in np.linspace(low1, high1, n1):
            for xi2 in np.linspace(low2, high2, n2):
                try:
                    point = self.evaluate(xi1, xi2, precision=Precision.DOUBLE)
                except OutOfDomainError:
                    rows.append(GridRow(float(xi1), float(xi2), nan, nan, nan, False))
                    continue
                covered = self.constraint(xi1, xi2) is None and self.covered(point)
                rows.append(
                    GridRow(
                        float(xi1),
                        float(xi2),
                        float(point.u0),
                        float(point.u1),
                        float(point.u2),
                        covered,
                    )
                )
        self.logger.debug(
            "grid_created",
            rows=len(rows),
            uncovered=sum(1 for row in rows if not row.covered),
        )
        return rows


class FlatChart(Chart):
    "Charts of E2 and E11, evaluated with the same machinery"

    def flat_point(
        self, xi1: Any, xi2: Any, *, precision: Optional[Precision] = None
    ) -> tuple[Any, Any]:
        return self.embed(xi1, xi2, precision=precision).flat_pair()


def write_grid_csv(rows: list[GridRow], stream: TextIO) -> None:
    "Header `xi1,xi2,u0,u1,u2,covered`, floats in round trip notation"
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(GridRow._fields)
    for row in rows:
        writer.writerow(
            [repr(float(v)) for v in row[:5]] + [1 if row.covered else 0]
        )


def get_chart(identifier: str, R: Any = 1, **params: Any) -> Chart:
    try:
        cls = CHARTS_BY_ID[normalize_id(identifier)]
    except KeyError:
        raise UnknownIdError("chart", identifier)
    return cls(R, **params)


def catalog() -> list[ChartInfo]:
    return [CHARTS_BY_ID[chart_id].info() for chart_id in sorted(CHARTS_BY_ID)]
