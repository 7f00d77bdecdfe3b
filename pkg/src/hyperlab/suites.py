"""
Verification suites behind `hyperlab verify`.

Every suite turns into a list of work items for `hyperlab.runner`; a work item
returns one or more `CheckResult`s. A check passes if its residual stays within
its tolerance, lower bounds are flagged in `detail`.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from abc import ABC, abstractmethod
from functools import partial
from math import inf, isfinite, pi
from typing import (
    Any,
    Callable,
    ClassVar,
    Final,
    Iterable,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Type,
)

import mpmath
import numpy as np
import structlog
from mpmath import mp
from sympy import Matrix, diag, nsimplify, simplify, sqrt

from hyperlab.chart_base import (
    CHARTS_BY_ID,
    AmbientPoint,
    Chart,
    Space,
    get_chart,
    normalize_id,
    pencil,
)
from hyperlab.classify import classify_second_order, random_orbit_sample
from hyperlab.config import EXTENDED_DPS, Config, Precision
from hyperlab.contraction import (
    CASES_BY_ID,
    beltrami_metric_limit,
    compound_limit,
    operator_contraction,
)
from hyperlab.elliptic import (
    EllipticModulus,
    jacobi_agm,
    jacobi_real,
)
from hyperlab.errors import UnknownIdError
from hyperlab.orbits import (
    DEFAULT_PARAMETERS,
    NINE_CLASSES,
    Orbit,
    canonical_matrix,
    resolve_parameters,
)
from hyperlab.polyops import (
    EPS,
    GeneratorSpace,
    PolyVectorField,
    build_generators,
    vf_commutator,
)
from hyperlab.runner import WorkItem, run_parallel
from hyperlab.separation import (
    char_roots,
    commutation_certificate,
    compound_certificate,
    lambda_consistency,
    liouville_check,
)

SUITES_BY_ID: Final[dict[str, Type["Suite"]]] = {}

# radius of the charts under test, every residual is relative to R
CHECK_RADIUS: Final[float] = 1.0

# parameter sets every orbit is exercised with
PARAMETER_SETS: Final[dict[Orbit, tuple[dict[str, Any], ...]]] = {
    Orbit.EP: ({"gamma": 1}, {"gamma": 2}, {"gamma": 3}),
    Orbit.HP: ({"gamma": 1}, {"gamma": 2}, {"gamma": 3}),
    Orbit.E: ({"s": 1}, {"s": 3}),
    Orbit.H: ({"k2": "1/2"},),
    Orbit.SH: ({"c": 0}, {"c": 1}, {"c": 2}),
}

# charts whose g12 falls off like 1/alpha
DECAYING_CHARTS: Final[tuple[str, ...]] = (
    "H2/EQ-NO",
    "H2/SPH-NO",
    "H~2/SPH-NO",
    "H~2/EQ-IIb-NO",
    "E2/polar-NO",
)
DECAY_ALPHAS: Final[tuple[float, ...]] = (10.0, 100.0, 1000.0)

ELLIPTIC_TOLERANCE: Final[float] = 1e-12
ELLIPTIC_MODULI: Final[tuple[float, ...]] = (0.1, 0.3, 0.5, 0.7071, 0.9, 0.99)
ELLIPTIC_ARGUMENTS: Final[tuple[float, ...]] = (-2.5, -0.7, 0.1, 0.5, 1.3, 3.0, 7.5)
DEGENERATION_STEPS: Final[tuple[float, ...]] = (1e-1, 1e-2, 1e-3)


class CheckResult(NamedTuple):
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    detail: Optional[dict[str, Any]] = None

    def as_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "name": self.name,
            "maxResidual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.detail:
            record.update(self.detail)
        return record


def check(name: str, residual: float, tolerance: float, **detail: Any) -> CheckResult:
    "Upper bound check, NaN never passes"
    residual = float(residual)
    return CheckResult(
        name, residual, tolerance, isfinite(residual) and residual <= tolerance, detail
    )


def lower_bound(name: str, value: float, bound: float, **detail: Any) -> CheckResult:
    value = float(value)
    return CheckResult(
        name, value, bound, isfinite(value) and value >= bound, {"bound": "lower", **detail}
    )


def slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    "Least-squares slope of log(ys) over log(xs)"
    if any(y <= 0 for y in ys):
        return inf
    fitted, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(fitted)


def failed(name: str, exc: Exception) -> list[CheckResult]:
    return [CheckResult(name, inf, 0.0, False, {"error": f"{type(exc).__name__}: {exc}"})]


def parameter_label(params: Mapping[str, Any]) -> str:
    if not params:
        return ""
    return "[" + ",".join(f"{key}={value}" for key, value in params.items()) + "]"


class Suite(ABC):
    """A named group of checks, filtered by chart id, orbit class and parameters.

    `params` are handed to every chart and orbit which takes them; other
    names are ignored.
    """

    suite_id: ClassVar[str]

    def __init__(
        self,
        config: Config = Config(),
        *,
        chart: Optional[str] = None,
        orbit: Optional[Orbit] = None,
        params: Mapping[str, Any] = {},
    ) -> None:
        self.config = config
        self.chart = normalize_id(chart) if chart else None
        if self.chart is not None and self.chart not in CHARTS_BY_ID:
            raise UnknownIdError("chart", chart or "")
        self.orbit = orbit
        self.params = dict(params)
        self.logger = structlog.get_logger(suite=self.suite_id)

    def __init_subclass__(cls, /, suite_id: Optional[str] = None, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        if suite_id is None:
            return
        if existing_suite := SUITES_BY_ID.get(suite_id):
            # this case can happen during development with live reload
            if existing_suite is not cls:
                raise ValueError(
                    f"Suite id {suite_id} is already taken by {existing_suite}"
                )
        cls.suite_id = suite_id
        SUITES_BY_ID[suite_id] = cls

    @abstractmethod
    def tasks(self) -> list[WorkItem]:
        ...

    @property
    def seed(self) -> int:
        return self.config.sampling.seed

    def item(self, name: str, task: Callable[[], list[CheckResult]]) -> WorkItem:
        return WorkItem(id=f"{self.suite_id}:{name}", task=task)

    # selection

    def chart_classes(self, predicate: Callable[[Type[Chart]], bool]) -> list[Type[Chart]]:
        selected = []
        for chart_id in sorted(CHARTS_BY_ID):
            cls = CHARTS_BY_ID[chart_id]
            if self.chart is not None and chart_id != self.chart:
                continue
            if self.orbit is not None and cls.orbit is not self.orbit:
                continue
            if predicate(cls):
                selected.append(cls)
        return selected

    def instance(self, cls: Type[Chart], **overrides: Any) -> Chart:
        params = {k: float(v) for k, v in self.params.items() if k in cls.PARAMETERS}
        return cls(CHECK_RADIUS, **{**params, **overrides})

    def orbits(self) -> list[tuple[Orbit, dict[str, Any]]]:
        "Orbit classes with their parameter sets, `params` replaces the sets"
        selected = []
        for orbit in NINE_CLASSES:
            if self.orbit is not None and orbit is not self.orbit:
                continue
            names = DEFAULT_PARAMETERS.get(orbit, {})
            given = {k: v for k, v in self.params.items() if k in names}
            if given:
                selected.append((orbit, given))
            else:
                selected.extend((orbit, dict(p)) for p in PARAMETER_SETS.get(orbit, ({},)))
        return selected

    # running

    def run(self) -> list[CheckResult]:
        items = self.tasks()
        self.logger.debug("Running suite", tasks=len(items))
        results = run_parallel(
            items, self.config.contraction.workers, lambda name, exc: failed(name, exc)
        )
        checks = sorted(
            (result for _, batch in results for result in batch),
            key=lambda result: result.name,
        )
        self.logger.info(
            "Finished suite",
            checks=len(checks),
            failed=sum(1 for result in checks if not result.passed),
        )
        return checks


def get_suite(suite_id: str) -> Type[Suite]:
    try:
        return SUITES_BY_ID[suite_id]
    except KeyError:
        raise UnknownIdError("suite", suite_id)


def run_suites(
    suite_ids: Iterable[str],
    config: Config = Config(),
    *,
    chart: Optional[str] = None,
    orbit: Optional[Orbit] = None,
    params: Mapping[str, Any] = {},
) -> list[CheckResult]:
    "`all` expands to every registered suite"
    ids = list(suite_ids)
    if "all" in ids:
        ids = sorted(SUITES_BY_ID)
    suites = [
        get_suite(suite_id)(config, chart=chart, orbit=orbit, params=params)
        for suite_id in ids
    ]
    return [result for suite in suites for result in suite.run()]


# algebra

# ambient relations [X_a, X_b] = coefficient X_c over (K1, K2, L)
AMBIENT_RELATIONS: Final[tuple[tuple[int, int, int, int], ...]] = (
    (0, 1, 2, -1),
    (0, 2, 1, -1),
    (1, 2, 0, 1),
)

# flat triples (p1, p2, M) and (p0, p1, N)
FLAT_RELATIONS: Final[dict[GeneratorSpace, tuple[tuple[int, int, int, int], ...]]] = {
    GeneratorSpace.FLAT_E2: ((0, 1, 0, 0), (0, 2, 1, -1), (1, 2, 0, 1)),
    GeneratorSpace.FLAT_E11: ((0, 1, 0, 0), (0, 2, 1, 1), (1, 2, 0, 1)),
}

# K1, K2, L as (position, sign, power) with K = sign * eps^-power * X_position
BELTRAMI_FRAMES: Final[dict[GeneratorSpace, tuple[tuple[int, int, int], ...]]] = {
    GeneratorSpace.BELTRAMI_H2: ((0, -1, 1), (1, -1, 1), (2, 1, 0)),
    GeneratorSpace.BELTRAMI_H2_TILDE: ((0, -1, 1), (2, 1, 0), (1, -1, 1)),
}

GENERATOR_NAMES: Final[dict[GeneratorSpace, tuple[str, str, str]]] = {
    GeneratorSpace.AMBIENT: ("K1", "K2", "L"),
    GeneratorSpace.BELTRAMI_H2: ("pi2", "pi1", "L"),
    GeneratorSpace.BELTRAMI_H2_TILDE: ("pi0", "pi1", "K2"),
    GeneratorSpace.FLAT_E2: ("p1", "p2", "M"),
    GeneratorSpace.FLAT_E11: ("p0", "p1", "N"),
}


def _relation_residual(
    generators: Sequence[PolyVectorField], first: int, second: int, result: int, factor: Any
) -> int:
    "Number of nonzero coefficients left in [X, Y] - factor Z"
    difference = vf_commutator(generators[first], generators[second])
    if factor:
        difference = difference - generators[result].scale(factor)
    return sum(len(c.terms()) for c in difference.coefficients if c)


def relation_checks(space: GeneratorSpace) -> list[CheckResult]:
    """Commutation relations of a generator triple.

    The Beltrami triples obey the ambient relations rescaled by powers of eps,
    which vanish for eps -> 0 exactly where the flat relations do.
    """
    generators = build_generators(space)
    names = GENERATOR_NAMES[space]
    relations: list[tuple[int, int, int, Any]]
    if space is GeneratorSpace.AMBIENT:
        relations = list(AMBIENT_RELATIONS)
    elif space in FLAT_RELATIONS:
        relations = list(FLAT_RELATIONS[space])
    else:
        frame = BELTRAMI_FRAMES[space]
        relations = []
        for a, b, c, coefficient in AMBIENT_RELATIONS:
            (pa, sa, na), (pb, sb, nb), (pc, sc, nc) = frame[a], frame[b], frame[c]
            factor = coefficient * sa * sb * sc * EPS ** (na + nb - nc)
            relations.append((pa, pb, pc, factor))
    return [
        check(
            f"relation:{space.value}:[{names[a]},{names[b]}]",
            _relation_residual(generators, a, b, c, factor),
            0.0,
        )
        for a, b, c, factor in relations
    ]


def classification_check(
    orbit: Orbit, params: Mapping[str, Any], seeds: int, config: Config
) -> list[CheckResult]:
    "Classifies `seeds` random conjugates and compares class and parameters"
    expected = {
        name: float(value) for name, value in resolve_parameters(orbit, params).items()
    }
    if orbit in (Orbit.EP, Orbit.HP):
        # a K2 boost scales gamma to 1
        expected["gamma"] = 1.0
    worst = 0.0
    mismatches = 0
    for seed in range(seeds):
        sample = random_orbit_sample(orbit, seed, params)
        result = classify_second_order(sample, config.tolerances)
        if result.orbit.tag is not orbit:
            mismatches += 1
            continue
        for name, value in expected.items():
            worst = max(worst, abs(result.orbit.parameters.get(name, inf) - value))
    name = f"classify:{orbit.value}{parameter_label(params)}"
    return [
        check(f"{name}:class", mismatches, 0.0, seeds=seeds),
        check(f"{name}:params", worst, 1e-8),
    ]


def commutation_check(
    name: str, matrix_or_orbit: Any, params: Mapping[str, Any] = {}
) -> list[CheckResult]:
    commutation_certificate(matrix_or_orbit, params)
    return [check(f"commutation:{name}", 0, 0.0)]


def _exact_matrix(matrix: Matrix) -> Matrix:
    return matrix.applyfunc(lambda entry: nsimplify(simplify(entry), [sqrt(2)]))


def chart_commutation_check(chart: Chart) -> list[CheckResult]:
    operator = type(chart).operator()
    assert operator is not None
    commutation_certificate(_exact_matrix(chart._bind(operator)))
    return [check(f"commutation:{chart.chart_id}", 0, 0.0)]


def operator_limit_check(case_id: str) -> list[CheckResult]:
    contraction = operator_contraction(CASES_BY_ID[case_id])
    residual = contraction.residual
    return [
        check(
            f"operator-limit:{case_id}",
            len(residual.terms),
            0.0,
            residual=None if residual.is_zero() else repr(residual),
        )
    ]


def compound_checks(alpha: int) -> list[CheckResult]:
    compound_certificate(alpha)
    residual = compound_limit(alpha).residual
    return [
        check(f"commutation:compound[alpha={alpha}]", 0, 0.0),
        check(f"operator-limit:compound[alpha={alpha}]", len(residual.terms), 0.0),
    ]


def metric_limit_check(space: Space) -> list[CheckResult]:
    flat = diag(1, 1 if space is Space.H2 else -1)
    difference = beltrami_metric_limit(space) - flat
    return [
        check(
            f"beltrami-metric-limit:{space.value}",
            sum(1 for entry in difference if entry != 0),
            0.0,
        )
    ]


def _rotated(cls: Type[Chart]) -> bool:
    if cls.operator() is None or "k" in cls.PARAMETERS:
        return False
    return cls.permuted or cls.orbit is Orbit.E_ROTATED or cls.chart_id.endswith("SCP-rot")


class AlgebraSuite(Suite, suite_id="algebra"):
    "Commutation relations, classification, commuting operators and operator limits"

    def tasks(self) -> list[WorkItem]:
        items = []
        if self.chart is None and self.orbit is None:
            for space in GeneratorSpace:
                items.append(self.item(f"relations:{space.value}", partial(relation_checks, space)))
            for alpha in (1, 2):
                items.append(self.item(f"compound:{alpha}", partial(compound_checks, alpha)))
            for space in (Space.H2, Space.H2_TILDE):
                items.append(
                    self.item(f"metric:{space.value}", partial(metric_limit_check, space))
                )
            items.append(
                self.item(
                    "commutation:E-rotated",
                    partial(commutation_check, "E-rotated", Orbit.E_ROTATED, {"s": 1}),
                )
            )
            for case_id in sorted(CASES_BY_ID):
                if CASES_BY_ID[case_id].operator is not None:
                    items.append(
                        self.item(case_id, partial(operator_limit_check, case_id))
                    )
        seeds = self.config.sampling.classify_seeds
        for orbit, params in [] if self.chart else self.orbits():
            label = f"{orbit.value}{parameter_label(params)}"
            items.append(
                self.item(
                    f"classify:{label}",
                    partial(classification_check, orbit, params, seeds, self.config),
                )
            )
            items.append(
                self.item(
                    f"commutation:{label}",
                    partial(commutation_check, label, orbit, params),
                )
            )
        for cls in self.chart_classes(_rotated):
            items.append(
                self.item(
                    f"chart:{cls.chart_id}",
                    partial(chart_commutation_check, self.instance(cls)),
                )
            )
        return items


# charts


def embedding_checks(chart: Chart, samples: int, seed: int, config: Config) -> list[CheckResult]:
    tolerances = config.tolerances
    points = chart.sample(samples, seed=seed)
    results = [lower_bound(f"samples:{chart.chart_id}", len(points), 1)]
    embedding = max(
        (chart.evaluate(*p, precision=Precision.DOUBLE).embedding_residual() for p in points),
        default=inf,
    )
    results.append(check(f"embedding:{chart.chart_id}", embedding, tolerances.embedding))
    ratios = [chart.metric(*p).orthogonality_residual() for p in points]
    if chart.orthogonal:
        results.append(
            check(
                f"orthogonality:{chart.chart_id}",
                max(ratios, default=inf),
                tolerances.orthogonality,
            )
        )
    else:
        results.append(
            lower_bound(
                f"nonorthogonal:{chart.chart_id}",
                max(ratios, default=0.0),
                tolerances.orthogonality,
            )
        )
    return results


def decay_check(cls: Type[Chart], seed: int) -> list[CheckResult]:
    "g12 at a fixed coordinate point over alpha, the fitted log slope is -1"
    first = cls(CHECK_RADIUS, alpha=DECAY_ALPHAS[0])
    xi1, xi2 = first.sample(1, seed=seed)[0]
    g12 = [abs(cls(CHECK_RADIUS, alpha=a).metric(xi1, xi2).g12) for a in DECAY_ALPHAS]
    fitted = slope(DECAY_ALPHAS, g12)
    return [check(f"no-decay:{cls.chart_id}", abs(fitted + 1), 1e-6, slope=fitted)]


def jacobi_agreement_check(chart: Any, samples: int, seed: int, config: Config) -> list[CheckResult]:
    "The Jacobi form against its algebraic counterpart at the same point"
    algebraic = get_chart(chart.algebraic_id, chart.R, **chart.algebraic_parameters())
    worst = 0.0
    points = chart.sample(samples, seed=seed)
    for nu, b in points:
        point = chart.evaluate(nu, b, precision=Precision.DOUBLE)
        rho1, rho2 = chart.algebraic_coordinates(nu, b)
        other = algebraic.evaluate(float(rho1), float(rho2), precision=Precision.DOUBLE)
        worst = max(
            worst,
            max(abs(float(x) - float(y)) for x, y in zip(point, other)) / float(chart.R),
        )
    return [
        check(
            f"jacobi:{chart.chart_id}",
            worst if points else inf,
            config.tolerances.jacobi,
            against=chart.algebraic_id,
        )
    ]


def jacobi_degeneration_check() -> list[CheckResult]:
    "H2/E-jacobi approaches H2/SPH like k'^2 as k -> 1"
    spherical = get_chart("H2/SPH", CHECK_RADIUS)
    points = [(nu, b) for nu in (0.4, 0.8, 1.2) for b in (0.3, 0.7, 1.1)]
    gaps = []
    for kprime in DEGENERATION_STEPS:
        chart = get_chart("H2/E-jacobi", CHECK_RADIUS, k=(1 - kprime**2) ** 0.5)
        gap = 0.0
        for nu, b in points:
            point = chart.evaluate(nu, b, precision=Precision.DOUBLE)
            limit = spherical.evaluate(
                float(mpmath.asinh(1 / mpmath.sinh(nu))), b, precision=Precision.DOUBLE
            )
            gap = max(gap, max(abs(float(x) - float(y)) for x, y in zip(point, limit)))
        gaps.append(gap)
    fitted = slope([k**2 for k in DEGENERATION_STEPS], gaps)
    return [lower_bound("degeneration:H2/E-jacobi", fitted, 0.9, gaps=gaps)]


def elliptic_checks() -> list[CheckResult]:
    identities = landen_agm = 0.0
    with mp.workdps(EXTENDED_DPS):
        for k in ELLIPTIC_MODULI:
            modulus = EllipticModulus.from_k(mpmath.mpf(k))
            for u in ELLIPTIC_ARGUMENTS:
                triple = jacobi_real(u, modulus)
                identities = max(identities, *(float(abs(r)) for r in triple.residuals(modulus)))
                other = jacobi_agm(u, modulus)
                landen_agm = max(
                    landen_agm,
                    *(
                        float(abs(x - y))
                        for x, y in zip(triple.as_floats(), other.as_floats())
                    ),
                )
    return [
        check("elliptic:identities", identities, ELLIPTIC_TOLERANCE),
        check("elliptic:landen-agm", landen_agm, ELLIPTIC_TOLERANCE),
    ]


def elliptic_degeneration_checks() -> list[CheckResult]:
    "sn(u, k) - sin(u) is O(k^2) and sn(u, k) - tanh(u) is O(k'^2)"
    arguments = (0.2, 0.6, 1.0, 1.4)
    near_zero, near_one = [], []
    with mp.workdps(EXTENDED_DPS):
        for step in DEGENERATION_STEPS:
            near_zero.append(
                max(float(abs(jacobi_real(u, step).sn - mpmath.sin(u))) for u in arguments)
            )
            complement = EllipticModulus(mpmath.sqrt(1 - mpmath.mpf(step) ** 2), mpmath.mpf(step))
            near_one.append(
                max(float(abs(jacobi_real(u, complement).sn - mpmath.tanh(u))) for u in arguments)
            )
    return [
        lower_bound("elliptic:k0-degeneration", slope(DEGENERATION_STEPS, near_zero), 1.9),
        lower_bound("elliptic:k1-degeneration", slope(DEGENERATION_STEPS, near_one), 1.9),
    ]


class ChartsSuite(Suite, suite_id="charts"):
    "Embedding, orthogonality, nonorthogonal decay, Jacobi forms and elliptic functions"

    def tasks(self) -> list[WorkItem]:
        samples = self.config.sampling.chart_samples
        items = []
        for cls in self.chart_classes(lambda cls: True):
            items.append(
                self.item(
                    cls.chart_id,
                    partial(embedding_checks, self.instance(cls), samples, self.seed, self.config),
                )
            )
            if cls.chart_id in DECAYING_CHARTS:
                items.append(
                    self.item(f"decay:{cls.chart_id}", partial(decay_check, cls, self.seed))
                )
            if hasattr(cls, "algebraic_id"):
                items.append(
                    self.item(
                        f"jacobi:{cls.chart_id}",
                        partial(
                            jacobi_agreement_check,
                            self.instance(cls),
                            min(samples, 1000),
                            self.seed,
                            self.config,
                        ),
                    )
                )
        if self.chart in (None, "H2/E-jacobi") and self.orbit in (None, Orbit.E):
            items.append(self.item("degeneration:H2/E-jacobi", jacobi_degeneration_check))
        if self.chart is None and self.orbit is None:
            items.append(self.item("elliptic", elliptic_checks))
            items.append(self.item("elliptic-degeneration", elliptic_degeneration_checks))
        return items


# separation


def lambda_checks(chart: Chart, samples: int, seed: int, config: Config) -> list[CheckResult]:
    report = lambda_consistency(
        chart, samples=samples, seed=seed, tolerances=config.tolerances
    )
    detail: dict[str, Any] = {"samples": report.samples}
    if report.offending is not None:
        detail["offending"] = list(report.offending)
    results = [
        check(
            f"lambda:{chart.chart_id}",
            report.maxCrossVariation if report.samples else inf,
            config.tolerances.orthogonality,
            **detail,
        )
    ]
    if report.maxMapResidual is not None:
        results.append(
            check(
                f"lambda-map:{chart.chart_id}",
                report.maxMapResidual,
                config.tolerances.lambda_system,
            )
        )
    return results


def liouville_checks(chart: Chart, samples: int, seed: int, config: Config) -> list[CheckResult]:
    report = liouville_check(chart, samples, seed=seed, tolerances=config.tolerances)
    if not report.samples:
        return [check(f"liouville:{chart.chart_id}", inf, 0.0)]
    return [
        check(
            f"liouville:{chart.chart_id}",
            max(report.maxOffDiag, report.maxConformal),
            config.tolerances.orthogonality,
        ),
        check(f"liouville-additive:{chart.chart_id}", report.maxMixedPartial, 1e-6),
    ]


def hyperboloid_points(space: Space, count: int, seed: int, R: float = CHECK_RADIUS) -> list[AmbientPoint]:
    "Random points off the rotation axis"
    rng = np.random.default_rng(seed)
    points = []
    for a, phi in zip(rng.uniform(0.05, 2.5, count), rng.uniform(-pi, pi, count)):
        if space is Space.H2:
            u = (R * np.cosh(a), R * np.sinh(a) * np.cos(phi), R * np.sinh(a) * np.sin(phi))
        else:
            # both signs of u0 on the one-sheeted hyperboloid
            a = a if rng.random() < 0.5 else -a
            u = (R * np.sinh(a), R * np.cosh(a) * np.cos(phi), R * np.cosh(a) * np.sin(phi))
        points.append(AmbientPoint(*(float(x) for x in u), space=space, R=R))
    return points


def _matrix(orbit: Orbit, params: Mapping[str, Any]) -> list[list[float]]:
    return np.array(canonical_matrix(orbit, params).evalf(), dtype=float).tolist()


def reality_check(
    orbit: Orbit, params: Mapping[str, Any], samples: int, seed: int, config: Config
) -> list[CheckResult]:
    "On H2 the pencil has real roots everywhere"
    matrix = _matrix(orbit, params)
    complex_points = 0
    system = 0.0
    for point in hyperboloid_points(Space.H2, samples, seed):
        values = pencil(matrix, point)
        scale = float(values.trace) ** 2 + abs(float(values.product)) + 1.0
        if values.discriminant < -1e-12 * scale:
            complex_points += 1
        roots = char_roots(orbit, point, params)
        system = max(system, roots.system_residual())
    label = f"{orbit.value}{parameter_label(params)}"
    return [
        check(f"h2-reality:{label}", complex_points, 0.0, samples=samples),
        check(f"roots-system:{label}", system, config.tolerances.lambda_system),
    ]


# cover predicates of the one-sheeted hyperboloid, as functions of (u0, u1, u2, R)
Cover = Callable[[float, float, float, float], bool]


def _hp_cover(gamma: float) -> Cover:
    return lambda u0, u1, u2, R: (
        abs(u0 * (1 - gamma) - u1 * (1 + gamma)) > 2 * R * gamma**0.5
    )


def _h_cover(k2: float) -> Cover:
    return lambda u0, u1, u2, R: (
        (R**2 + k2 * u1**2 - (1 - k2) * u2**2) ** 2 > 4 * k2 * R**2 * u1**2
    )


def _sh_cover(c: float) -> Cover:
    def covered(u0: float, u1: float, u2: float, R: float) -> bool:
        inner = u2**2 + 2 * c * u0 * u1
        if c == 0:
            return abs(u1) > R
        return inner < 0 or abs(2 * u0 * u1 + c * (u1**2 - u0**2)) > 2 * R * inner**0.5

    return covered


COVER_FAMILIES: Final[dict[str, tuple[Orbit, dict[str, Any], Cover]]] = {
    "SCP": (Orbit.SCP, {}, lambda u0, u1, u2, R: abs(u2) > R),
    "EP[gamma=2]": (Orbit.EP, {"gamma": 2}, lambda u0, u1, u2, R: True),
    "HP[gamma=2]": (Orbit.HP, {"gamma": 2}, _hp_cover(2.0)),
    "H[k2=1/2]": (Orbit.H, {"k2": "1/2"}, _h_cover(0.5)),
    "SH[c=1]": (Orbit.SH, {"c": 1}, _sh_cover(1.0)),
    "SH[c=0]": (Orbit.SH, {"c": 0}, _sh_cover(0.0)),
}


def cover_check(family: str, samples: int, seed: int) -> list[CheckResult]:
    """On H~2 real roots have to coincide with the documented cover inequality.

    Points with a nearly vanishing discriminant are skipped.
    """
    orbit, params, covered = COVER_FAMILIES[family]
    matrix = _matrix(orbit, params)
    mismatches = skipped = 0
    for point in hyperboloid_points(Space.H2_TILDE, samples, seed):
        values = pencil(matrix, point)
        scale = float(values.trace) ** 2 + abs(float(values.product)) + 1.0
        discriminant = float(values.discriminant)
        if abs(discriminant) <= 1e-9 * scale:
            skipped += 1
            continue
        real = discriminant > 0
        if real != covered(float(point.u0), float(point.u1), float(point.u2), float(point.R)):
            mismatches += 1
    return [
        check(f"cover-discriminant:{family}", mismatches, 0.0, samples=samples, skipped=skipped)
    ]


def _documents_lambdas(cls: Type[Chart]) -> bool:
    return (
        not cls.space.is_flat
        and cls.base_operator() is not None
        and cls.lambda_expressions() is not None
    )


def _liouville_candidate(cls: Type[Chart]) -> bool:
    return cls.orthogonal and not cls.space.is_flat and cls.orbit is not None


class SeparationSuite(Suite, suite_id="separation"):
    "Lambda maps, Liouville forms, reality of roots and cover regions"

    def tasks(self) -> list[WorkItem]:
        samples = self.config.sampling.separation_samples
        items = []
        for cls in self.chart_classes(_documents_lambdas):
            items.append(
                self.item(
                    f"lambda:{cls.chart_id}",
                    partial(lambda_checks, self.instance(cls), samples, self.seed, self.config),
                )
            )
        for cls in self.chart_classes(_liouville_candidate):
            items.append(
                self.item(
                    f"liouville:{cls.chart_id}",
                    partial(liouville_checks, self.instance(cls), samples, self.seed, self.config),
                )
            )
        if self.chart is not None:
            return items
        for orbit, params in self.orbits():
            items.append(
                self.item(
                    f"reality:{orbit.value}{parameter_label(params)}",
                    partial(reality_check, orbit, params, samples, self.seed, self.config),
                )
            )
        for family, (orbit, _, _) in COVER_FAMILIES.items():
            if self.orbit is None or self.orbit is orbit:
                items.append(
                    self.item(f"cover:{family}", partial(cover_check, family, 10 * samples, self.seed))
                )
        return items

