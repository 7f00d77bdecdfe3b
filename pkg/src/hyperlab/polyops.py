"""
Exact algebra of differential operators with polynomial coefficients.

Coefficients live in the sparse polynomial ring QQ<sqrt(2)>[v0, v1, v2, eps]
where eps = 1/R is the formal contraction parameter. An operator is a mapping
from derivative multi-indices over (v0, v1, v2) to coefficients, derivatives
standing to the right of their coefficient.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import comb
from typing import Any, Final, Iterator, Mapping, Optional, Sequence

import structlog
from sympy import Expr, Matrix, QQ, Symbol, cancel, fraction, sqrt, sympify
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, ring

from hyperlab.errors import InvalidParameterError, OperatorLimitError
from hyperlab.orbits import CASIMIR_MATRIX, Orbit, canonical_matrix

logger = structlog.get_logger(module="polyops")

DOMAIN: Final = QQ.algebraic_field(sqrt(2))
RING, V0, V1, V2, EPS = ring("v0,v1,v2,eps", DOMAIN)
VARIABLES: Final = (V0, V1, V2)
# stands for R in scaled operators, replaced by 1/eps before the limit
R_SYMBOL: Final = Symbol("R", positive=True)
EPS_SYMBOL: Final = RING.symbols[3]

MultiPoly = PolyElement
MultiIndex = tuple[int, int, int]


def constant(value: Any) -> MultiPoly:
    "Converts a rational number (or one of QQ<sqrt 2>) into the coefficient ring"
    try:
        return RING.ground_new(DOMAIN.from_sympy(sympify(value)))
    except CoercionFailed:
        raise InvalidParameterError(f"{value} is not an element of QQ<sqrt(2)>")


def _partial(poly: MultiPoly, index: Sequence[int]) -> MultiPoly:
    for variable, count in zip(VARIABLES, index):
        for _ in range(count):
            if not poly:
                return poly
            poly = poly.diff(variable)
    return poly


def _sub_indices(index: MultiIndex) -> Iterator[MultiIndex]:
    for sub in product(*(range(n + 1) for n in index)):
        yield sub  # type: ignore


class DiffOperator:
    """Finite sum of polynomial coefficients times partial derivatives.

    Zero coefficients are never stored, so two operators are equal exactly if
    their term mappings are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[MultiIndex, MultiPoly] = {}) -> None:
        self._terms: dict[MultiIndex, MultiPoly] = {
            index: coefficient
            for index, coefficient in sorted(terms.items())
            if coefficient
        }

    @classmethod
    def multiplication(cls, poly: MultiPoly) -> "DiffOperator":
        return cls({(0, 0, 0): poly})

    @classmethod
    def derivative(cls, variable: int) -> "DiffOperator":
        index = [0, 0, 0]
        index[variable] = 1
        return cls({tuple(index): RING.one})  # type: ignore

    @property
    def terms(self) -> dict[MultiIndex, MultiPoly]:
        return dict(self._terms)

    @property
    def order(self) -> int:
        return max((sum(index) for index in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        terms = dict(self._terms)
        for index, coefficient in other._terms.items():
            terms[index] = terms.get(index, RING.zero) + coefficient
        return DiffOperator(terms)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({index: -c for index, c in self._terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, factor: Any) -> "DiffOperator":
        if not isinstance(factor, PolyElement):
            factor = constant(factor)
        return DiffOperator({index: factor * c for index, c in self._terms.items()})

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return op_compose(self, other)

    def apply(self, poly: MultiPoly) -> MultiPoly:
        result = RING.zero
        for index, coefficient in self._terms.items():
            result += coefficient * _partial(poly, index)
        return result

    def subs_eps(self, value: Any = 0) -> "DiffOperator":
        return DiffOperator(
            {index: c.subs(EPS, value) for index, c in self._terms.items()}
        )

    def __repr__(self) -> str:
        if not self._terms:
            return "DiffOperator(0)"
        parts = []
        for index, coefficient in self._terms.items():
            derivative = "".join(
                f"d{variable}" * count for variable, count in enumerate(index)
            )
            parts.append(f"({coefficient}){derivative}")
        return "DiffOperator(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class PolyVectorField:
    c0: MultiPoly
    c1: MultiPoly
    c2: MultiPoly

    @property
    def coefficients(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.c0, self.c1, self.c2)

    def __call__(self, poly: MultiPoly) -> MultiPoly:
        return sum(
            (c * poly.diff(v) for c, v in zip(self.coefficients, VARIABLES) if c),
            RING.zero,
        )

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(
            *(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(*(-a for a in self.coefficients))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + (-other)

    def scale(self, factor: Any) -> "PolyVectorField":
        if not isinstance(factor, PolyElement):
            factor = constant(factor)
        return PolyVectorField(*(factor * a for a in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_operator(self) -> DiffOperator:
        return DiffOperator(
            {(1, 0, 0): self.c0, (0, 1, 0): self.c1, (0, 0, 1): self.c2}
        )


def vector_field(c0: Any = 0, c1: Any = 0, c2: Any = 0) -> PolyVectorField:
    return PolyVectorField(*(c if isinstance(c, PolyElement) else RING(c) for c in (c0, c1, c2)))


def vf_commutator(x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    return PolyVectorField(
        *(x(b) - y(a) for a, b in zip(x.coefficients, y.coefficients))
    )


def op_compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    "Normal form of a o b, moving derivatives of `a` to the right by Leibniz"
    terms: dict[MultiIndex, MultiPoly] = {}
    for alpha, left in a.terms.items():
        for beta, right in b.terms.items():
            for gamma in _sub_indices(alpha):
                derived = _partial(right, gamma)
                if not derived:
                    continue
                weight = 1
                for n, k in zip(alpha, gamma):
                    weight *= comb(n, k)
                index = tuple(n - k + m for n, k, m in zip(alpha, gamma, beta))
                terms[index] = terms.get(index, RING.zero) + weight * left * derived  # type: ignore
    return DiffOperator(terms)


def op_commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    result = op_compose(a, b) - op_compose(b, a)
    if a.order <= 2 and b.order <= 2:
        assert result.order <= 3, "order four part of a commutator has to cancel"
    return result


def anticommutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return op_compose(a, b) + op_compose(b, a)


class GeneratorSpace(str, Enum):
    AMBIENT = "ambient-H"
    BELTRAMI_H2 = "beltrami-H2"
    BELTRAMI_H2_TILDE = "beltrami-H~2"
    FLAT_E2 = "flat-E2"
    FLAT_E11 = "flat-E11"


def build_generators(
    space: GeneratorSpace,
) -> tuple[PolyVectorField, PolyVectorField, PolyVectorField]:
    """Returns the generator triple of `space`.

    ambient-H: (K1, K2, L). beltrami-H2: (pi2, pi1, L) = (-K1/R, -K2/R, L).
    beltrami-H~2: (pi0, pi1, K2) = (-K1/R, -L/R, K2). flat-E2: (p1, p2, M).
    flat-E11: (p0, p1, N).
    """
    one, zero = RING.one, RING.zero
    eps2 = EPS**2
    if space is GeneratorSpace.AMBIENT:
        return (
            PolyVectorField(-V2, zero, -V0),
            PolyVectorField(-V1, -V0, zero),
            PolyVectorField(zero, -V2, V1),
        )
    if space is GeneratorSpace.BELTRAMI_H2:
        # pi_i = d_i - eps^2 x_i (x1 d1 + x2 d2) with x1 = v1, x2 = v2
        pi1 = PolyVectorField(zero, one - eps2 * V1**2, -eps2 * V1 * V2)
        pi2 = PolyVectorField(zero, -eps2 * V1 * V2, one - eps2 * V2**2)
        return (pi2, pi1, PolyVectorField(zero, -V2, V1))
    if space is GeneratorSpace.BELTRAMI_H2_TILDE:
        # pi0 = d0 - eps^2 y0 E, pi1 = d1 + eps^2 y1 E with y0 = v0, y1 = v1
        pi0 = PolyVectorField(one - eps2 * V0**2, -eps2 * V0 * V1, zero)
        pi1 = PolyVectorField(eps2 * V0 * V1, one + eps2 * V1**2, zero)
        return (pi0, pi1, PolyVectorField(-V1, -V0, zero))
    if space is GeneratorSpace.FLAT_E2:
        return (
            PolyVectorField(zero, one, zero),
            PolyVectorField(zero, zero, one),
            PolyVectorField(zero, V2, -V1),
        )
    return (
        PolyVectorField(one, zero, zero),
        PolyVectorField(zero, one, zero),
        PolyVectorField(V1, V0, zero),
    )


def _basis_operators(space: GeneratorSpace) -> tuple[DiffOperator, ...]:
    return tuple(field.to_operator() for field in build_generators(space))


def quadratic_operator(
    matrix: Matrix,
    space: GeneratorSpace = GeneratorSpace.AMBIENT,
    linear: Optional[Sequence[Any]] = None,
) -> DiffOperator:
    "Builds sum(M[i,j] X_i X_j) + sum(v_i X_i) over the generator triple of `space`"
    basis = _basis_operators(space)
    result = DiffOperator()
    for i, j in product(range(3), repeat=2):
        if matrix[i, j] != 0:
            result += op_compose(basis[i], basis[j]).scale(matrix[i, j])
    for i, value in enumerate(linear or ()):
        if value != 0:
            result += basis[i].scale(value)
    return result


def casimir(space: GeneratorSpace = GeneratorSpace.AMBIENT) -> DiffOperator:
    "K1^2 + K2^2 - L^2, for beltrami spaces in the scaled triple"
    return quadratic_operator(CASIMIR_MATRIX, space)


def canonical_operator(orbit: Orbit, params: Mapping[str, Any] = {}) -> DiffOperator:
    if orbit is Orbit.CASIMIR:
        return casimir()
    return quadratic_operator(canonical_matrix(orbit, params))


# For every ambient generator (K1, K2, L): position inside the beltrami triple
# and the factor in R, e.g. K1 = -R pi2 on H2
BELTRAMI_SCALING: Final[dict[GeneratorSpace, tuple[tuple[int, Expr], ...]]] = {
    GeneratorSpace.BELTRAMI_H2: ((0, -R_SYMBOL), (1, -R_SYMBOL), (2, sympify(1))),
    GeneratorSpace.BELTRAMI_H2_TILDE: (
        (0, -R_SYMBOL),
        (2, sympify(1)),
        (1, -R_SYMBOL),
    ),
}


def _eps_polynomial(expression: Expr, where: str) -> MultiPoly:
    expression = cancel(sympify(expression).subs(R_SYMBOL, 1 / EPS_SYMBOL))
    numerator, denominator = fraction(expression)
    if not denominator.has(EPS_SYMBOL):
        return RING.from_expr(cancel(numerator / denominator))
    at_zero = denominator.subs(EPS_SYMBOL, 0)
    if at_zero == 0:
        raise OperatorLimitError(
            f"coefficient of {where} diverges as eps -> 0", terms=expression
        )
    logger.debug("coefficient_replaced_by_limit", term=where, expression=str(expression))
    return constant(cancel(numerator.subs(EPS_SYMBOL, 0) / at_zero))


def scaled_beltrami_operator(
    space: GeneratorSpace,
    matrix: Matrix,
    *,
    linear: Optional[Sequence[Any]] = None,
    scale: Any = 1,
    casimir_coefficient: Any = 0,
) -> DiffOperator:
    """Writes scale * (S + casimir_coefficient * C) in the beltrami triple.

    `matrix`, `linear`, `scale` and `casimir_coefficient` may depend on
    `R_SYMBOL`; every coefficient is rewritten in eps = 1/R and has to stay
    finite at eps = 0.
    """
    scaling = BELTRAMI_SCALING[space]
    basis = _basis_operators(space)
    total = (sympify(scale) * (Matrix(matrix) + sympify(casimir_coefficient) * CASIMIR_MATRIX))
    result = DiffOperator()
    for i, j in product(range(3), repeat=2):
        if total[i, j] == 0:
            continue
        (a, factor_a), (b, factor_b) = scaling[i], scaling[j]
        coefficient = _eps_polynomial(total[i, j] * factor_a * factor_b, f"X{i}X{j}")
        result += op_compose(basis[a], basis[b]).scale(coefficient)
    for i, value in enumerate(linear or ()):
        if value == 0:
            continue
        a, factor = scaling[i]
        coefficient = _eps_polynomial(sympify(scale) * value * factor, f"X{i}")
        result += basis[a].scale(coefficient)
    return result


def flat_operator(
    space: GeneratorSpace, matrix: Matrix, linear: Optional[Sequence[Any]] = None
) -> DiffOperator:
    assert space in (GeneratorSpace.FLAT_E2, GeneratorSpace.FLAT_E11)
    return quadratic_operator(matrix, space, linear)
