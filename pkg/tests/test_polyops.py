import pytest
from sympy import Matrix, Rational, diag, sqrt

from hyperlab.errors import InvalidParameterError, OperatorLimitError
from hyperlab.orbits import NINE_CLASSES, Orbit, canonical_matrix
from hyperlab.polyops import (
    EPS,
    R_SYMBOL,
    RING,
    V0,
    V1,
    V2,
    DiffOperator,
    GeneratorSpace,
    anticommutator,
    build_generators,
    canonical_operator,
    casimir,
    constant,
    flat_operator,
    op_commutator,
    op_compose,
    quadratic_operator,
    scaled_beltrami_operator,
    vf_commutator,
)


def test_ambient_relations():
    "[K1, K2] = -L, [K1, L] = -K2, [K2, L] = K1"
    K1, K2, L = build_generators(GeneratorSpace.AMBIENT)
    assert (vf_commutator(K1, K2) + L).is_zero()
    assert (vf_commutator(K1, L) + K2).is_zero()
    assert (vf_commutator(K2, L) - K1).is_zero()


@pytest.mark.parametrize(
    "space, signs",
    [(GeneratorSpace.FLAT_E2, (-1, 1)), (GeneratorSpace.FLAT_E11, (1, 1))],
)
def test_flat_relations(space, signs):
    "Translations commute, the rotation or boost moves them into each other"
    first, second, rotation = build_generators(space)
    assert vf_commutator(first, second).is_zero()
    assert (vf_commutator(first, rotation) - second.scale(signs[0])).is_zero()
    assert (vf_commutator(second, rotation) - first.scale(signs[1])).is_zero()


def test_beltrami_translations_close_on_rotation():
    "[pi1, pi2] = eps^2 L on the Beltrami disk"
    pi2, pi1, L = build_generators(GeneratorSpace.BELTRAMI_H2)
    assert (vf_commutator(pi1, pi2) - L.scale(EPS**2)).is_zero()


def test_compose_is_leibniz():
    "d0 (v0 f) = f + v0 d0 f"
    d0 = DiffOperator.derivative(0)
    product = op_compose(d0, DiffOperator.multiplication(V0))
    expected = DiffOperator.multiplication(RING.one) + op_compose(
        DiffOperator.multiplication(V0), d0
    )
    assert product == expected


def test_apply_on_polynomial():
    _, K2, L = build_generators(GeneratorSpace.AMBIENT)
    assert L.to_operator().apply(V1) == -V2
    assert K2.to_operator().apply(V0 * V1) == -(V1**2) - V0**2


@pytest.mark.parametrize("orbit", NINE_CLASSES)
def test_casimir_commutes_with_canonical_operators(orbit):
    "The commutator is the zero operator, not only numerically small"
    assert op_commutator(casimir(), canonical_operator(orbit)).is_zero()


def test_casimir_commutes_with_rotated_elliptic_operator():
    "Entries with sqrt(2) stay exact over Q(sqrt 2)"
    matrix = canonical_matrix(Orbit.E_ROTATED, {"s": 1})
    assert matrix[0, 2] == sqrt(2)
    assert op_commutator(casimir(), quadratic_operator(matrix)).is_zero()


def test_casimir_is_central_for_first_order_terms():
    K1 = quadratic_operator(Matrix.zeros(3, 3), linear=[1, 0, 0])
    assert op_commutator(casimir(), K1).is_zero()
    assert not op_commutator(quadratic_operator(diag(0, 0, 1)), K1).is_zero()


def test_anticommutator_is_symmetric():
    K1, K2, _ = (field.to_operator() for field in build_generators(GeneratorSpace.AMBIENT))
    assert anticommutator(K1, K2) == anticommutator(K2, K1)
    assert anticommutator(K1, K2) == quadratic_operator(
        Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    )


def test_constant_rejects_foreign_irrationals():
    with pytest.raises(InvalidParameterError):
        constant(sqrt(3))
    assert constant(Rational(1, 2)) * 2 == RING.one


def test_spherical_operator_contracts_to_rotation():
    "L^2 on H2 becomes M^2 on E2"
    limit = scaled_beltrami_operator(GeneratorSpace.BELTRAMI_H2, diag(0, 0, 1)).subs_eps(0)
    assert limit == flat_operator(GeneratorSpace.FLAT_E2, diag(0, 0, 1))


def test_equidistant_operator_contracts_to_translation():
    "K2^2 / R^2 -> p1^2 on E2"
    limit = scaled_beltrami_operator(
        GeneratorSpace.BELTRAMI_H2, diag(0, 1, 0), scale=1 / R_SYMBOL**2
    ).subs_eps(0)
    assert limit == flat_operator(GeneratorSpace.FLAT_E2, diag(1, 0, 0))


def test_divergent_scaling_raises():
    "K2^2 / R keeps a factor R"
    with pytest.raises(OperatorLimitError):
        scaled_beltrami_operator(
            GeneratorSpace.BELTRAMI_H2, diag(0, 1, 0), scale=1 / R_SYMBOL
        )
