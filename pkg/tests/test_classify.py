from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hyperlab.classify import (
    AutomorphismWord,
    FirstOrderClass,
    FirstOrderElement,
    SecondOrderForm,
    apply_automorphism,
    apply_first_order,
    casimir_shift,
    classify_first_order,
    classify_second_order,
    first_order_invariant,
    invariants_second_order,
    random_orbit_sample,
    rot_k1,
    rot_l,
    _Reduction,
)
from hyperlab.config import Tolerances
from hyperlab.errors import (
    DegenerateFormError,
    HyperlabError,
    InvalidParameterError,
    UnknownIdError,
    ZeroVectorError,
)
from hyperlab.orbits import NINE_CLASSES, Orbit, canonical_matrix, resolve_parameters


def _canonical(orbit, params):
    return np.array(canonical_matrix(orbit, params).evalf(), dtype=float)


@pytest.mark.parametrize(
    "entries, expected",
    [
        ((1, 0, 1), FirstOrderClass.HO_TYPE),
        ((0, 1, 0), FirstOrderClass.EQ_TYPE),
        ((0, 0, 1), FirstOrderClass.SPH_TYPE),
        ((3, 4, 5), FirstOrderClass.HO_TYPE),
        ((2, 0, 1), FirstOrderClass.EQ_TYPE),
        ((0.5, 0, -2), FirstOrderClass.SPH_TYPE),
    ],
)
def test_first_order_class(entries, expected):
    kind, _ = classify_first_order(FirstOrderElement(*entries))
    assert kind is expected


@pytest.mark.parametrize("entries", [(3, 4, 5), (2, -1, 0.5), (0.1, 0.2, 3)])
def test_first_order_word_reaches_target(entries):
    "Replaying the word gives K1 + L, K2 or L"
    element = FirstOrderElement(*entries)
    kind, word = classify_first_order(element)
    targets = {
        FirstOrderClass.HO_TYPE: (1, 0, 1),
        FirstOrderClass.EQ_TYPE: (0, 1, 0),
        FirstOrderClass.SPH_TYPE: (0, 0, 1),
    }
    assert_allclose(apply_first_order(element, word), targets[kind], atol=1e-12)


def test_first_order_invariant_is_preserved():
    element = FirstOrderElement(2.0, -1.0, 0.5)
    word = AutomorphismWord((rot_l(0.3), rot_k1(0.7)))
    moved = FirstOrderElement(*apply_first_order(element, word))
    assert first_order_invariant(moved) == pytest.approx(first_order_invariant(element))


def test_zero_first_order_element():
    with pytest.raises(ZeroVectorError):
        classify_first_order(FirstOrderElement(0, 0, 0))


def test_spherical_form():
    result = classify_second_order(SecondOrderForm(0, 0, 0, 0, 0, 1))
    assert result.orbit.tag is Orbit.SPH
    assert result.orbit.parameters == {}
    assert result.residual <= 1e-9


@pytest.mark.parametrize("orbit", NINE_CLASSES)
def test_canonical_forms_are_fixed_points(orbit):
    form = SecondOrderForm.from_matrix(np.array(canonical_matrix(orbit).evalf(), dtype=float))
    result = classify_second_order(form)
    assert result.orbit.tag is orbit


@pytest.mark.parametrize(
    "orbit, params, expected",
    [
        (Orbit.SH, {"c": 1}, {"c": 1}),
        (Orbit.SH, {"c": 0}, {"c": 0}),
        # gamma is a gauge parameter
        (Orbit.EP, {"gamma": 2}, {"gamma": 1}),
        (Orbit.HP, {"gamma": 3}, {"gamma": 1}),
        (Orbit.E, {"s": 3}, {"s": 3}),
        (Orbit.H, {"k2": 0.5}, {"k2": 0.5}),
        (Orbit.SCP, {}, {}),
        (Orbit.HO, {}, {}),
        (Orbit.EQ, {}, {}),
    ],
)
@pytest.mark.parametrize("seed", range(5))
def test_random_conjugates_classify_back(orbit, params, expected, seed):
    "Random automorphisms and Casimir shifts keep the class and its parameters"
    form = random_orbit_sample(orbit, seed, params)
    result = classify_second_order(form)
    assert result.orbit.tag is orbit
    for name, value in expected.items():
        assert result.orbit.parameters[name] == pytest.approx(value, abs=1e-8)


def test_word_replays_to_canonical_form():
    form = random_orbit_sample(Orbit.HP, 3, {"gamma": 2})
    result = classify_second_order(form)
    replayed = apply_automorphism(form, result.word).array()
    canonical = np.array(canonical_matrix(Orbit.HP, result.orbit.parameters).evalf(), dtype=float)
    assert_allclose(replayed, canonical, atol=1e-9)


def test_casimir_shift_keeps_minor_combinations():
    "A Casimir shift keeps the class"
    form = SecondOrderForm(0, 0, 1, 0, 0, 0)
    shifted = apply_automorphism(form, AutomorphismWord((casimir_shift(1, 0.5),)))
    assert classify_second_order(shifted).orbit.tag is Orbit.EQ
    assert invariants_second_order(form).i3 == 0


@pytest.mark.parametrize(
    "entries",
    [(0, 0, 0, 0, 0, 0), (1, 0, 1, 0, 0, -1), (-2.5, 0, -2.5, 0, 0, 2.5)],
)
def test_degenerate_forms(entries):
    "The zero form and multiples of the Casimir have no class"
    with pytest.raises(DegenerateFormError):
        classify_second_order(SecondOrderForm(*entries))


def test_parameter_ranges():
    with pytest.raises(InvalidParameterError):
        resolve_parameters(Orbit.H, {"k2": 1})
    with pytest.raises(InvalidParameterError):
        resolve_parameters(Orbit.EP, {"gamma": 0})
    with pytest.raises(InvalidParameterError):
        resolve_parameters(Orbit.SPH, {"gamma": 1})
    assert resolve_parameters(Orbit.SH, {})["c"] == 1


def test_unknown_orbit_tag():
    with pytest.raises(UnknownIdError):
        Orbit.from_tag("XYZ")


@pytest.mark.parametrize(
    "orbit, params",
    [
        (Orbit.EP, {"gamma": 1}),
        (Orbit.HP, {"gamma": 1}),
        (Orbit.EP, {"gamma": 5}),
        (Orbit.HP, {"gamma": Fraction(1, 4)}),
    ],
)
def test_parabolic_canonical_forms_replay(orbit, params):
    "The frame of a Jordan block is built without losing digits"
    form = SecondOrderForm.from_matrix(_canonical(orbit, params))
    result = classify_second_order(form)
    assert result.orbit.tag is orbit
    assert result.residual <= 1e-11
    replayed = apply_automorphism(form, result.word).array()
    assert_allclose(replayed, _canonical(orbit, {"gamma": 1}), atol=1e-11)


@pytest.mark.parametrize(
    "orbit, params, name",
    [
        (Orbit.E, {"s": Fraction(1, 10_000)}, "s"),
        (Orbit.E, {"s": 10_000}, "s"),
        (Orbit.H, {"k2": Fraction(1, 100_000)}, "k2"),
        (Orbit.H, {"k2": Fraction(1, 1000)}, "k2"),
        (Orbit.SH, {"c": Fraction(1, 1000)}, "c"),
        (Orbit.SH, {"c": 1000}, "c"),
    ],
)
def test_separated_roots(orbit, params, name):
    "Roots far apart or close together but distinct keep their class"
    form = SecondOrderForm.from_matrix(_canonical(orbit, params))
    result = classify_second_order(form)
    assert result.orbit.tag is orbit
    assert result.orbit.parameters[name] == pytest.approx(float(params[name]), rel=1e-8)


@pytest.mark.parametrize(
    "entries",
    [
        (0, 0, 1, 0, 0, -1e-7),
        (0, 0, 1, 0, 0, -1e-9),
        (0, 0, 1e-6, 0, 0, 1),
        (1 + 1e-9, 0, 1, 0, 0, -1),
        (1, 0, 1e-8, 1, 0, 1),
    ],
)
def test_edge_forms_raise_typed_errors(entries):
    "Forms near a branch either classify or raise a HyperlabError"
    try:
        result = classify_second_order(SecondOrderForm(*entries))
    except HyperlabError:
        return
    assert result.residual <= 1e-9


def test_classification_predicates():
    "I2 and I3 after the mean shift vanish exactly on the nilpotent classes"
    tolerances = Tolerances()
    for orbit in (Orbit.HO, Orbit.SCP):
        reduction = _Reduction(_canonical(orbit, {}), tolerances)
        assert reduction.size == 0
    assert _Reduction(_canonical(Orbit.HO, {}), tolerances).candidates() == [
        "_triple_rank_one"
    ]
    assert _Reduction(_canonical(Orbit.SCP, {}), tolerances).candidates() == [
        "_triple_jordan"
    ]
    assert _Reduction(_canonical(Orbit.EQ, {}), tolerances).candidates() == [
        "_double_rank_one"
    ]
    assert _Reduction(_canonical(Orbit.EP, {}), tolerances).candidates() == [
        "_double_jordan"
    ]
    assert _Reduction(_canonical(Orbit.SH, {}), tolerances).candidates() == [
        "_complex_pair"
    ]
    # s = 1e-4 lies inside the unstable band, only the distinct reduction replays
    close = _Reduction(_canonical(Orbit.E, {"s": Fraction(1, 10_000)}), tolerances)
    assert close.candidates() == ["_double_jordan", "_distinct"]
    assert close.ambiguous is not None


def test_near_identity_frame_is_written_exactly():
    "A boost of 1e-12 is kept, not rounded to 1e-8"
    form = apply_automorphism(
        SecondOrderForm.from_matrix(_canonical(Orbit.EP, {})),
        AutomorphismWord((rot_k1(1e-12),)),
    )
    result = classify_second_order(form)
    assert result.residual <= 1e-11


CENSUS = [(orbit, {}) for orbit in NINE_CLASSES] + [
    (Orbit.EP, {"gamma": 2}),
    (Orbit.HP, {"gamma": 3}),
    (Orbit.E, {"s": 3}),
    (Orbit.H, {"k2": Fraction(1, 5)}),
    (Orbit.SH, {"c": 0}),
]


@pytest.mark.slow
@pytest.mark.parametrize("orbit, params", CENSUS)
def test_round_trip_census(orbit, params):
    "1000 random conjugates of each class classify back with their parameters"
    expected = {
        name: float(value) for name, value in resolve_parameters(orbit, params).items()
    }
    if orbit in (Orbit.EP, Orbit.HP):
        expected["gamma"] = 1.0
    for seed in range(1000):
        result = classify_second_order(random_orbit_sample(orbit, seed, params))
        assert result.orbit.tag is orbit, seed
        assert result.residual <= 1e-9, seed
        for name, value in expected.items():
            assert result.orbit.parameters[name] == pytest.approx(
                value, rel=1e-8, abs=1e-8
            ), seed
