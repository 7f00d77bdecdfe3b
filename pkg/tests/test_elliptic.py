import math

import mpmath
import pytest
from mpmath import mp

from hyperlab.elliptic import (
    EllipticModulus,
    Shift,
    complete_K,
    jacobi_agm,
    jacobi_real,
    jacobi_shifted,
)
from hyperlab.errors import DivergenceError, InvalidParameterError, PoleError, UnknownIdError

MODULI = [0.1, 0.5, 0.9, 0.999]
ARGUMENTS = [-1.3, 0.2, 0.7, 2.5]


def test_zero_modulus_is_trigonometric():
    triple = jacobi_real(0.7, 0)
    assert float(triple.sn) == pytest.approx(math.sin(0.7), abs=1e-15)
    assert float(triple.cn) == pytest.approx(math.cos(0.7), abs=1e-15)
    assert float(triple.dn) == 1


def test_unit_modulus_is_hyperbolic():
    triple = jacobi_real(0.7, 1)
    assert float(triple.sn) == pytest.approx(math.tanh(0.7), abs=1e-15)
    assert float(triple.cn) == pytest.approx(1 / math.cosh(0.7), abs=1e-15)
    assert triple.cn == triple.dn


@pytest.mark.parametrize("k", MODULI)
@pytest.mark.parametrize("u", ARGUMENTS)
def test_agrees_with_mpmath(u, k):
    "mpmath takes the parameter m = k^2"
    triple = jacobi_real(u, k)
    for name, value in zip(("sn", "cn", "dn"), triple.as_floats()):
        assert value == pytest.approx(float(mpmath.ellipfun(name, u, m=k**2)), abs=1e-13)


@pytest.mark.parametrize("k", MODULI)
@pytest.mark.parametrize("u", ARGUMENTS)
def test_landen_and_agm_agree(u, k):
    landen, agm = jacobi_real(u, k), jacobi_agm(u, k)
    for first, second in zip(landen.as_floats(), agm.as_floats()):
        assert first == pytest.approx(second, abs=1e-12)


@pytest.mark.parametrize("k", MODULI)
def test_identities_hold(k):
    modulus = EllipticModulus.from_k(k)
    for u in ARGUMENTS:
        first, second = jacobi_real(u, modulus).residuals(modulus)
        assert abs(first) <= 1e-12
        assert abs(second) <= 1e-12


def test_complementary_modulus_near_one():
    "k' keeps its digits close to k = 1"
    with mp.workdps(30):
        modulus = EllipticModulus.from_k(mpmath.mpf(1) - mpmath.mpf("1e-20"))
        assert float(modulus.kprime) == pytest.approx(math.sqrt(2e-20), rel=1e-10)
    assert modulus.complement.k == modulus.kprime


def test_complete_integral():
    assert float(complete_K(0)) == pytest.approx(math.pi / 2)
    assert float(complete_K(0.5)) == pytest.approx(float(mpmath.ellipk(0.25)), rel=1e-14)
    with pytest.raises(DivergenceError):
        complete_K(1)


@pytest.mark.parametrize("k", [-0.1, 1.5])
def test_modulus_range(k):
    with pytest.raises(InvalidParameterError):
        EllipticModulus.from_k(k)


def test_modulus_from_confocal_parameters():
    modulus = EllipticModulus.from_parameters(3, 2, 1)
    assert float(modulus.k) ** 2 == pytest.approx(0.5)
    with pytest.raises(InvalidParameterError):
        EllipticModulus.from_parameters(1, 2, 3)


def test_imaginary_quarter_period_shift():
    "sn(u + iK') = 1 / (k sn u)"
    k, u = 0.6, 0.8
    shifted = jacobi_shifted(u, Shift.I_KPRIME, k)
    plain = jacobi_real(u, k)
    assert complex(shifted.sn) == pytest.approx(1 / (k * float(plain.sn)))
    assert complex(shifted.cn).real == pytest.approx(0, abs=1e-15)
    first, second = shifted.residuals(EllipticModulus.from_k(k))
    assert abs(first) <= 1e-12
    assert abs(second) <= 1e-12


@pytest.mark.parametrize("shift, periods", [(Shift.K_REAL, 1), (Shift.TWO_K_REAL, 2)])
def test_real_shifts_match_shifted_argument(shift, periods):
    k, u = 0.6, 0.4
    shifted = jacobi_shifted(u, shift, k).as_floats()
    direct = jacobi_real(u + periods * complete_K(k), k).as_floats()
    for first, second in zip(shifted, direct):
        assert first == pytest.approx(second, abs=1e-12)


def test_complementary_shift():
    k, u = 0.6, 0.4
    kprime = EllipticModulus.from_k(k).kprime
    shifted = jacobi_shifted(u, Shift.KPRIME_REAL, k).as_floats()
    direct = jacobi_real(u + complete_K(kprime), kprime).as_floats()
    for first, second in zip(shifted, direct):
        assert first == pytest.approx(second, abs=1e-12)


def test_shift_poles_and_tags():
    with pytest.raises(PoleError):
        jacobi_shifted(0, Shift.I_KPRIME, 0.5)
    with pytest.raises(InvalidParameterError):
        jacobi_shifted(0.3, Shift.I_KPRIME, 0)
    with pytest.raises(UnknownIdError):
        Shift.from_tag("iK")
