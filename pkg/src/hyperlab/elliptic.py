# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from dataclasses import dataclass
from enum import Enum
from typing import Any, Union

import mpmath
import structlog
from mpmath import mp, mpf

from hyperlab.errors import DivergenceError, InvalidParameterError, PoleError, UnknownIdError

logger = structlog.get_logger(module="elliptic")

Real = Union[float, mpf]


@dataclass(frozen=True)
class EllipticModulus:
    k: mpf
    kprime: mpf

    @classmethod
    def from_k(cls, k: Any) -> "EllipticModulus":
        k = mpf(k)
        if not 0 <= k <= 1:
            raise InvalidParameterError(f"modulus 0 <= k <= 1, got {k}")
        # k' from 1 - k^2 loses digits near k = 1
        with mp.extradps(mp.dps):
            kprime = mpmath.sqrt((1 - k) * (1 + k))
        return cls(k, +kprime)

    @classmethod
    def from_parameters(cls, a1: Any, a2: Any, a3: Any) -> "EllipticModulus":
        "k^2 = (a2 - a3) / (a1 - a3) of the confocal family a1 > a2 > a3"
        if not a1 > a2 > a3:
            raise InvalidParameterError("a1 > a2 > a3")
        return cls.from_k(mpmath.sqrt(mpf(a2 - a3) / (a1 - a3)))

    @property
    def complement(self) -> "EllipticModulus":
        return EllipticModulus(self.kprime, self.k)


@dataclass(frozen=True)
class JacobiTriple:
    sn: Any
    cn: Any
    dn: Any

    def as_floats(self) -> tuple[Any, ...]:
        return tuple(
            complex(x) if isinstance(x, mpmath.mpc) else float(x)
            for x in (self.sn, self.cn, self.dn)
        )

    def residuals(self, modulus: EllipticModulus) -> tuple[Any, Any]:
        "sn^2 + cn^2 - 1 and k^2 sn^2 + dn^2 - 1"
        return (
            self.sn**2 + self.cn**2 - 1,
            modulus.k**2 * self.sn**2 + self.dn**2 - 1,
        )


def _modulus(k: Union[Real, EllipticModulus]) -> EllipticModulus:
    return k if isinstance(k, EllipticModulus) else EllipticModulus.from_k(k)


def complete_K(k: Union[Real, EllipticModulus]) -> mpf:
    "K(k) = pi / (2 agm(1, k'))"
    modulus = _modulus(k)
    if modulus.kprime == 0:
        raise DivergenceError()
    return mpmath.pi / (2 * mpmath.agm(1, modulus.kprime))


def jacobi_real(u: Real, k: Union[Real, EllipticModulus]) -> JacobiTriple:
    """sn, cn, dn of a real argument by descending Landen transformation.

    Every step maps k to k1 = (1 - k')/(1 + k') and u to u/(1 + k1); once k is
    below the working precision the trigonometric values are exact.
    """
    modulus = _modulus(k)
    u = mpf(u)
    if modulus.kprime == 0:
        sech = 1 / mpmath.cosh(u)
        return JacobiTriple(mpmath.tanh(u), sech, sech)
    moduli = []
    current = modulus
    threshold = mpf(2) ** (-mp.prec)
    while current.k > threshold:
        k1 = (1 - current.kprime) / (1 + current.kprime)
        moduli.append(k1)
        u = u / (1 + k1)
        current = EllipticModulus.from_k(k1)
    sn, cn, dn = mpmath.sin(u), mpmath.cos(u), mpf(1)
    for k1 in reversed(moduli):
        denominator = 1 + k1 * sn**2
        sn, cn, dn = (
            (1 + k1) * sn / denominator,
            cn * dn / denominator,
            (1 - k1 * sn**2) / denominator,
        )
    return JacobiTriple(sn, cn, dn)


def jacobi_agm(u: Real, k: Union[Real, EllipticModulus]) -> JacobiTriple:
    "sn, cn, dn by the AGM phase recursion, independent of `jacobi_real`"
    modulus = _modulus(k)
    u = mpf(u)
    if modulus.kprime == 0:
        sech = 1 / mpmath.cosh(u)
        return JacobiTriple(mpmath.tanh(u), sech, sech)
    a, b, c = mpf(1), modulus.kprime, modulus.k
    a_values, c_values = [a], [c]
    threshold = mpf(2) ** (-mp.prec)
    while abs(c) > threshold:
        a, b, c = (a + b) / 2, mpmath.sqrt(a * b), (a - b) / 2
        a_values.append(a)
        c_values.append(c)
    steps = len(a_values) - 1
    phi = mpf(2) ** steps * a_values[-1] * u
    previous = phi
    for n in range(steps, 0, -1):
        previous = phi
        phi = (phi + mpmath.asin(c_values[n] * mpmath.sin(phi) / a_values[n])) / 2
    if steps == 0:
        return JacobiTriple(mpmath.sin(u), mpmath.cos(u), mpf(1))
    return JacobiTriple(
        mpmath.sin(phi), mpmath.cos(phi), mpmath.cos(phi) / mpmath.cos(previous - phi)
    )


class Shift(str, Enum):
    I_KPRIME = "iKprime"
    KPRIME_REAL = "Kprime-real"
    K_REAL = "K-real"
    TWO_K_REAL = "2K-real"

    @classmethod
    def from_tag(cls, tag: str) -> "Shift":
        try:
            return cls(tag)
        except ValueError:
            raise UnknownIdError("shift", tag)


def _quarter_period_shift(triple: JacobiTriple, kprime: mpf) -> JacobiTriple:
    return JacobiTriple(
        triple.cn / triple.dn, -kprime * triple.sn / triple.dn, kprime / triple.dn
    )


def jacobi_shifted(
    u: Real, shift: Shift, k: Union[Real, EllipticModulus]
) -> JacobiTriple:
    """Triple at u + shift from real-argument values.

    `KPRIME_REAL` works in the complementary family: the result is the triple
    of modulus k' at u + K(k').
    """
    modulus = _modulus(k)
    if shift is Shift.KPRIME_REAL:
        complement = modulus.complement
        return _quarter_period_shift(jacobi_real(u, complement), complement.kprime)
    triple = jacobi_real(u, modulus)
    if shift is Shift.K_REAL:
        return _quarter_period_shift(triple, modulus.kprime)
    if shift is Shift.TWO_K_REAL:
        return JacobiTriple(-triple.sn, -triple.cn, triple.dn)
    if modulus.k == 0:
        raise InvalidParameterError("the iK' shift needs k > 0")
    if triple.sn == 0:
        raise PoleError()
    return JacobiTriple(
        1 / (modulus.k * triple.sn),
        mpmath.mpc(0, -1) * triple.dn / (modulus.k * triple.sn),
        mpmath.mpc(0, -1) * triple.cn / triple.sn,
    )
