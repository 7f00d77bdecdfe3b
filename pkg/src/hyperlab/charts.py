"""
Coordinate charts of H2, H~2, E2 and E11.

Ids follow `<space>/<system>[-<variant>]`. `-NO` marks the nonorthogonal
companions, `*` the charts with u1 and u2 exchanged and `-rot` the charts moved
by a fixed isometry. Parameter defaults are the demonstration values
gamma = 2, c = 1 and k^2 = 1/2 (a1 - a2 = a2 - a3).
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from math import asinh, inf, pi
from typing import Any, ClassVar, Optional

from sympy import (
    Expr,
    Integer,
    Matrix,
    cos,
    cosh,
    diag,
    exp,
    log,
    sin,
    sinh,
    sqrt,
    tanh,
)

from hyperlab.chart_base import (
    XI1,
    XI2,
    AmbientPoint,
    Chart,
    FlatChart,
    Interval,
    R,
    Space,
    jacobi_cn,
    jacobi_dn,
    jacobi_sn,
    parameter,
)
from hyperlab.elliptic import complete_K, jacobi_real
from hyperlab.errors import InvalidParameterError
from hyperlab.orbits import Orbit, canonical_matrix

ALPHA = parameter("alpha")
GAMMA = parameter("gamma")
C = parameter("c")
K = parameter("k")
A1, A2, A3 = parameter("a1"), parameter("a2"), parameter("a3")

CONFOCAL_DEFAULTS: dict[str, Any] = {"a1": 2, "a2": 1, "a3": 0}
HALF_SQUARE_MODULUS: float = 0.5**0.5

Triple = tuple[Expr, Expr, Expr]


def _ep_matrix(gamma: Any) -> Matrix:
    return Matrix([[1, 0, 1], [0, gamma, 0], [1, 0, 1]])


def _hp_matrix(gamma: Any) -> Matrix:
    return Matrix([[1, 0, 1], [0, -gamma, 0], [1, 0, 1]])


def _sh_matrix(c: Any) -> Matrix:
    return Matrix([[0, 0, 1], [0, c, 0], [1, 0, 0]])


class _NonorthogonalMixin:
    orthogonal: ClassVar[bool] = False
    PARAMETERS: ClassVar[dict[str, Any]] = {"alpha": 1}

    def validate(self) -> None:
        if not self.params["alpha"] != 0:  # type: ignore
            raise InvalidParameterError("alpha != 0")


class _ConfocalMixin:
    "Charts with the three confocal constants a1 > a2 > a3"

    PARAMETERS: ClassVar[dict[str, Any]] = CONFOCAL_DEFAULTS
    squared_form: ClassVar[bool] = True

    def validate(self) -> None:
        a1, a2, a3 = (self.params[name] for name in ("a1", "a2", "a3"))  # type: ignore
        if not a1 > a2 > a3:
            raise InvalidParameterError("a1 > a2 > a3")

    def constants(self) -> tuple[float, float, float]:
        return (self.value("a1"), self.value("a2"), self.value("a3"))  # type: ignore


class _ModulusMixin:
    PARAMETERS: ClassVar[dict[str, Any]] = {"k": HALF_SQUARE_MODULUS}

    def validate(self) -> None:
        if not 0 < self.params["k"] < 1:  # type: ignore
            raise InvalidParameterError("0 < k < 1")


class _SignLinkedMixin:
    "u0 is computed from u1 (or the other way round), both flip together"

    squared_form: ClassVar[bool] = True

    def validate(self) -> None:
        super().validate()  # type: ignore
        if self.octant[0] != self.octant[1]:  # type: ignore
            raise InvalidParameterError("octant signs of u0 and u1 have to agree")


# H2, the two-sheeted hyperboloid


class H2Equidistant(Chart, chart_id="H2/EQ"):
    "Equidistant coordinates, the subgroup chart of K2."

    space = Space.H2
    coordinates = ("tau1", "tau2")
    orbit = Orbit.EQ
    targets = ("E2/cartesian",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * cosh(XI1) * cosh(XI2),
            R * cosh(XI1) * sinh(XI2),
            R * sinh(XI1),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.EQ)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * cosh(XI1) ** 2, Integer(0))


class H2EquidistantNO(_NonorthogonalMixin, Chart, chart_id="H2/EQ-NO"):
    "Equidistant lines sheared by tau2 -> tau2 + R tau1 / alpha."

    space = Space.H2
    coordinates = ("tau1", "tau2")
    targets = ("E2/cartesian-NO",)

    @classmethod
    def parametrization(cls) -> Triple:
        shifted = XI2 + R * XI1 / ALPHA
        return (
            R * cosh(XI1) * cosh(shifted),
            R * cosh(XI1) * sinh(shifted),
            R * sinh(XI1),
        )


class H2Spherical(Chart, chart_id="H2/SPH"):
    "Pseudo-spherical coordinates, the subgroup chart of L."

    space = Space.H2
    coordinates = ("tau", "phi")
    orbit = Orbit.SPH
    DOMAIN = ((0, inf), (-pi, pi))
    targets = ("E2/polar",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (R * cosh(XI1), R * sinh(XI1) * cos(XI2), R * sinh(XI1) * sin(XI2))

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.SPH)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * sinh(XI1) ** 2, Integer(0))


class H2SphericalNO(_NonorthogonalMixin, Chart, chart_id="H2/SPH-NO"):
    "Pseudo-spherical coordinates with the angle phi + R tau / alpha."

    space = Space.H2
    coordinates = ("tau", "phi")
    DOMAIN = ((0, inf), (-pi, pi))
    targets = ("E2/polar-NO",)

    @classmethod
    def parametrization(cls) -> Triple:
        angle = XI2 + R * XI1 / ALPHA
        return (R * cosh(XI1), R * sinh(XI1) * cos(angle), R * sinh(XI1) * sin(angle))


class H2Horocyclic(Chart, chart_id="H2/HO"):
    "Horocyclic coordinates, the subgroup chart of K1 + L."

    space = Space.H2
    coordinates = ("x_tilde", "y_tilde")
    orbit = Orbit.HO
    DOMAIN = ((-inf, inf), (0, inf))
    targets = ("E2/cartesian",)

    @classmethod
    def parametrization(cls) -> Triple:
        square = XI1**2 + XI2**2
        return (
            R * (square + 1) / (2 * XI2),
            R * (square - 1) / (2 * XI2),
            R * XI1 / XI2,
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.HO)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (Integer(0), R**2 / XI2**2)


class H2HorocyclicNO(Chart, chart_id="H2/HO-NO"):
    """Horocyclic coordinates with x~ replaced by w = x~ + y~ - 1 and the roles
    of u1 and u2 exchanged.
    """

    space = Space.H2
    coordinates = ("x_tilde", "y_tilde")
    orthogonal = False
    DOMAIN = ((-inf, inf), (0, inf))
    targets = ("E2/cartesian-NO",)

    @classmethod
    def parametrization(cls) -> Triple:
        w = XI1 + XI2 - 1
        square = w**2 + XI2**2
        return (
            R * (square + 1) / (2 * XI2),
            R * w / XI2,
            R * (square - 1) / (2 * XI2),
        )


class H2EllipticParabolic(Chart, chart_id="H2/EP"):
    "Elliptic-parabolic coordinates in trigonometric form."

    space = Space.H2
    coordinates = ("a", "theta")
    orbit = Orbit.EP
    PARAMETERS = {"gamma": 2}
    DOMAIN = ((0, inf), (-pi / 2, pi / 2))
    targets = ("E2/cartesian", "E2/parabolic")

    def validate(self) -> None:
        if not self.params["gamma"] > 0:
            raise InvalidParameterError("gamma > 0")

    @classmethod
    def parametrization(cls) -> Triple:
        numerator = cosh(XI1) ** 2 - sin(XI2) ** 2
        denominator = 2 * sqrt(GAMMA) * cos(XI2) * cosh(XI1)
        return (
            R * (numerator + GAMMA) / denominator,
            R * (numerator - GAMMA) / denominator,
            R * sin(XI2) * tanh(XI1) / cos(XI2),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return _ep_matrix(GAMMA)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * GAMMA / cosh(XI1) ** 2, R**2 * GAMMA / cos(XI2) ** 2)


class H2HyperbolicParabolic(Chart, chart_id="H2/HP"):
    "Hyperbolic-parabolic coordinates in trigonometric form."

    space = Space.H2
    coordinates = ("b", "theta")
    orbit = Orbit.HP
    PARAMETERS = {"gamma": 2}
    DOMAIN = ((0, inf), (0, pi))
    targets = ("E2/cartesian",)

    def validate(self) -> None:
        if not self.params["gamma"] > 0:
            raise InvalidParameterError("gamma > 0")

    @classmethod
    def parametrization(cls) -> Triple:
        numerator = cosh(XI1) ** 2 - sin(XI2) ** 2
        denominator = 2 * sqrt(GAMMA) * sin(XI2) * sinh(XI1)
        return (
            R * (numerator + GAMMA) / denominator,
            R * (numerator - GAMMA) / denominator,
            R * cos(XI2) * cosh(XI1) / (sin(XI2) * sinh(XI1)),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return _hp_matrix(GAMMA)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * GAMMA / sinh(XI1) ** 2, -(R**2) * GAMMA / sin(XI2) ** 2)


class H2SemiCircularParabolic(Chart, chart_id="H2/SCP"):
    "Semi-circular-parabolic coordinates, entangled with the Cartesian limit."

    space = Space.H2
    coordinates = ("xi", "eta")
    orbit = Orbit.SCP
    DOMAIN = ((0, inf), (0, inf))
    SAMPLE_BOX = ((0.3, 2.5), (0.3, 2.5))
    targets = ("E2/cartesian",)

    @classmethod
    def parametrization(cls) -> Triple:
        square = (XI2**2 + XI1**2) ** 2
        return (
            R * (square + 4) / (8 * XI1 * XI2),
            R * (square - 4) / (8 * XI1 * XI2),
            R * (XI2**2 - XI1**2) / (2 * XI1 * XI2),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.SCP)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 / XI1**2, -(R**2) / XI2**2)


class H2RotatedSemiCircularParabolic(H2SemiCircularParabolic, chart_id="H2/SCP-rot"):
    "Semi-circular-parabolic coordinates rotated about u0 by -pi/4."

    @classmethod
    def transform(cls) -> Matrix:
        half = 1 / sqrt(2)
        return Matrix([[1, 0, 0], [0, half, half], [0, -half, half]])


class H2Elliptic(_ConfocalMixin, Chart, chart_id="H2/E"):
    "Elliptic coordinates in algebraic form, a3 < a2 < rho2 < a1 < rho1."

    space = Space.H2
    coordinates = ("rho1", "rho2")
    orbit = Orbit.E
    targets = ("E2/elliptic", "E2/polar", "E2/cartesian")

    def domain(self) -> tuple[Interval, Interval]:
        a1, a2, _ = self.constants()
        return ((a1, inf), (a2, a1))

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sqrt((XI1 - A3) * (XI2 - A3) / ((A1 - A3) * (A2 - A3))),
            R * sqrt((XI1 - A2) * (XI2 - A2) / ((A1 - A2) * (A2 - A3))),
            R * sqrt((XI1 - A1) * (A1 - XI2) / ((A1 - A2) * (A1 - A3))),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, (A1 - A2) / (A2 - A3), 1)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * (XI1 - A2) / (A2 - A3), R**2 * (XI2 - A2) / (A2 - A3))

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 1, 2))


class H2RotatedElliptic(H2Elliptic, chart_id="H2/E-rot"):
    """Elliptic coordinates boosted along K2 so that one focus sits at the apex.

    Uses a = (1, 0, -1) by default, i.e. sinh^2(beta) = 1.
    """

    PARAMETERS = {"a1": 1, "a2": 0, "a3": -1}
    orbit = Orbit.E_ROTATED
    targets = ("E2/parabolic",)

    @classmethod
    def parametrization(cls) -> Triple:
        u0, u1, u2 = super().parametrization()
        return (u0, -u1, u2)

    @classmethod
    def transform(cls) -> Matrix:
        s = (A1 - A2) / (A2 - A3)
        return Matrix(
            [[sqrt(1 + s), sqrt(s), 0], [sqrt(s), sqrt(1 + s), 0], [0, 0, 1]]
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        s = (A1 - A2) / (A2 - A3)
        return diag(0, s, 1) - s * diag(1, 1, -1)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        s = (A1 - A2) / (A2 - A3)
        first, second = super().lambda_expressions()
        return (first - s * R**2, second - s * R**2)

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 2)) and point.u1 * self.octant[1] < 0


class H2Hyperbolic(_ConfocalMixin, Chart, chart_id="H2/H"):
    "Hyperbolic coordinates in algebraic form, rho2 < a3 < a2 < a1 < rho1."

    space = Space.H2
    coordinates = ("rho1", "rho2")
    orbit = Orbit.H
    targets = ("E2/cartesian",)

    def domain(self) -> tuple[Interval, Interval]:
        a1, _, a3 = self.constants()
        return ((a1, inf), (-inf, a3))

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sqrt((XI1 - A2) * (A2 - XI2) / ((A1 - A2) * (A2 - A3))),
            R * sqrt((XI1 - A3) * (A3 - XI2) / ((A1 - A3) * (A2 - A3))),
            R * sqrt((XI1 - A1) * (A1 - XI2) / ((A1 - A2) * (A1 - A3))),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, 1, -(A2 - A3) / (A1 - A3))

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * (XI1 - A3) / (A1 - A3), R**2 * (XI2 - A3) / (A1 - A3))

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 1, 2))


class _JacobiForm(_ModulusMixin, Chart):
    """Shared parts of the Jacobi elliptic forms.

    The chart uses a = (1, k^2, 0) for its algebraic counterpart, so that
    k^2 = (a2 - a3) / (a1 - a3) and k'^2 = (a1 - a2) / (a1 - a3).
    """

    space = Space.H2
    coordinates = ("nu", "b")
    algebraic_id: ClassVar[str]

    def domain(self) -> tuple[Interval, Interval]:
        k = self.value("k")
        kprime = (1 - k * k) ** 0.5
        return ((0, float(complete_K(k))), (0, float(complete_K(kprime))))

    def algebraic_parameters(self) -> dict[str, Any]:
        return {"a1": 1, "a2": self.params["k"] ** 2, "a3": 0}

    def algebraic_coordinates(self, nu: Any, b: Any) -> tuple[Any, Any]:
        "(rho1, rho2) of the algebraic chart under `algebraic_parameters`"
        raise NotImplementedError


class H2EllipticJacobi(_JacobiForm, chart_id="H2/E-jacobi"):
    "Elliptic coordinates through sn, cn, dn of real arguments."

    orbit = Orbit.E
    algebraic_id = "H2/E"

    @classmethod
    def parametrization(cls) -> Triple:
        kprime = sqrt(1 - K**2)
        sn, cn, dn = jacobi_sn(XI1, K), jacobi_cn(XI1, K), jacobi_dn(XI1, K)
        sn_b, cn_b, dn_b = (
            jacobi_sn(XI2, kprime),
            jacobi_cn(XI2, kprime),
            jacobi_dn(XI2, kprime),
        )
        return (R * dn_b / (K * sn), R * dn * cn_b / (K * sn), R * cn * sn_b / sn)

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, (1 - K**2) / K**2, 1)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        kprime = sqrt(1 - K**2)
        sn = jacobi_sn(XI1, K)
        cn_b = jacobi_cn(XI2, kprime)
        return (
            R**2 * (1 / sn**2 - K**2) / K**2,
            R**2 * (1 - K**2) * cn_b**2 / K**2,
        )

    def algebraic_coordinates(self, nu: Any, b: Any) -> tuple[Any, Any]:
        "rho1 = a1 + (a1 - a3) cn^2/sn^2, rho2 = a1 - (a1 - a2) sn^2(b, k')"
        k = self.params["k"]
        kprime = (1 - k * k) ** 0.5
        first = jacobi_real(nu, k)
        second = jacobi_real(b, kprime)
        return (1 + first.cn**2 / first.sn**2, 1 - kprime**2 * second.sn**2)


class H2HyperbolicJacobi(_JacobiForm, chart_id="H2/H-jacobi"):
    "Hyperbolic coordinates through sn, cn, dn of real arguments."

    orbit = Orbit.H
    algebraic_id = "H2/H"

    @classmethod
    def parametrization(cls) -> Triple:
        kprime = sqrt(1 - K**2)
        sn, cn, dn = jacobi_sn(XI1, K), jacobi_cn(XI1, K), jacobi_dn(XI1, K)
        sn_b, cn_b, dn_b = (
            jacobi_sn(XI2, kprime),
            jacobi_cn(XI2, kprime),
            jacobi_dn(XI2, kprime),
        )
        return (
            R * dn * dn_b / (K * kprime * sn * sn_b),
            R * cn_b / (K * sn * sn_b),
            R * cn / (kprime * sn * sn_b),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, 1, -(K**2))

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        kprime = sqrt(1 - K**2)
        sn_b, cn_b = jacobi_sn(XI2, kprime), jacobi_cn(XI2, kprime)
        return (R**2 / jacobi_sn(XI1, K) ** 2, -(R**2) * cn_b**2 / sn_b**2)

    def algebraic_coordinates(self, nu: Any, b: Any) -> tuple[Any, Any]:
        "rho1 = a3 + (a1 - a3)/sn^2, rho2 = a3 - (a1 - a3) cn^2/sn^2 of (b, k')"
        k = self.params["k"]
        kprime = (1 - k * k) ** 0.5
        first = jacobi_real(nu, k)
        second = jacobi_real(b, kprime)
        return (1 / first.sn**2, -(second.cn**2) / second.sn**2)


class H2SemiHyperbolic(_SignLinkedMixin, Chart, chart_id="H2/SH"):
    """Semi-hyperbolic coordinates, sinh(tau2) < -c < sinh(tau1).

    u0 and u2 come from their squares, u1 = u0 u1 / u0 keeps the sign of
    the product fixed by the characteristic system.
    """

    space = Space.H2
    coordinates = ("tau1", "tau2")
    orbit = Orbit.SH
    PARAMETERS = {"c": 1}
    targets = ("E2/cartesian",)

    def domain(self) -> tuple[Interval, Interval]:
        edge = asinh(-self.value("c"))
        return ((edge, inf), (-inf, edge))

    @classmethod
    def parametrization(cls) -> Triple:
        s1, s2 = sinh(XI1), sinh(XI2)
        norm = C**2 + 1
        u0 = R * sqrt(
            (sqrt(norm) * cosh(XI1) * cosh(XI2) + 1 - s1 * s2 - C * (s1 + s2))
            / (2 * norm)
        )
        product = R**2 * ((s1 + s2) + C * (1 - s1 * s2)) / (2 * norm)
        return (u0, product / u0, R * sqrt(-(s1 + C) * (s2 + C) / norm))

    @classmethod
    def base_operator(cls) -> Matrix:
        return _sh_matrix(C)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-(R**2) * sinh(XI1), -(R**2) * sinh(XI2))

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 2))


class H2SemiHyperbolicMu(_SignLinkedMixin, Chart, chart_id="H2/SH-mu"):
    "Semi-hyperbolic coordinates at c = 0 with lambda = (-R^2 mu1, R^2 mu2)."

    space = Space.H2
    coordinates = ("mu1", "mu2")
    orbit = Orbit.SH
    DOMAIN = ((0, inf), (0, inf))
    targets = ("E2/parabolic",)

    @classmethod
    def parametrization(cls) -> Triple:
        root = sqrt((1 + XI1**2) * (1 + XI2**2))
        u0 = R * sqrt((root + XI1 * XI2 + 1) / 2)
        return (u0, R**2 * (XI1 - XI2) / (2 * u0), R * sqrt(XI1 * XI2))

    @classmethod
    def base_operator(cls) -> Matrix:
        return _sh_matrix(0)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-(R**2) * XI1, R**2 * XI2)

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 2))


# H~2, the one-sheeted hyperboloid


class H2TEquidistantIa(Chart, chart_id="H~2/EQ-Ia"):
    "Equidistant coordinates of type Ia, covering u0 > |u1|, u2 > 0."

    space = Space.H2_TILDE
    coordinates = ("tau1", "tau2")
    orbit = Orbit.EQ
    DOMAIN = ((0, inf), (-inf, inf))
    COVER_INEQUALITY = "u0 > |u1|"
    targets = ("E11/pseudo-polar-IIa",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sinh(XI1) * cosh(XI2),
            R * sinh(XI1) * sinh(XI2),
            R * cosh(XI1),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.EQ)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-(R**2) * sinh(XI1) ** 2, Integer(0))

    def region(self, point: AmbientPoint) -> bool:
        return point.u0 > abs(point.u1) and point.u2 > 0


class H2TEquidistantIaNO(_NonorthogonalMixin, Chart, chart_id="H~2/EQ-Ia-NO"):
    "Type Ia equidistant lines with the logarithmic shear psi - ln(R tau1 / alpha)."

    space = Space.H2_TILDE
    coordinates = ("tau1", "psi")
    DOMAIN = ((0, inf), (-inf, inf))
    targets = ("E11/semi-hyperbolic-i",)

    @classmethod
    def parametrization(cls) -> Triple:
        shifted = XI2 - log(R * XI1 / ALPHA)
        return (
            R * sinh(XI1) * cosh(shifted),
            R * sinh(XI1) * sinh(shifted),
            R * cosh(XI1),
        )

    def region(self, point: AmbientPoint) -> bool:
        return point.u0 > abs(point.u1) and point.u2 > 0


class H2TEquidistantIb(Chart, chart_id="H~2/EQ-Ib"):
    "Equidistant coordinates of type Ib, covering u1 > |u0|."

    space = Space.H2_TILDE
    coordinates = ("phi", "tau")
    orbit = Orbit.EQ
    DOMAIN = ((0, pi), (-inf, inf))
    COVER_INEQUALITY = "u1 > |u0|"
    targets = ("E11/pseudo-polar-IIb",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sin(XI1) * sinh(XI2),
            R * sin(XI1) * cosh(XI2),
            R * cos(XI1),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.EQ)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * sin(XI1) ** 2, Integer(0))

    def region(self, point: AmbientPoint) -> bool:
        return point.u1 > abs(point.u0)


class H2TEquidistantIbNO(_NonorthogonalMixin, Chart, chart_id="H~2/EQ-Ib-NO"):
    "Type Ib equidistant lines with the logarithmic shear psi - ln(R phi / alpha)."

    space = Space.H2_TILDE
    coordinates = ("phi", "psi")
    DOMAIN = ((0, pi), (-inf, inf))
    targets = ("E11/semi-hyperbolic-ii",)

    @classmethod
    def parametrization(cls) -> Triple:
        shifted = XI2 - log(R * XI1 / ALPHA)
        return (
            R * sin(XI1) * sinh(shifted),
            R * sin(XI1) * cosh(shifted),
            R * cos(XI1),
        )

    def region(self, point: AmbientPoint) -> bool:
        return point.u1 > abs(point.u0)


class H2TEquidistantIIa(H2TEquidistantIa, chart_id="H~2/EQ-IIa"):
    """Type Ia with u1 and u2 exchanged, the subgroup chart of K1.

    |y0| = R |coth(tau2)| > R, so there is no contraction limit.
    """

    permuted = True
    COVER_INEQUALITY = "u0 > |u2|"
    targets = ()


class H2TEquidistantIIaNO(_NonorthogonalMixin, Chart, chart_id="H~2/EQ-IIa-NO"):
    "Type IIa equidistant lines sheared by tau2 -> tau2 + R tau1 / alpha."

    space = Space.H2_TILDE
    coordinates = ("tau1", "tau2")
    DOMAIN = ((0, inf), (-inf, inf))
    targets = ()

    @classmethod
    def parametrization(cls) -> Triple:
        shifted = XI2 + R * XI1 / ALPHA
        return (
            R * sinh(XI1) * cosh(shifted),
            R * cosh(XI1),
            R * sinh(XI1) * sinh(shifted),
        )

    def region(self, point: AmbientPoint) -> bool:
        return point.u0 > abs(point.u2) and point.u1 > 0


class H2TEquidistantIIb(H2TEquidistantIb, chart_id="H~2/EQ-IIb"):
    "Type Ib with u1 and u2 exchanged, the subgroup chart of K1."

    permuted = True
    COVER_INEQUALITY = "u2 > |u0|"
    targets = ("E11/cartesian-I",)


class H2TEquidistantIIbNO(_NonorthogonalMixin, Chart, chart_id="H~2/EQ-IIb-NO"):
    "Type IIb equidistant lines sheared by tau -> tau + R phi / alpha."

    space = Space.H2_TILDE
    coordinates = ("phi", "tau")
    DOMAIN = ((-pi / 2, pi / 2), (-inf, inf))
    targets = ("E11/cartesian-III*",)

    @classmethod
    def parametrization(cls) -> Triple:
        shifted = XI2 + R * XI1 / ALPHA
        return (
            -R * cos(XI1) * sinh(shifted),
            R * sin(XI1),
            -R * cos(XI1) * cosh(shifted),
        )

    def region(self, point: AmbientPoint) -> bool:
        return -point.u2 > abs(point.u0)


class H2TSpherical(Chart, chart_id="H~2/SPH"):
    "Pseudo-spherical coordinates, the subgroup chart of L."

    space = Space.H2_TILDE
    coordinates = ("tau", "phi")
    orbit = Orbit.SPH
    DOMAIN = ((-inf, inf), (-pi, pi))
    targets = ("E11/cartesian-I",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (R * sinh(XI1), R * cosh(XI1) * cos(XI2), R * cosh(XI1) * sin(XI2))

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.SPH)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-(R**2) * cosh(XI1) ** 2, Integer(0))


class H2TSphericalNO(_NonorthogonalMixin, Chart, chart_id="H~2/SPH-NO"):
    "Pseudo-spherical coordinates with the angle phi + R tau / alpha."

    space = Space.H2_TILDE
    coordinates = ("tau", "phi")
    DOMAIN = ((-inf, inf), (-pi, pi))
    targets = ("E11/cartesian-III",)

    @classmethod
    def parametrization(cls) -> Triple:
        angle = XI2 + R * XI1 / ALPHA
        return (R * sinh(XI1), -R * cosh(XI1) * sin(angle), R * cosh(XI1) * cos(angle))


class H2THorocyclic(Chart, chart_id="H~2/HO"):
    "Horocyclic coordinates with u1 and u2 exchanged, y~ < 0."

    space = Space.H2_TILDE
    coordinates = ("x_tilde", "y_tilde")
    orbit = Orbit.HO
    DOMAIN = ((-inf, inf), (-inf, 0))
    permuted = True
    COVER_INEQUALITY = "u2 > u0"
    targets = ("E11/cartesian-I",)

    @classmethod
    def parametrization(cls) -> Triple:
        square = XI1**2 - XI2**2
        return (
            R * (square + 1) / (2 * XI2),
            R * (square - 1) / (2 * XI2),
            R * XI1 / XI2,
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.HO)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (Integer(0), -(R**2) / XI2**2)

    def region(self, point: AmbientPoint) -> bool:
        return point.u1 > point.u0


class H2THorocyclicNO(Chart, chart_id="H~2/HO-NO"):
    "Nonorthogonal horocyclic coordinates, polynomial in (xi, eta)."

    space = Space.H2_TILDE
    coordinates = ("xi", "eta")
    orthogonal = False
    targets = ("E11/cartesian-II",)

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * (XI1 * XI2**2 - 4 * XI2 + XI1) / 4,
            R * (XI1 * XI2**2 - 4 * XI2 - XI1) / 4,
            R * (1 - XI1 * XI2 / 2),
        )


class H2TEllipticParabolic(Chart, chart_id="H~2/EP"):
    "Elliptic-parabolic coordinates, covering the whole one-sheeted hyperboloid."

    space = Space.H2_TILDE
    coordinates = ("tau1", "tau2")
    orbit = Orbit.EP
    PARAMETERS = {"gamma": 2}
    targets = ("E11/hyperbolic-II",)

    def validate(self) -> None:
        if not self.params["gamma"] > 0:
            raise InvalidParameterError("gamma > 0")

    def constraint(self, xi1: Any, xi2: Any) -> Optional[str]:
        return None if xi2 != 0 else "tau2 != 0"

    @classmethod
    def parametrization(cls) -> Triple:
        numerator = cosh(XI1) ** 2 - cosh(XI2) ** 2
        denominator = 2 * sqrt(GAMMA) * cosh(XI1) * sinh(XI2)
        return (
            R * (numerator + GAMMA) / denominator,
            R * (numerator - GAMMA) / denominator,
            R * tanh(XI1) * cosh(XI2) / sinh(XI2),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return _ep_matrix(GAMMA)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * GAMMA / cosh(XI1) ** 2, -(R**2) * GAMMA / sinh(XI2) ** 2)


class H2TEllipticParabolicStar(H2TEllipticParabolic, chart_id="H~2/EP*"):
    "Elliptic-parabolic coordinates with u1 and u2 exchanged."

    permuted = True
    targets = ("E11/cartesian-I",)


class _OneSheetedHP(Chart):
    """Hyperbolic-parabolic coordinates on H~2.

    The three types split the region |u0 (1 - gamma) - u1 (1 + gamma)| >
    2 R sqrt(gamma) by the range of the characteristic roots.
    """

    space = Space.H2_TILDE
    coordinates = ("theta", "phi")
    orbit = Orbit.HP
    PARAMETERS = {"gamma": 2}
    COVER_INEQUALITY = "|u0 (1 - gamma) - u1 (1 + gamma)| > 2 R sqrt(gamma)"

    def validate(self) -> None:
        if not self.params["gamma"] > 0:
            raise InvalidParameterError("gamma > 0")

    @classmethod
    def base_operator(cls) -> Matrix:
        return _hp_matrix(GAMMA)

    def root_range(self, gamma_r2: float) -> Interval:
        raise NotImplementedError

    def region(self, point: AmbientPoint) -> bool:
        roots = self._roots(point)
        if roots is None:
            return False
        low, high = self.root_range(self.value("gamma") * float(point.R) ** 2)
        return all(low < root < high for root in roots)


class H2THyperbolicParabolicI(_OneSheetedHP, chart_id="H~2/HP-I"):
    "Type I, lambda = -gamma R^2 / sin^2. No contraction limit."

    DOMAIN = ((-pi, pi), (0, pi))
    targets = ()

    def constraint(self, xi1: Any, xi2: Any) -> Optional[str]:
        return None if xi1 != 0 else "theta != 0"

    @classmethod
    def parametrization(cls) -> Triple:
        denominator = 2 * sqrt(GAMMA) * sin(XI1) * sin(XI2)
        numerator = cos(XI1) ** 2 - sin(XI2) ** 2
        return (
            R * (numerator + GAMMA) / denominator,
            R * (numerator - GAMMA) / denominator,
            R * cos(XI1) * cos(XI2) / (sin(XI1) * sin(XI2)),
        )

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-GAMMA * R**2 / sin(XI1) ** 2, -GAMMA * R**2 / sin(XI2) ** 2)

    def root_range(self, gamma_r2: float) -> Interval:
        return (-inf, -gamma_r2)


class H2THyperbolicParabolicII(_OneSheetedHP, chart_id="H~2/HP-II"):
    "Type II, lambda = -gamma R^2 sin^2."

    DOMAIN = ((-pi / 2, pi / 2), (0, pi))
    targets = ("E11/hyperbolic-III",)

    def constraint(self, xi1: Any, xi2: Any) -> Optional[str]:
        return None if xi1 != 0 else "theta != 0"

    @classmethod
    def parametrization(cls) -> Triple:
        s1, s2 = sin(XI1), sin(XI2)
        denominator = 2 * sqrt(GAMMA) * s1 * s2
        numerator = cos(XI1) ** 2 * cos(XI2) ** 2 - 1
        return (
            R * (numerator + GAMMA * s1**2 * s2**2) / denominator,
            R * (numerator - GAMMA * s1**2 * s2**2) / denominator,
            R * cos(XI1) * cos(XI2),
        )

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (-GAMMA * R**2 * sin(XI1) ** 2, -GAMMA * R**2 * sin(XI2) ** 2)

    def root_range(self, gamma_r2: float) -> Interval:
        return (-gamma_r2, 0)


class H2THyperbolicParabolicIII(_OneSheetedHP, chart_id="H~2/HP-III"):
    "Type III, lambda = gamma R^2 sinh^2, covering u2 > 0."

    DOMAIN = ((0, inf), (0, inf))
    targets = ("E11/hyperbolic-III",)

    @classmethod
    def parametrization(cls) -> Triple:
        s1, s2 = sinh(XI1), sinh(XI2)
        denominator = 2 * sqrt(GAMMA) * s1 * s2
        numerator = cosh(XI1) ** 2 * cosh(XI2) ** 2 - 1
        return (
            R * (numerator + GAMMA * s1**2 * s2**2) / denominator,
            R * (numerator - GAMMA * s1**2 * s2**2) / denominator,
            R * cosh(XI1) * cosh(XI2),
        )

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (GAMMA * R**2 * sinh(XI1) ** 2, GAMMA * R**2 * sinh(XI2) ** 2)

    def root_range(self, gamma_r2: float) -> Interval:
        return (0, inf)

    def region(self, point: AmbientPoint) -> bool:
        return point.u2 > 0 and super().region(point)


class H2THyperbolicParabolicIStar(H2THyperbolicParabolicI, chart_id="H~2/HP*-I"):
    "Type I with u1 and u2 exchanged."

    permuted = True
    targets = ("E11/cartesian-I", "E11/parabolic-I")


class H2THyperbolicParabolicIIStar(H2THyperbolicParabolicII, chart_id="H~2/HP*-II"):
    "Type II with u1 and u2 exchanged."

    permuted = True
    targets = ("E11/cartesian-I",)


class H2THyperbolicParabolicIIIStar(
    H2THyperbolicParabolicIII, chart_id="H~2/HP*-III"
):
    "Type III with u1 and u2 exchanged. No contraction limit."

    permuted = True
    targets = ()


class H2TSemiCircularParabolic(Chart, chart_id="H~2/SCP"):
    """Semi-circular-parabolic coordinates, covering |u2| > R only.

    Contracts to {p0, N} + {p1, N}, which generates no coordinate system.
    """

    space = Space.H2_TILDE
    coordinates = ("xi", "eta")
    orbit = Orbit.SCP
    DOMAIN = ((0, inf), (0, inf))
    SAMPLE_BOX = ((0.3, 2.5), (0.3, 2.5))
    COVER_INEQUALITY = "|u2| > R"
    squared_form = True
    targets = ()

    def validate(self) -> None:
        if self.octant[:2] != (1, 1):
            raise InvalidParameterError("only the sign of u2 can be selected")

    @classmethod
    def parametrization(cls) -> Triple:
        square = (XI2**2 - XI1**2) ** 2
        return (
            R * (square + 4) / (8 * XI1 * XI2),
            R * (square - 4) / (8 * XI1 * XI2),
            R * (XI2**2 + XI1**2) / (2 * XI1 * XI2),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return canonical_matrix(Orbit.SCP)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 / XI1**2, R**2 / XI2**2)

    def region(self, point: AmbientPoint) -> bool:
        return point.u2 * self.octant[2] > point.R


class H2TRotatedSemiCircularParabolic(
    H2TSemiCircularParabolic, chart_id="H~2/SCP-rot"
):
    "Semi-circular-parabolic coordinates moved by a fixed Lorentz transformation."

    targets = ("E11/cartesian-I",)

    @classmethod
    def transform(cls) -> Matrix:
        root = sqrt(2)
        return Matrix(
            [
                [Integer(3) / 2, -1, Integer(1) / 2],
                [-3 / (2 * root), root, -1 / (2 * root)],
                [-1 / (2 * root), 0, -3 / (2 * root)],
            ]
        )


class H2TElliptic(_ConfocalMixin, Chart, chart_id="H~2/E"):
    "Elliptic coordinates in algebraic form, rho2 < a3 < a2 < rho1 < a1."

    space = Space.H2_TILDE
    coordinates = ("rho1", "rho2")
    orbit = Orbit.E
    targets = ("E11/elliptic-I", "E11/cartesian-I")

    def domain(self) -> tuple[Interval, Interval]:
        a1, a2, a3 = self.constants()
        return ((a2, a1), (-inf, a3))

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sqrt((XI1 - A3) * (A3 - XI2) / ((A1 - A3) * (A2 - A3))),
            R * sqrt((XI1 - A2) * (A2 - XI2) / ((A1 - A2) * (A2 - A3))),
            R * sqrt((A1 - XI1) * (A1 - XI2) / ((A1 - A2) * (A1 - A3))),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, (A1 - A2) / (A2 - A3), 1)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * (XI1 - A2) / (A2 - A3), R**2 * (XI2 - A2) / (A2 - A3))

    def region(self, point: AmbientPoint) -> bool:
        return self._octant_agrees(point, (0, 1, 2))


class _OneSheetedHyperbolic(_ConfocalMixin, Chart):
    """Hyperbolic coordinates on H~2, both rho inside one interval.

    The covered part (R^2 + k^2 u1^2 - k'^2 u2^2)^2 > 4 k^2 R^2 u1^2 splits
    into four types by the position of rho against a3 < a2 < a1.
    """

    space = Space.H2_TILDE
    coordinates = ("rho1", "rho2")
    orbit = Orbit.H
    COVER_INEQUALITY = "(R^2 + k^2 u1^2 - k'^2 u2^2)^2 > 4 k^2 R^2 u1^2"
    # bounds of rho as names of the constants, None for infinity
    INTERVAL: ClassVar[tuple[Optional[str], Optional[str]]]

    def _interval(self) -> Interval:
        low, high = self.INTERVAL
        return (
            self.value(low) if low else -inf,
            self.value(high) if high else inf,
        )

    def domain(self) -> tuple[Interval, Interval]:
        interval = self._interval()
        return (interval, interval)

    @classmethod
    def parametrization(cls) -> Triple:
        return (
            R * sqrt((XI1 - A2) * (XI2 - A2) / ((A1 - A2) * (A2 - A3))),
            R * sqrt((XI1 - A3) * (XI2 - A3) / ((A1 - A3) * (A2 - A3))),
            R * sqrt((XI1 - A1) * (XI2 - A1) / ((A1 - A2) * (A1 - A3))),
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, 1, -(A2 - A3) / (A1 - A3))

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * (XI1 - A3) / (A1 - A3), R**2 * (XI2 - A3) / (A1 - A3))

    def region(self, point: AmbientPoint) -> bool:
        if not self._octant_agrees(point, (0, 1, 2)):
            return False
        roots = self._roots(point)
        if roots is None:
            return False
        a1, _, a3 = self.constants()
        low, high = self._interval()
        # rho = a3 + (a1 - a3) lambda / R^2
        scale = (a1 - a3) / float(point.R) ** 2
        return all(low < a3 + scale * float(root) < high for root in roots)


class H2THyperbolicIA(_OneSheetedHyperbolic, chart_id="H~2/H-IA"):
    "Hyperbolic coordinates of type I^A, rho1, rho2 < a3."

    INTERVAL = (None, "a3")
    targets = ("E11/elliptic-II",)


class H2THyperbolicIB(_OneSheetedHyperbolic, chart_id="H~2/H-IB"):
    "Hyperbolic coordinates of type I^B, rho1, rho2 > a1."

    INTERVAL = ("a1", None)
    targets = ()


class H2THyperbolicIIA(_OneSheetedHyperbolic, chart_id="H~2/H-IIA"):
    "Hyperbolic coordinates of type II^A, a3 < rho1, rho2 < a2."

    INTERVAL = ("a3", "a2")
    targets = ("E11/elliptic-II-ii", "E11/cartesian-I")


class H2THyperbolicIIB(_OneSheetedHyperbolic, chart_id="H~2/H-IIB"):
    "Hyperbolic coordinates of type II^B, a2 < rho1, rho2 < a1."

    INTERVAL = ("a2", "a1")
    targets = ()


class H2TRotatedHyperbolic(_ModulusMixin, Chart, chart_id="H~2/H-rot"):
    """Type I^A hyperbolic coordinates with a = (1, k^2, 0), boosted along K1.

    The operator is (K2^2 - k^2 L^2) / k before the boost.
    """

    space = Space.H2_TILDE
    coordinates = ("rho1", "rho2")
    orbit = Orbit.H
    PARAMETERS = {"k": 0.5}
    DOMAIN = ((-inf, 0), (-inf, 0))
    squared_form = True
    targets = ("E11/parabolic-I", "E11/pseudo-polar-IIa")

    @classmethod
    def parametrization(cls) -> Triple:
        a2 = K**2
        return (
            R * sqrt((XI1 - a2) * (XI2 - a2) / ((1 - a2) * a2)),
            R * sqrt(XI1 * XI2 / a2),
            R * sqrt((XI1 - 1) * (XI2 - 1) / (1 - a2)),
        )

    @classmethod
    def transform(cls) -> Matrix:
        kprime = sqrt(1 - K**2)
        return Matrix(
            [[1 / kprime, 0, -K / kprime], [0, 1, 0], [-K / kprime, 0, 1 / kprime]]
        )

    @classmethod
    def base_operator(cls) -> Matrix:
        return diag(0, 1, -(K**2)) / K

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * XI1 / K, R**2 * XI2 / K)

    def region(self, point: AmbientPoint) -> bool:
        if not self._octant_agrees(point, (0, 1, 2)):
            return False
        roots = self._roots(point)
        return roots is not None and all(root < 0 for root in roots)


class _OneSheetedSH(_SignLinkedMixin, Chart):
    """Semi-hyperbolic coordinates on H~2, lambda = R^2 sinh(tau).

    Covered where u2^2 + 2 c u0 u1 < 0 or
    |2 u0 u1 + c (u1^2 - u0^2)| > 2 R sqrt(u2^2 + 2 c u0 u1).
    """

    space = Space.H2_TILDE
    coordinates = ("tau1", "tau2")
    orbit = Orbit.SH
    PARAMETERS = {"c": 1}
    COVER_INEQUALITY = "|2 u0 u1 + c (u1^2 - u0^2)| > 2 R sqrt(u2^2 + 2 c u0 u1)"
    # True for type I (sinh(tau) < c), False for type II
    BELOW: ClassVar[bool]

    def domain(self) -> tuple[Interval, Interval]:
        edge = asinh(self.value("c"))
        interval = (-inf, edge) if self.BELOW else (edge, inf)
        return (interval, interval)

    @classmethod
    def parametrization(cls) -> Triple:
        s1, s2 = sinh(XI1), sinh(XI2)
        norm = C**2 + 1
        u1 = R * sqrt(
            (sqrt(norm) * cosh(XI1) * cosh(XI2) - (s1 - C) * (s2 - C) + norm)
            / (2 * norm)
        )
        product = R**2 * ((s1 + s2) - C * (1 - s1 * s2)) / (2 * norm)
        return (product / u1, u1, R * sqrt((s1 - C) * (s2 - C) / norm))

    @classmethod
    def base_operator(cls) -> Matrix:
        return _sh_matrix(C)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * sinh(XI1), R**2 * sinh(XI2))

    def region(self, point: AmbientPoint) -> bool:
        if not self._octant_agrees(point, (1, 2)):
            return False
        roots = self._roots(point)
        if roots is None:
            return False
        edge = self.value("c") * float(point.R) ** 2
        if self.BELOW:
            return all(root < edge for root in roots)
        return all(root > edge for root in roots)


class H2TSemiHyperbolicI(_OneSheetedSH, chart_id="H~2/SH-I"):
    "Type I, sinh(tau1), sinh(tau2) < c."

    BELOW = True
    targets = ("E11/hyperbolic-I",)


class H2TSemiHyperbolicII(_OneSheetedSH, chart_id="H~2/SH-II"):
    "Type II, sinh(tau1), sinh(tau2) > c."

    BELOW = False
    targets = ()


class H2TSemiHyperbolicIStar(H2TSemiHyperbolicI, chart_id="H~2/SH*-I"):
    "Type I with u1 and u2 exchanged."

    permuted = True
    targets = ("E11/cartesian-I",)


class H2TSemiHyperbolicIIStar(H2TSemiHyperbolicII, chart_id="H~2/SH*-II"):
    "Type II with u1 and u2 exchanged."

    permuted = True
    targets = ("E11/parabolic-I",)


class H2TSemiHyperbolicMu(_SignLinkedMixin, Chart, chart_id="H~2/SH-mu"):
    "Semi-hyperbolic coordinates at c = 0, covering |u1| > R with u0 u1 > 0."

    space = Space.H2_TILDE
    coordinates = ("mu1", "mu2")
    orbit = Orbit.SH
    DOMAIN = ((0, inf), (0, inf))
    COVER_INEQUALITY = "|u1| > R"
    targets = ()

    @classmethod
    def parametrization(cls) -> Triple:
        root = sqrt((1 + XI1**2) * (1 + XI2**2))
        u1 = R * sqrt((root - XI1 * XI2 + 1) / 2)
        return (R**2 * (XI1 + XI2) / (2 * u1), u1, R * sqrt(XI1 * XI2))

    @classmethod
    def base_operator(cls) -> Matrix:
        return _sh_matrix(0)

    @classmethod
    def lambda_expressions(cls) -> tuple[Expr, Expr]:
        return (R**2 * XI1, R**2 * XI2)

    def region(self, point: AmbientPoint) -> bool:
        return (
            self._octant_agrees(point, (1, 2))
            and abs(point.u1) > point.R
            and point.u0 * point.u1 > 0
        )


# E2, the Euclidean plane, stored as (0, x1, x2)


def _plane(x1: Expr, x2: Expr) -> Triple:
    return (Integer(0), x1, x2)


class E2Cartesian(FlatChart, chart_id="E2/cartesian"):
    "x1, x2; operator p1^2."

    space = Space.E2
    coordinates = ("x", "y")

    @classmethod
    def parametrization(cls) -> Triple:
        return _plane(XI1, XI2)


class E2CartesianNO(FlatChart, chart_id="E2/cartesian-NO"):
    "x = x' + y', y = y'."

    space = Space.E2
    coordinates = ("x_prime", "y_prime")
    orthogonal = False

    @classmethod
    def parametrization(cls) -> Triple:
        return _plane(XI1 + XI2, XI2)


class E2Polar(FlatChart, chart_id="E2/polar"):
    "r, phi; operator M^2."

    space = Space.E2
    coordinates = ("r", "phi")
    DOMAIN = ((0, inf), (-pi, pi))

    @classmethod
    def parametrization(cls) -> Triple:
        return _plane(XI1 * cos(XI2), XI1 * sin(XI2))


class E2PolarNO(_NonorthogonalMixin, FlatChart, chart_id="E2/polar-NO"):
    "Polar coordinates with the angle phi + r / alpha."

    space = Space.E2
    coordinates = ("r", "phi")
    DOMAIN = ((0, inf), (-pi, pi))

    @classmethod
    def parametrization(cls) -> Triple:
        angle = XI2 + XI1 / ALPHA
        return _plane(XI1 * cos(angle), XI1 * sin(angle))


class E2Parabolic(FlatChart, chart_id="E2/parabolic"):
    "x = (u^2 - v^2)/2, y = u v, u > 0; operator {p2, M}."

    space = Space.E2
    coordinates = ("u", "v")
    DOMAIN = ((0, inf), (-inf, inf))

    @classmethod
    def parametrization(cls) -> Triple:
        return _plane((XI1**2 - XI2**2) / 2, XI1 * XI2)


class E2Elliptic(FlatChart, chart_id="E2/elliptic"):
    "x = D cosh(xi) cos(eta), y = D sinh(xi) sin(eta); operator M^2 + D^2 p1^2."

    space = Space.E2
    coordinates = ("xi", "eta")
    PARAMETERS = {"D": 1}
    DOMAIN = ((0, inf), (-pi, pi))

    @classmethod
    def parametrization(cls) -> Triple:
        d = parameter("D")
        return _plane(d * cosh(XI1) * cos(XI2), d * sinh(XI1) * sin(XI2))


# E11, the Minkowski plane, stored as (t, x, 0)


def _lightcone(t: Expr, x: Expr) -> Triple:
    return (t, x, Integer(0))


class E11CartesianI(FlatChart, chart_id="E11/cartesian-I"):
    "t, x; operators p0^2 and p1^2."

    space = Space.E11
    coordinates = ("t", "x")

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(XI1, XI2)


class E11CartesianII(FlatChart, chart_id="E11/cartesian-II"):
    "t = x' + t'/4, x = x' - t'/4."

    space = Space.E11
    coordinates = ("t_prime", "x_prime")
    orthogonal = False

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(XI2 + XI1 / 4, XI2 - XI1 / 4)


class E11CartesianIII(FlatChart, chart_id="E11/cartesian-III"):
    "t = -t'/2, x = t'/2 + x'."

    space = Space.E11
    coordinates = ("t_prime", "x_prime")
    orthogonal = False

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(-XI1 / 2, XI1 / 2 + XI2)


class E11CartesianIIIStar(FlatChart, chart_id="E11/cartesian-III*"):
    "t = x' + t'/2, x = -t'/2."

    space = Space.E11
    coordinates = ("t_prime", "x_prime")
    orthogonal = False

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(XI2 + XI1 / 2, -XI1 / 2)


class E11PseudoPolarIIa(FlatChart, chart_id="E11/pseudo-polar-IIa"):
    "t = r cosh(tau), x = r sinh(tau), covering t > |x|; operator N^2."

    space = Space.E11
    coordinates = ("r", "tau")
    DOMAIN = ((0, inf), (-inf, inf))
    COVER_INEQUALITY = "t > |x|"

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(XI1 * cosh(XI2), XI1 * sinh(XI2))

    def region(self, point: AmbientPoint) -> bool:
        return point.u0 > abs(point.u1)


class E11PseudoPolarIIb(FlatChart, chart_id="E11/pseudo-polar-IIb"):
    "t = r sinh(tau), x = r cosh(tau), covering x > |t|; operator N^2."

    space = Space.E11
    coordinates = ("r", "tau")
    DOMAIN = ((0, inf), (-inf, inf))
    COVER_INEQUALITY = "x > |t|"

    @classmethod
    def parametrization(cls) -> Triple:
        return _lightcone(XI1 * sinh(XI2), XI1 * cosh(XI2))

    def region(self, point: AmbientPoint) -> bool:
        return point.u1 > abs(point.u0)


class E11ParabolicI(FlatChart, chart_id="E11/parabolic-I"):
    "t = o (u^2 + v^2)/2, x = o u v with o = +-1; operator {N, p1}."

    space = Space.E11
    coordinates = ("u", "v")
    PARAMETERS = {"o": 1}
    DOMAIN = ((0, inf), (-inf, inf))

    def validate(self) -> None:
        if self.params["o"] not in (1, -1):
            raise InvalidParameterError("o = +1 or o = -1")

    @classmethod
    def parametrization(cls) -> Triple:
        o = parameter("o")
        return _lightcone(o * (XI1**2 + XI2**2) / 2, o * XI1 * XI2)


class E11ParabolicII(FlatChart, chart_id="E11/parabolic-II"):
    """t = (eta - xi)^2/(2 alpha) - (eta + xi), x = (eta - xi)^2/(2 alpha) + (eta + xi).

    No chart of either hyperboloid contracts to it; the compound operator
    {K1, K2} + {L, K2} + alpha/R (L - K1)^2 does.
    """

    space = Space.E11
    coordinates = ("xi", "eta")
    PARAMETERS = {"alpha": 1}

    def validate(self) -> None:
        if not self.params["alpha"] != 0:
            raise InvalidParameterError("alpha != 0")

    def constraint(self, xi1: Any, xi2: Any) -> Optional[str]:
        return None if xi1 < xi2 else "xi < eta"

    @classmethod
    def parametrization(cls) -> Triple:
        square = (XI2 - XI1) ** 2 / (2 * ALPHA)
        return _lightcone(square - (XI2 + XI1), square + (XI2 + XI1))


class E11HyperbolicI(FlatChart, chart_id="E11/hyperbolic-I"):
    """t = (l/2)(cosh((z1 - z2)/2) - sinh((z1 + z2)/2)), x with + instead.

    Stated with zeta2 -> -zeta2 against the tabulated form, which is the
    limit of the semi-hyperbolic chart with sinh(tau_i) -> sinh(zeta_i).
    """

    space = Space.E11
    coordinates = ("zeta1", "zeta2")
    PARAMETERS = {"l": 1}

    @classmethod
    def parametrization(cls) -> Triple:
        l = parameter("l")  # noqa: E741
        first = cosh((XI1 - XI2) / 2)
        second = sinh((XI1 + XI2) / 2)
        return _lightcone(l * (first - second) / 2, l * (first + second) / 2)


class E11HyperbolicII(FlatChart, chart_id="E11/hyperbolic-II"):
    "t = l (sinh(z1 - z2) + e^(z1 + z2)), x = l (sinh(z1 - z2) - e^(z1 + z2))."

    space = Space.E11
    coordinates = ("zeta1", "zeta2")
    PARAMETERS = {"l": 1}

    @classmethod
    def parametrization(cls) -> Triple:
        l = parameter("l")  # noqa: E741
        return _lightcone(
            l * (sinh(XI1 - XI2) + exp(XI1 + XI2)),
            l * (sinh(XI1 - XI2) - exp(XI1 + XI2)),
        )


class E11HyperbolicIII(FlatChart, chart_id="E11/hyperbolic-III"):
    "t = l (cosh(z1 - z2) + b e^(z1 + z2)), x = l (cosh(z1 - z2) - b e^(z1 + z2))."

    space = Space.E11
    coordinates = ("zeta1", "zeta2")
    PARAMETERS = {"l": 1, "b": 1}
    COVER_INEQUALITY = "|t + x| > 2 |l|"

    def validate(self) -> None:
        if self.params["b"] not in (1, -1):
            raise InvalidParameterError("b = +1 or b = -1")

    @classmethod
    def parametrization(cls) -> Triple:
        l, b = parameter("l"), parameter("b")  # noqa: E741
        return _lightcone(
            l * (cosh(XI1 - XI2) + b * exp(XI1 + XI2)),
            l * (cosh(XI1 - XI2) - b * exp(XI1 + XI2)),
        )

    def region(self, point: AmbientPoint) -> bool:
        return abs(point.u0 + point.u1) > 2 * abs(self.value("l"))


class E11EllipticI(FlatChart, chart_id="E11/elliptic-I"):
    "t = D sinh(xi) cosh(eta), x = D cosh(xi) sinh(eta)."

    space = Space.E11
    coordinates = ("xi", "eta")
    PARAMETERS = {"D": 1}
    DOMAIN = ((0, inf), (-inf, inf))

    @classmethod
    def parametrization(cls) -> Triple:
        d = parameter("D")
        return _lightcone(d * sinh(XI1) * cosh(XI2), d * cosh(XI1) * sinh(XI2))


class E11EllipticII(FlatChart, chart_id="E11/elliptic-II"):
    "t = d cosh(eta) cosh(xi), x = d sinh(eta) sinh(xi)."

    space = Space.E11
    coordinates = ("xi", "eta")
    PARAMETERS = {"d": 1}
    DOMAIN = ((0, inf), (-inf, inf))

    @classmethod
    def parametrization(cls) -> Triple:
        d = parameter("d")
        return _lightcone(d * cosh(XI2) * cosh(XI1), d * sinh(XI2) * sinh(XI1))


class E11EllipticIIii(FlatChart, chart_id="E11/elliptic-II-ii"):
    "t = d cos(eta) cos(xi), x = d sin(eta) sin(xi)."

    space = Space.E11
    coordinates = ("xi", "eta")
    PARAMETERS = {"d": 1}
    DOMAIN = ((0, pi / 2), (-pi / 2, pi / 2))

    @classmethod
    def parametrization(cls) -> Triple:
        d = parameter("d")
        return _lightcone(d * cos(XI2) * cos(XI1), d * sin(XI2) * sin(XI1))


class _SemiHyperbolicFlat(_NonorthogonalMixin, FlatChart):
    space = Space.E11
    coordinates = ("r", "tau")
    DOMAIN = ((0, inf), (-inf, inf))
    SIGN: ClassVar[int]

    @classmethod
    def parametrization(cls) -> Triple:
        grow = ALPHA * exp(XI2)
        decay = XI1**2 * exp(-XI2) / ALPHA
        return _lightcone(
            (grow + cls.SIGN * decay) / 2, (grow - cls.SIGN * decay) / 2
        )


class E11SemiHyperbolicI(_SemiHyperbolicFlat, chart_id="E11/semi-hyperbolic-i"):
    "2t = alpha e^tau + r^2 e^-tau / alpha, 2x = alpha e^tau - r^2 e^-tau / alpha."

    SIGN = 1


class E11SemiHyperbolicII(_SemiHyperbolicFlat, chart_id="E11/semi-hyperbolic-ii"):
    "2t = alpha e^tau - r^2 e^-tau / alpha, 2x = alpha e^tau + r^2 e^-tau / alpha."

    SIGN = -1
