"""
Catalog of contraction cases.

Every case pairs a hyperboloid chart with the flat chart it goes into, the
schedule (leading-order substitution of the chart coordinates in terms of the
flat ones) and the operator limit. Case ids read `<source>[params]-><target>`;
catalogued negative cases are named by their source only.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from math import cosh as fcosh
from math import sinh as fsinh
from typing import Any

import mpmath
from sympy import Matrix, Rational, diag, sqrt, zeros

# source and target charts have to be registered first
import hyperlab.charts  # noqa: F401
from hyperlab.contraction import ContractionCase, OperatorLimit, register
from hyperlab.polyops import R_SYMBOL

R = R_SYMBOL
HALF = Rational(1, 2)

# flat operators over (p1, p2, M) resp. (p0, p1, N)
P_FIRST = diag(1, 0, 0)
P_SECOND = diag(0, 1, 0)
ROTATION = diag(0, 0, 1)
# {p2, M} on E2, {p1, N} on E11
PARABOLIC = Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
HYPERBOLIC_III = Matrix([[-1, -1, 0], [-1, -1, 0], [0, 0, 1]])


def _sign(value: float) -> int:
    return -1 if value < 0 else 1


def _first_order(*linear: Any) -> dict[str, Any]:
    "Matrix and linear part of a first-order operator"
    return {"matrix": zeros(3, 3), "linear": linear, "target": zeros(3, 3)}


# H2 -> E2

register(
    ContractionCase(
        "H2/SPH->E2/polar",
        "H2/SPH",
        "E2/polar",
        schedule=lambda r, phi, R: (r / R, phi),
        operator=OperatorLimit(ROTATION),
        expected_order=2.0,
        anchor="tanh(tau) ~ tau ~ r/R",
    )
)

register(
    ContractionCase(
        "H2/SPH-NO->E2/polar-NO",
        "H2/SPH-NO",
        "E2/polar-NO",
        schedule=lambda r, phi, R: (r / R, phi),
        operator=OperatorLimit(**_first_order(0, 0, -1), target_linear=(0, 0, 1)),
        anchor="tau ~ r/R, phi + R tau/alpha -> phi + r/alpha",
    )
)

register(
    ContractionCase(
        "H2/EQ->E2/cartesian",
        "H2/EQ",
        "E2/cartesian",
        schedule=lambda x, y, R: (y / R, x / R),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="sinh(tau1) ~ y/R, tanh(tau2) ~ x/R",
    )
)

register(
    ContractionCase(
        "H2/EQ-NO->E2/cartesian-NO",
        "H2/EQ-NO",
        "E2/cartesian-NO",
        schedule=lambda x, y, R: (y / R, x / R),
        source_parameters=lambda R: {"alpha": R},
        operator=OperatorLimit(**_first_order(0, -1 / R, 0), target_linear=(1, 0, 0)),
        anchor="alpha = R, tau1 ~ y'/R, tau2 ~ x'/R",
    )
)

register(
    ContractionCase(
        "H2/HO->E2/cartesian",
        "H2/HO",
        "E2/cartesian",
        schedule=lambda x, y, R: (y / R, 1 + x / R),
        operator=OperatorLimit(P_SECOND, scale=1 / R**2),
        anchor="x~ ~ y/R, y~ ~ 1 + x/R",
    )
)

register(
    ContractionCase(
        "H2/HO-NO->E2/cartesian-NO",
        "H2/HO-NO",
        "E2/cartesian-NO",
        schedule=lambda x, y, R: (x / R, 1 + y / R),
        operator=OperatorLimit(
            **_first_order(0, -1 / R, 1 / R), target_linear=(1, 0, 0)
        ),
        anchor="x~ ~ x'/R, y~ ~ 1 + y'/R",
    )
)

register(
    ContractionCase(
        "H2/EP->E2/cartesian",
        "H2/EP",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.acosh(mpmath.sqrt(2) * (1 + x / R)),
            mpmath.asin(y * mpmath.sqrt(2) / R),
        ),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2, casimir_coefficient=-1),
        anchor="cosh(a) -> sqrt(gamma) (1 + x/R), gamma = 2",
    )
)

register(
    ContractionCase(
        "H2/EP[gamma=1/2]->E2/cartesian",
        "H2/EP",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.asinh(abs(y) / R),
            mpmath.asin(_sign(y) * mpmath.sqrt(mpmath.mpf(1) / 2 - x / R)),
        ),
        source_parameters=lambda R: {"gamma": HALF},
        flat_box=((-2.5, 2.5), (0.1, 2.5)),
        operator=OperatorLimit(P_FIRST, scale=-2 / R**2, casimir_coefficient=-1),
        anchor="gamma < 1: sinh(a) ~ |y| sqrt(gamma/(1 - gamma))/R",
    )
)

register(
    ContractionCase(
        "H2/EP[gamma=1]->E2/parabolic",
        "H2/EP",
        "E2/parabolic",
        schedule=lambda u, v, R: (u / mpmath.sqrt(R), v / mpmath.sqrt(R)),
        source_parameters=lambda R: {"gamma": 1},
        operator=OperatorLimit(PARABOLIC, scale=1 / R, casimir_coefficient=-1),
        anchor="gamma = 1: a ~ u/sqrt(R), theta ~ v/sqrt(R)",
    )
)

register(
    ContractionCase(
        "H2/HP->E2/cartesian",
        "H2/HP",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.asinh(mpmath.sqrt(2 * (1 + 2 * x / R))),
            mpmath.acos(y * mpmath.sqrt(mpmath.mpf(2) / 3) / R),
        ),
        operator=OperatorLimit(P_FIRST, scale=-1 / (3 * R**2), casimir_coefficient=-1),
        anchor="sinh^2(b) -> gamma (1 + 2x/R), gamma = 2",
    )
)

register(
    ContractionCase(
        "H2/SCP->E2/cartesian",
        "H2/SCP",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.sqrt(1 + (x - y) / R),
            mpmath.sqrt(1 + (x + y) / R),
        ),
        operator=OperatorLimit(
            Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]), scale=1 / R**2
        ),
        anchor="entangled: xi^2 ~ 1 + (x - y)/R, eta^2 ~ 1 + (x + y)/R",
    )
)

register(
    ContractionCase(
        "H2/SCP-rot->E2/cartesian",
        "H2/SCP-rot",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.sqrt(1 - mpmath.sqrt(2) * y / R),
            mpmath.sqrt(1 + mpmath.sqrt(2) * x / R),
        ),
        operator=OperatorLimit(diag(2, 0, 0), scale=1 / R**2, casimir_coefficient=1),
        anchor="rotated: xi^2 ~ 1 - sqrt(2) y/R, eta^2 ~ 1 + sqrt(2) x/R",
    )
)

register(
    ContractionCase(
        "H2/SH->E2/cartesian",
        "H2/SH",
        "E2/cartesian",
        schedule=lambda x, y, R: (
            mpmath.asinh(2 * x / R),
            mpmath.asinh(-1 - 2 * y**2 / R**2),
        ),
        octant=lambda x, y: (1, 1, _sign(y)),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="c = 1: sinh(tau1) ~ 2x/R, sinh(tau2) ~ -c - 2y^2/R^2",
    )
)

register(
    ContractionCase(
        "H2/SH-mu->E2/parabolic",
        "H2/SH-mu",
        "E2/parabolic",
        schedule=lambda u, v, R: (u**2 / R, v**2 / R),
        octant=lambda u, v: (1, 1, _sign(v)),
        operator=OperatorLimit(PARABOLIC, scale=1 / R),
        anchor="c = 0: mu1 ~ u^2/R, mu2 ~ v^2/R",
    )
)

register(
    ContractionCase(
        "H2/E->E2/elliptic",
        "H2/E",
        "E2/elliptic",
        schedule=lambda xi, eta, R: (mpmath.cosh(xi) ** 2, mpmath.cos(eta) ** 2),
        source_parameters=lambda R: {"a1": 1, "a2": 0, "a3": -(R**2)},
        octant=lambda xi, eta: (1, _sign(mpmath.cos(eta)), _sign(mpmath.sin(eta))),
        operator=OperatorLimit(diag(1, 0, 1)),
        anchor="a1 - a2 = D^2, -a3 ~ R^2, D = 1",
    )
)

register(
    ContractionCase(
        "H2/E->E2/polar",
        "H2/E",
        "E2/polar",
        schedule=lambda r, phi, R: (r**2, mpmath.cos(phi) ** 2 / R**2),
        source_parameters=lambda R: {"a1": 1 / R**2, "a2": 0, "a3": -(R**2)},
        octant=lambda r, phi: (1, _sign(mpmath.cos(phi)), _sign(mpmath.sin(phi))),
        operator=OperatorLimit(ROTATION),
        anchor="a1 - a2 ~ R^-2, -a3 ~ R^2",
    )
)

register(
    ContractionCase(
        "H2/E->E2/cartesian",
        "H2/E",
        "E2/cartesian",
        schedule=lambda x, y, R: (1 + 2 * y**2 / R**2, x**2 / R**2),
        source_parameters=lambda R: {"a1": 1, "a2": 0, "a3": -1},
        octant=lambda x, y: (1, _sign(x), _sign(y)),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="a fixed: rho1 ~ a1 + 2y^2/R^2, rho2 ~ x^2/R^2",
    )
)

register(
    ContractionCase(
        "H2/E-rot->E2/parabolic",
        "H2/E-rot",
        "E2/parabolic",
        schedule=lambda u, v, R: (
            1 + mpmath.sqrt(2) * v**2 / R,
            1 - mpmath.sqrt(2) * u**2 / R,
        ),
        octant=lambda u, v: (1, 1, _sign(v)),
        operator=OperatorLimit(PARABOLIC, scale=1 / (sqrt(2) * R)),
        anchor="rotated, sinh^2(beta) = 1: rho ~ 1 + sqrt(2) (v^2, -u^2)/R",
    )
)

register(
    ContractionCase(
        "H2/H->E2/cartesian",
        "H2/H",
        "E2/cartesian",
        schedule=lambda x, y, R: (1 + y**2 / R**2, -1 - x**2 / R**2),
        source_parameters=lambda R: {"a1": 1, "a2": 0, "a3": -1},
        octant=lambda x, y: (1, _sign(x), _sign(y)),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="a fixed: rho1 ~ a1 + y^2/R^2, rho2 ~ a3 - x^2/R^2",
    )
)


# H~2 -> E11

register(
    ContractionCase(
        "H~2/EQ-Ia->E11/pseudo-polar-IIa",
        "H~2/EQ-Ia",
        "E11/pseudo-polar-IIa",
        schedule=lambda r, tau, R: (r / R, tau),
        operator=OperatorLimit(ROTATION),
        anchor="tanh(tau1) ~ r/R, covers t > |x|",
    )
)

register(
    ContractionCase(
        "H~2/EQ-Ib->E11/pseudo-polar-IIb",
        "H~2/EQ-Ib",
        "E11/pseudo-polar-IIb",
        schedule=lambda r, tau, R: (r / R, tau),
        operator=OperatorLimit(ROTATION),
        anchor="tan(phi) ~ r/R, covers x > |t|",
    )
)

register(
    ContractionCase(
        "H~2/EQ-Ia-NO->E11/semi-hyperbolic-i",
        "H~2/EQ-Ia-NO",
        "E11/semi-hyperbolic-i",
        schedule=lambda r, tau, R: (r / R, tau),
        operator=OperatorLimit(**_first_order(0, -1, 0), target_linear=(0, 0, 1)),
        anchor="tau1 ~ r/R, psi - ln(R tau1/alpha) -> tau - ln(r/alpha)",
    )
)

register(
    ContractionCase(
        "H~2/EQ-Ib-NO->E11/semi-hyperbolic-ii",
        "H~2/EQ-Ib-NO",
        "E11/semi-hyperbolic-ii",
        schedule=lambda r, tau, R: (r / R, tau),
        operator=OperatorLimit(**_first_order(0, -1, 0), target_linear=(0, 0, 1)),
        anchor="phi ~ r/R, psi - ln(R phi/alpha) -> tau - ln(r/alpha)",
    )
)

register(
    ContractionCase(
        "H~2/EQ-IIb->E11/cartesian-I",
        "H~2/EQ-IIb",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (mpmath.pi / 2 - x / R, t / R),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="tau ~ t/R, phi ~ pi/2 - x/R",
    )
)

register(
    ContractionCase(
        "H~2/EQ-IIb-NO->E11/cartesian-III*",
        "H~2/EQ-IIb-NO",
        "E11/cartesian-III*",
        schedule=lambda t, x, R: (t / (2 * R), x / R),
        source_parameters=lambda R: {"alpha": R},
        operator=OperatorLimit(**_first_order(-1 / R, 0, 0), target_linear=(1, 0, 0)),
        anchor="alpha = R, phi ~ t'/(2R), tau ~ x'/R",
    )
)

register(
    ContractionCase(
        "H~2/SPH->E11/cartesian-I",
        "H~2/SPH",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (t / R, mpmath.pi / 2 - x / R),
        operator=OperatorLimit(P_SECOND, scale=1 / R**2),
        anchor="tau ~ t/R, phi ~ pi/2 - x/R",
    )
)

register(
    ContractionCase(
        "H~2/SPH-NO->E11/cartesian-III",
        "H~2/SPH-NO",
        "E11/cartesian-III",
        schedule=lambda t, x, R: (-t / (2 * R), -x / R),
        source_parameters=lambda R: {"alpha": R},
        operator=OperatorLimit(**_first_order(0, 0, -1 / R), target_linear=(0, 1, 0)),
        anchor="alpha = R, tau ~ -t'/(2R), phi ~ -x'/R",
    )
)

register(
    ContractionCase(
        "H~2/HO->E11/cartesian-I",
        "H~2/HO",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (-x / R, -(1 + t / R)),
        operator=OperatorLimit(P_SECOND, scale=1 / R**2),
        anchor="x~ ~ -x/R, y~ ~ -(1 + t/R)",
    )
)

register(
    ContractionCase(
        "H~2/HO-NO->E11/cartesian-II",
        "H~2/HO-NO",
        "E11/cartesian-II",
        schedule=lambda t, x, R: (t / R, -x / R),
        operator=OperatorLimit(
            **_first_order(-1 / R, 0, -1 / R), target_linear=(1, 1, 0)
        ),
        anchor="xi ~ t'/R, eta ~ -x'/R",
    )
)

register(
    ContractionCase(
        "H~2/E->E11/elliptic-I",
        "H~2/E",
        "E11/elliptic-I",
        schedule=lambda xi, eta, R: (mpmath.cosh(eta) ** 2, -mpmath.sinh(xi) ** 2),
        source_parameters=lambda R: {"a1": R**2, "a2": 1, "a3": 0},
        octant=lambda xi, eta: (_sign(xi), _sign(eta), 1),
        operator=OperatorLimit(diag(0, 1, 1), scale=1 / R**2),
        anchor="a1 ~ R^2, a2 - a3 = D^2, D = 1",
    )
)

register(
    ContractionCase(
        "H~2/E->E11/cartesian-I",
        "H~2/E",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (x**2 / R**2, -1 - 2 * t**2 / R**2),
        source_parameters=lambda R: {"a1": 1, "a2": 0, "a3": -1},
        octant=lambda t, x: (_sign(t), _sign(x), 1),
        operator=OperatorLimit(P_SECOND, scale=1 / R**2),
        anchor="a fixed: rho1 ~ x^2/R^2, rho2 ~ a3 - 2t^2/R^2",
    )
)

register(
    ContractionCase(
        "H~2/H-IA->E11/elliptic-II",
        "H~2/H-IA",
        "E11/elliptic-II",
        schedule=lambda xi, eta, R: (-mpmath.sinh(eta) ** 2, -mpmath.sinh(xi) ** 2),
        source_parameters=lambda R: {"a1": R**2, "a2": 1, "a3": 0},
        octant=lambda xi, eta: (1, _sign(eta), 1),
        operator=OperatorLimit(diag(0, -1, 1)),
        anchor="a1 ~ R^2, a2 - a3 = d^2, d = 1",
    )
)

register(
    ContractionCase(
        "H~2/H-IIA->E11/elliptic-II-ii",
        "H~2/H-IIA",
        "E11/elliptic-II-ii",
        schedule=lambda xi, eta, R: (mpmath.sin(eta) ** 2, mpmath.sin(xi) ** 2),
        source_parameters=lambda R: {"a1": R**2, "a2": 1, "a3": 0},
        octant=lambda xi, eta: (1, _sign(eta), 1),
        operator=OperatorLimit(diag(0, -1, 1)),
        anchor="a1 ~ R^2, a2 - a3 = d^2, trigonometric branch",
    )
)

register(
    ContractionCase(
        "H~2/H-IIA->E11/cartesian-I",
        "H~2/H-IIA",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (-(t**2) / R**2, -1 + 2 * x**2 / R**2),
        source_parameters=lambda R: {"a1": 1, "a2": 0, "a3": -1},
        octant=lambda t, x: (_sign(t), _sign(x), 1),
        operator=OperatorLimit(P_SECOND, scale=-2 / R**2),
        anchor="a fixed: rho1 ~ a2 - t^2/R^2, rho2 ~ a3 + 2x^2/R^2",
    )
)

register(
    ContractionCase(
        "H~2/H-rot->E11/parabolic-I",
        "H~2/H-rot",
        "E11/parabolic-I",
        schedule=lambda u, v, R: (-(u**2) / (2 * R), -(v**2) / (2 * R)),
        source_parameters=lambda R: {"k": HALF},
        octant=lambda u, v: (1, _sign(u * v), 1),
        operator=OperatorLimit(PARABOLIC, scale=1 / R),
        anchor="k fixed: rho ~ -k (u^2, v^2)/R",
    )
)

register(
    ContractionCase(
        "H~2/H-rot->E11/pseudo-polar-IIa",
        "H~2/H-rot",
        "E11/pseudo-polar-IIa",
        schedule=lambda r, tau, R: (-(r**2) / R**2, -mpmath.sinh(tau) ** 2 / R**4),
        source_parameters=lambda R: {"k": 1 / R**2},
        octant=lambda r, tau: (1, _sign(tau), 1),
        operator=OperatorLimit(ROTATION, scale=1 / R**2),
        anchor="k ~ R^-2: rho1 ~ -r^2/R^2, rho2 ~ -sinh^2(tau)/R^4",
    )
)


def _hyperbolic_i_x(zeta1: float, zeta2: float) -> float:
    "x of E11/hyperbolic-I at l = 1"
    return (fcosh((zeta1 - zeta2) / 2) + fsinh((zeta1 + zeta2) / 2)) / 2


register(
    ContractionCase(
        "H~2/SH-I->E11/hyperbolic-I",
        "H~2/SH-I",
        "E11/hyperbolic-I",
        schedule=lambda zeta1, zeta2, R: (zeta1, zeta2),
        source_parameters=lambda R: {"c": 2 * R**2},
        octant=lambda z1, z2: (
            _sign(_hyperbolic_i_x(z1, z2)),
            _sign(_hyperbolic_i_x(z1, z2)),
            1,
        ),
        operator=OperatorLimit(
            Matrix([[0, HALF, 0], [HALF, 0, 0], [0, 0, 1]]), scale=1 / (2 * R**2)
        ),
        anchor="c ~ 2R^2/l^2, tau_i = zeta_i, l = 1",
    )
)

register(
    ContractionCase(
        "H~2/SH*-I->E11/cartesian-I",
        "H~2/SH*-I",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (
            mpmath.asinh(1 - 2 * x**2 / R**2),
            mpmath.asinh(2 * t / R),
        ),
        flat_box=((-2.5, 2.5), (0.1, 2.5)),
        operator=OperatorLimit(P_FIRST, scale=1 / R**2),
        anchor="c = 1: sinh(tau1) ~ c - (c^2 + 1) x^2/(c R^2), sinh(tau2) ~ 2t/R",
    )
)

register(
    ContractionCase(
        "H~2/SH*-II[c=0]->E11/parabolic-I",
        "H~2/SH*-II",
        "E11/parabolic-I",
        schedule=lambda u, v, R: (mpmath.asinh(u**2 / R), mpmath.asinh(v**2 / R)),
        source_parameters=lambda R: {"c": 0},
        octant=lambda u, v: (1, 1, _sign(u * v)),
        operator=OperatorLimit(PARABOLIC, scale=-1 / R),
        anchor="c = 0: sinh(tau) ~ (u^2, v^2)/R",
    )
)

register(
    ContractionCase(
        "H~2/EP->E11/hyperbolic-II",
        "H~2/EP",
        "E11/hyperbolic-II",
        schedule=lambda zeta1, zeta2, R: (
            mpmath.log(2 * R**2) / 2 - zeta2,
            mpmath.log(2 * R**2) / 2 - zeta1,
        ),
        source_parameters=lambda R: {"gamma": R**2},
        operator=OperatorLimit(
            Matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]), scale=1 / R**2
        ),
        anchor="gamma = R^2/l^2, tau ~ ln(sqrt(2) R/l) - zeta, l = 1",
    )
)

register(
    ContractionCase(
        "H~2/EP*->E11/cartesian-I",
        "H~2/EP*",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (
            mpmath.asinh(-mpmath.sqrt(mpmath.mpf(2) / 3) * x / R),
            mpmath.asinh(-mpmath.sqrt(2) * (1 + t / R)),
        ),
        operator=OperatorLimit(diag(2, 1, 0), scale=1 / R**2),
        anchor="gamma = 2: sinh(tau1) ~ -sqrt(gamma/(gamma+1)) x/R",
    )
)

register(
    ContractionCase(
        "H~2/HP-III->E11/hyperbolic-III",
        "H~2/HP-III",
        "E11/hyperbolic-III",
        schedule=lambda zeta1, zeta2, R: (
            mpmath.asinh(mpmath.sqrt(2) * mpmath.exp(zeta1) / R),
            mpmath.asinh(mpmath.sqrt(2) * mpmath.exp(zeta2) / R),
        ),
        source_parameters=lambda R: {"gamma": R**2},
        operator=OperatorLimit(HYPERBOLIC_III, scale=-1 / R**2),
        anchor="gamma = R^2/l^2, sinh ~ sqrt(2) l e^zeta/R, l = 1, b = 1",
    )
)

register(
    ContractionCase(
        "H~2/HP-II->E11/hyperbolic-III",
        "H~2/HP-II",
        "E11/hyperbolic-III",
        schedule=lambda zeta1, zeta2, R: (
            mpmath.asin(mpmath.sqrt(2) * mpmath.exp(zeta1) / R),
            mpmath.asin(mpmath.sqrt(2) * mpmath.exp(zeta2) / R),
        ),
        source_parameters=lambda R: {"gamma": R**2},
        target_parameters={"l": -1, "b": -1},
        operator=OperatorLimit(HYPERBOLIC_III, scale=-1 / R**2),
        anchor="gamma = R^2/l^2, sin ~ sqrt(2) e^zeta/R, l = -1, b = -1",
    )
)

register(
    ContractionCase(
        "H~2/HP*-I[gamma=1/2]->E11/cartesian-I",
        "H~2/HP*-I",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (
            -mpmath.pi / 2 - mpmath.asin(x / R),
            mpmath.asin((1 + t / R) / mpmath.sqrt(2)),
        ),
        source_parameters=lambda R: {"gamma": HALF},
        operator=OperatorLimit(diag(-HALF, 1, 0), scale=1 / R**2),
        anchor="gamma = 1/2: theta ~ -pi/2 - x/R, sin(phi) ~ (1 + t/R)/sqrt(2)",
    )
)

register(
    ContractionCase(
        "H~2/HP*-II->E11/cartesian-I",
        "H~2/HP*-II",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (
            -mpmath.asin((1 - t / R) / mpmath.sqrt(2)),
            mpmath.acos(mpmath.sqrt(2) * x / R),
        ),
        operator=OperatorLimit(diag(-2, 1, 0), scale=1 / R**2),
        anchor="gamma = 2: sin(theta) ~ -(1 - t/R)/sqrt(2), cos(phi) ~ sqrt(2) x/R",
    )
)

register(
    ContractionCase(
        "H~2/HP*-I[gamma=1]->E11/parabolic-I",
        "H~2/HP*-I",
        "E11/parabolic-I",
        schedule=lambda u, v, R: (
            -mpmath.pi / 2 + mpmath.asin(u / mpmath.sqrt(R)),
            mpmath.pi / 2 - mpmath.asin(v / mpmath.sqrt(R)),
        ),
        source_parameters=lambda R: {"gamma": 1},
        target_parameters={"o": -1},
        operator=OperatorLimit(PARABOLIC, scale=-1 / R, casimir_coefficient=1),
        anchor="gamma = 1: theta ~ -pi/2 + u/sqrt(R), phi ~ pi/2 - v/sqrt(R)",
    )
)

register(
    ContractionCase(
        "H~2/SCP-rot->E11/cartesian-I",
        "H~2/SCP-rot",
        "E11/cartesian-I",
        schedule=lambda t, x, R: (2 * (1 + x / R), mpmath.sqrt(2) - 2 * t / R),
        operator=OperatorLimit(
            P_FIRST, scale=-4 / R**2, casimir_coefficient=-HALF
        ),
        anchor="rotated: xi ~ 2 (1 + x/R), eta ~ sqrt(2) - 2t/R",
    )
)


# catalogued negative cases

register(
    ContractionCase(
        "H~2/EQ-IIa",
        "H~2/EQ-IIa",
        "E11/pseudo-polar-IIa",
        negative="the contraction limit R -> oo does not exist, |y0| = R |coth(tau2)| > R",
    )
)

register(
    ContractionCase(
        "H~2/EQ-IIa-NO",
        "H~2/EQ-IIa-NO",
        "E11/cartesian-III",
        negative="does not contract to Cartesian III, the image leaves every bounded set",
    )
)

register(
    ContractionCase(
        "H~2/SCP",
        "H~2/SCP",
        "E11/cartesian-I",
        operator=OperatorLimit(
            Matrix([[0, 0, 1], [0, 0, 1], [1, 1, 0]]), scale=1 / R
        ),
        negative="the limit {p0, N} + {p1, N} does not correspond to any separable system",
    )
)

register(
    ContractionCase(
        "H~2/HP-I",
        "H~2/HP-I",
        "E11/hyperbolic-III",
        negative="lambda < -gamma R^2 = -R^4/l^2 leaves no finite flat limit",
    )
)

register(
    ContractionCase(
        "H~2/HP*-III",
        "H~2/HP*-III",
        "E11/hyperbolic-III",
        negative="the exchanged type III region recedes to infinity, no flat limit",
    )
)
