"""
Orbit tags of second-order symmetry operators and their canonical matrices.

A symmetric 3x3 matrix M stands for the operator sum(M[i][j] X_i X_j) in the
generator basis X = (K1, K2, L). Off-diagonal entries therefore carry the
anticommutators, e.g. M[0][2] = 1 is {K1, L}.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from enum import Enum
from typing import Any, Final, Mapping

from sympy import Matrix, Rational, diag, sqrt, sympify

from hyperlab.errors import InvalidParameterError, UnknownIdError


class Orbit(str, Enum):
    EQ = "EQ"
    SPH = "SPH"
    HO = "HO"
    SCP = "SCP"
    EP = "EP"
    HP = "HP"
    E = "E"
    E_ROTATED = "E-rotated"
    H = "H"
    SH = "SH"
    CASIMIR = "CASIMIR-degenerate"

    @classmethod
    def from_tag(cls, tag: str) -> "Orbit":
        try:
            return cls(tag)
        except ValueError:
            raise UnknownIdError("orbit class", tag)


NINE_CLASSES: Final[tuple[Orbit, ...]] = (
    Orbit.EQ,
    Orbit.SPH,
    Orbit.HO,
    Orbit.SCP,
    Orbit.EP,
    Orbit.HP,
    Orbit.E,
    Orbit.H,
    Orbit.SH,
)

# gamma of EP/HP, s = sinh^2(beta) of E, k2 = sin^2(alpha) of H, c = sinh(2 beta)
# of SH
DEFAULT_PARAMETERS: Final[dict[Orbit, dict[str, Any]]] = {
    Orbit.EP: {"gamma": 1},
    Orbit.HP: {"gamma": 1},
    Orbit.E: {"s": 1},
    Orbit.E_ROTATED: {"s": 1},
    Orbit.H: {"k2": Rational(1, 2)},
    Orbit.SH: {"c": 1},
}

CASIMIR_MATRIX: Final[Matrix] = diag(1, 1, -1)


def resolve_parameters(orbit: Orbit, params: Mapping[str, Any]) -> dict[str, Any]:
    "Merges `params` into the defaults of `orbit` and validates the ranges"
    defaults = DEFAULT_PARAMETERS.get(orbit, {})
    unknown = set(params) - set(defaults)
    if unknown:
        raise InvalidParameterError(
            f"{orbit.value} takes the parameters {sorted(defaults) or 'none'}, "
            f"got {sorted(unknown)}"
        )
    values = {name: sympify(params.get(name, value)) for name, value in defaults.items()}
    if orbit in (Orbit.EP, Orbit.HP) and not values["gamma"] > 0:
        raise InvalidParameterError("gamma > 0")
    if orbit in (Orbit.E, Orbit.E_ROTATED) and not values["s"] > 0:
        raise InvalidParameterError("sinh^2(beta) > 0")
    if orbit is Orbit.H and not 0 < values["k2"] < 1:
        raise InvalidParameterError("sin^2(alpha) not in {0, 1}, 0 < k2 < 1")
    return values


def canonical_matrix(orbit: Orbit, params: Mapping[str, Any] = {}) -> Matrix:
    values = resolve_parameters(orbit, params)
    if orbit is Orbit.EQ:
        return diag(0, 1, 0)
    if orbit is Orbit.SPH:
        return diag(0, 0, 1)
    if orbit is Orbit.HO:
        return Matrix([[1, 0, 1], [0, 0, 0], [1, 0, 1]])
    if orbit is Orbit.SCP:
        return Matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    if orbit is Orbit.EP:
        return Matrix([[1, 0, 1], [0, values["gamma"], 0], [1, 0, 1]])
    if orbit is Orbit.HP:
        return Matrix([[1, 0, 1], [0, -values["gamma"], 0], [1, 0, 1]])
    if orbit is Orbit.E:
        return diag(0, values["s"], 1)
    if orbit is Orbit.E_ROTATED:
        # cosh(2 beta) L^2 + sinh(2 beta)/2 {K1, L}
        s = values["s"]
        half_sinh = sqrt(s * (1 + s))
        return Matrix([[0, 0, half_sinh], [0, 0, 0], [half_sinh, 0, 1 + 2 * s]])
    if orbit is Orbit.H:
        return diag(0, 1, -values["k2"])
    if orbit is Orbit.SH:
        return Matrix([[0, 0, 1], [0, values["c"], 0], [1, 0, 0]])
    raise InvalidParameterError(f"{orbit.value} has no canonical operator")


# K1 <-> K2, L -> -L, the operator side of exchanging u1 and u2
PERMUTATION: Final[Matrix] = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])


def permuted(matrix: Matrix) -> Matrix:
    return PERMUTATION.T * matrix * PERMUTATION
