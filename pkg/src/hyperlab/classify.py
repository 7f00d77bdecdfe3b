"""
Orbit classification of first- and second-order symmetry elements.

A first-order element aK1 + bK2 + cL is the row vector v = (a, b, c), a
second-order one the symmetric matrix

    M = [[a, b, d],
         [b, c, e],
         [d, e, f]]

Moves act as v -> A^T v and M -> A^T M A. Second-order forms are classified
from the eigenstructure of T = G M, G = diag(1, 1, -1): T is self-adjoint for
the Lorentz form G, its G-orthonormal eigenframe F brings M to FᵀMF and F is
then written as rotL rotK1 rotL (plus a reflection) so that every reduction
comes with a replayable move word.
"""

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from dataclasses import dataclass, field
from enum import Enum
from math import (
    asinh,
    atan2,
    cos,
    cosh,
    hypot,
    inf,
    isclose,
    isfinite,
    isnan,
    pi,
    sin,
    sinh,
    sqrt,
)
from typing import Any, Final, Optional, Sequence, Union

import numpy as np
import structlog
import sympy

from hyperlab.config import Tolerances
from hyperlab.errors import (
    DegenerateFormError,
    NumericalInstabilityError,
    ReplayMismatchError,
    ZeroVectorError,
)
from hyperlab.orbits import Orbit, canonical_matrix

logger = structlog.get_logger(module="classify")

G: Final = np.diag([1.0, 1.0, -1.0])

Number = Union[int, float, sympy.Expr]


class MoveKind(str, Enum):
    ROT_K1 = "rotK1"
    ROT_K2 = "rotK2"
    ROT_L = "rotL"
    REFLECT = "reflect"
    CASIMIR_SHIFT = "casimirShift"
    SCALE = "scale"


REFLECTIONS: Final[dict[str, tuple[int, int, int]]] = {
    "R0": (-1, -1, 1),
    "R1": (1, -1, -1),
    "R2": (-1, 1, -1),
}


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    args: tuple[Any, ...]

    def __post_init__(self) -> None:
        if self.kind in (MoveKind.CASIMIR_SHIFT, MoveKind.SCALE):
            assert self.args[0] != 0, f"{self.kind.value} needs alpha1 != 0"
        if self.kind is MoveKind.REFLECT:
            assert self.args[0] in REFLECTIONS, f"unknown reflection {self.args[0]}"

    def __str__(self) -> str:
        if self.kind is MoveKind.REFLECT:
            return f"reflect({self.args[0]})"
        return f"{self.kind.value}(" + ", ".join(f"{float(a):.12g}" for a in self.args) + ")"

    def matrix(self, exact: bool = False) -> Any:
        "Matrix A of a rotation or reflection move"
        if self.kind is MoveKind.REFLECT:
            diagonal = REFLECTIONS[self.args[0]]
            return sympy.diag(*diagonal) if exact else np.diag(np.array(diagonal, float))
        angle = self.args[0]
        if exact:
            c, s = sympy.cos(angle), sympy.sin(angle)
            ch, sh = sympy.cosh(angle), sympy.sinh(angle)
            build = sympy.Matrix
        else:
            c, s = cos(float(angle)), sin(float(angle))
            ch, sh = cosh(float(angle)), sinh(float(angle))
            build = np.array  # type: ignore
        if self.kind is MoveKind.ROT_L:
            return build([[c, -s, 0], [s, c, 0], [0, 0, 1]])
        if self.kind is MoveKind.ROT_K1:
            return build([[1, 0, 0], [0, ch, sh], [0, sh, ch]])
        if self.kind is MoveKind.ROT_K2:
            return build([[ch, 0, sh], [0, 1, 0], [sh, 0, ch]])
        raise ValueError(f"{self.kind.value} is not a matrix move")


def rot_k1(angle: Number) -> Move:
    return Move(MoveKind.ROT_K1, (angle,))


def rot_k2(angle: Number) -> Move:
    return Move(MoveKind.ROT_K2, (angle,))


def rot_l(angle: Number) -> Move:
    return Move(MoveKind.ROT_L, (angle,))


def reflect(name: str) -> Move:
    return Move(MoveKind.REFLECT, (name,))


def casimir_shift(alpha1: Number, alpha2: Number) -> Move:
    return Move(MoveKind.CASIMIR_SHIFT, (alpha1, alpha2))


def scale(alpha1: Number) -> Move:
    return Move(MoveKind.SCALE, (alpha1,))


@dataclass(frozen=True)
class AutomorphismWord:
    moves: tuple[Move, ...] = ()

    def __add__(self, other: "AutomorphismWord") -> "AutomorphismWord":
        return AutomorphismWord(self.moves + other.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __str__(self) -> str:
        return " ".join(str(move) for move in self.moves) or "identity"

    def as_list(self) -> list[dict[str, Any]]:
        return [
            {
                "move": move.kind.value,
                "args": [a if isinstance(a, str) else float(a) for a in move.args],
            }
            for move in self.moves
        ]


@dataclass(frozen=True)
class FirstOrderElement:
    a: Number
    b: Number
    c: Number

    def vector(self) -> np.ndarray:
        return np.array([float(self.a), float(self.b), float(self.c)])


@dataclass(frozen=True)
class SecondOrderForm:
    a: Number
    b: Number
    c: Number
    d: Number
    e: Number
    f: Number

    @classmethod
    def from_matrix(cls, m: Any) -> "SecondOrderForm":
        return cls(m[0, 0], m[0, 1], m[1, 1], m[0, 2], m[1, 2], m[2, 2])

    @property
    def entries(self) -> tuple[Number, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, (float, np.floating)) for x in self.entries)

    def matrix(self) -> sympy.Matrix:
        a, b, c, d, e, f = (sympy.sympify(x) for x in self.entries)
        return sympy.Matrix([[a, b, d], [b, c, e], [d, e, f]])

    def array(self) -> np.ndarray:
        a, b, c, d, e, f = (float(x) for x in self.entries)
        return np.array([[a, b, d], [b, c, e], [d, e, f]])

    # cofactors of the entries of the same name
    @property
    def minor_A(self) -> Number:
        return self.c * self.f - self.e**2

    @property
    def minor_B(self) -> Number:
        return self.b * self.f - self.d * self.e

    @property
    def minor_C(self) -> Number:
        return self.a * self.f - self.d**2

    @property
    def minor_D(self) -> Number:
        return self.b * self.e - self.c * self.d

    @property
    def minor_E(self) -> Number:
        return self.a * self.e - self.b * self.d

    @property
    def minor_F(self) -> Number:
        return self.a * self.c - self.b**2


@dataclass(frozen=True)
class SecondOrderInvariants:
    i1: Number
    i2: Number
    i3: Number
    minors: dict[str, Number]

    def as_dict(self) -> dict[str, Any]:
        return {
            "I1": float(self.i1),
            "I2": float(self.i2),
            "I3": float(self.i3),
            "minors": {name: float(value) for name, value in self.minors.items()},
        }


def first_order_invariant(v: FirstOrderElement) -> Number:
    return v.a**2 + v.b**2 - v.c**2


def invariants_second_order(m: SecondOrderForm) -> SecondOrderInvariants:
    minors = {
        "A": m.minor_A,
        "B": m.minor_B,
        "C": m.minor_C,
        "D": m.minor_D,
        "E": m.minor_E,
        "F": m.minor_F,
    }
    i3 = m.a * minors["A"] - m.b * minors["B"] + m.d * minors["D"]
    return SecondOrderInvariants(
        i1=m.a + m.c - m.f,
        i2=minors["A"] + minors["C"] - minors["F"],
        i3=i3,
        minors=minors,
    )


def _move_exact(move: Move) -> bool:
    return not any(isinstance(a, (float, np.floating)) for a in move.args)


def apply_automorphism(m: SecondOrderForm, word: AutomorphismWord) -> SecondOrderForm:
    """Applies `word` move by move.

    The form stays exact (sympy) as long as the form and every move argument
    are exact, otherwise it is evaluated with numpy.
    """
    exact = m.is_exact and all(_move_exact(move) for move in word.moves)
    matrix: Any = m.matrix() if exact else m.array()
    casimir = sympy.diag(1, 1, -1) if exact else G
    for move in word.moves:
        if move.kind is MoveKind.CASIMIR_SHIFT:
            alpha1, alpha2 = move.args if exact else map(float, move.args)
            matrix = alpha1 * matrix + alpha2 * casimir
        elif move.kind is MoveKind.SCALE:
            matrix = (move.args[0] if exact else float(move.args[0])) * matrix
        else:
            a = move.matrix(exact)
            before = matrix
            matrix = a.T * matrix * a if exact else a.T @ matrix @ a
            if exact and move.kind is not MoveKind.REFLECT:
                matrix = matrix.applyfunc(sympy.simplify)
                assert (before.det() == 0) == (matrix.det() == 0)
    return SecondOrderForm.from_matrix(matrix)


def apply_first_order(v: FirstOrderElement, word: AutomorphismWord) -> np.ndarray:
    vector = v.vector()
    for move in word.moves:
        if move.kind is MoveKind.SCALE:
            vector = float(move.args[0]) * vector
        elif move.kind is MoveKind.CASIMIR_SHIFT:
            raise ValueError("casimirShift does not act on first-order elements")
        else:
            vector = move.matrix().T @ vector
    return vector


class FirstOrderClass(str, Enum):
    HO_TYPE = "HO-type"
    EQ_TYPE = "EQ-type"
    SPH_TYPE = "SPH-type"


FIRST_ORDER_TARGETS: Final[dict[FirstOrderClass, tuple[float, float, float]]] = {
    FirstOrderClass.HO_TYPE: (1.0, 0.0, 1.0),
    FirstOrderClass.EQ_TYPE: (0.0, 1.0, 0.0),
    FirstOrderClass.SPH_TYPE: (0.0, 0.0, 1.0),
}


def _with_angle(kind: MoveKind, angle: float) -> list[Move]:
    # moves with a zero angle are identities and are left out of the word
    return [] if angle == 0.0 else [Move(kind, (angle,))]


def classify_first_order(
    v: FirstOrderElement, tolerances: Tolerances = Tolerances()
) -> tuple[FirstOrderClass, AutomorphismWord]:
    vector = v.vector()
    norm = float(np.max(np.abs(vector)))
    if norm == 0.0:
        raise ZeroVectorError()
    a, b, c = vector / norm
    invariant = a * a + b * b - c * c
    if abs(invariant) <= tolerances.predicate:
        invariant = 0.0
    elif abs(invariant) <= tolerances.unstable_band:
        raise NumericalInstabilityError("a^2 + b^2 - c^2", invariant)

    moves: list[Move] = []
    if invariant == 0.0:
        kind = FirstOrderClass.HO_TYPE
        moves += _with_angle(MoveKind.ROT_L, atan2(b, a))
        if c < 0:
            moves.append(reflect("R1"))
    elif invariant > 0:
        kind = FirstOrderClass.EQ_TYPE
        theta = atan2(-a, b)
        moves += _with_angle(MoveKind.ROT_L, theta)
        rho = sqrt(a * a + b * b)
        moves += _with_angle(MoveKind.ROT_K1, float(np.arctanh(-c / rho)))
    else:
        kind = FirstOrderClass.SPH_TYPE
        moves += _with_angle(MoveKind.ROT_L, atan2(-a, b))
        rho = sqrt(a * a + b * b)
        moves += _with_angle(MoveKind.ROT_K1, float(np.arctanh(-rho / c)))

    reduced = apply_first_order(v, AutomorphismWord(tuple(moves)))
    pivot = {
        FirstOrderClass.HO_TYPE: 0,
        FirstOrderClass.EQ_TYPE: 1,
        FirstOrderClass.SPH_TYPE: 2,
    }[kind]
    if not isclose(reduced[pivot], 1.0, rel_tol=0, abs_tol=1e-15):
        moves.append(scale(1.0 / reduced[pivot]))
    word = AutomorphismWord(tuple(moves))
    logger.debug("first_order_classified", kind=kind.value, word=str(word))
    return kind, word


@dataclass(frozen=True)
class OrbitClass:
    tag: Orbit
    parameters: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"class": self.tag.value, "params": dict(self.parameters)}


@dataclass(frozen=True)
class Classification:
    orbit: OrbitClass
    word: AutomorphismWord
    # smallest real root of det(M - mu G) = 0
    shift: Optional[float]
    invariants: SecondOrderInvariants
    residual: float

    def as_dict(self) -> dict[str, Any]:
        return {
            **self.orbit.as_dict(),
            "shift": self.shift,
            "invariants": self.invariants.as_dict(),
            "word": self.word.as_list(),
            "residual": self.residual,
        }


def _g(x: np.ndarray, y: np.ndarray) -> float:
    return float(x @ G @ y)


def _kernel(matrix: np.ndarray, dimension: int = 1) -> np.ndarray:
    "Right singular vectors of the `dimension` smallest singular values"
    _, _, vh = np.linalg.svd(matrix)
    return vh[3 - dimension :].T


def _normalize(x: np.ndarray) -> np.ndarray:
    length = sqrt(abs(_g(x, x)))
    if not length > 1e-12 * float(np.linalg.norm(x)):
        raise NumericalInstabilityError("g(x, x)", length)
    return x / length


def _orthonormal_complement(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """G-orthonormal basis of the G-complement of the non-null vector `w`.

    Returns (spacelike, other), `other` is timelike if `w` is spacelike.
    """
    basis = _kernel((G @ w)[np.newaxis, :], 2)
    gram = basis.T @ G @ basis
    values, vectors = np.linalg.eigh(gram)
    first, second = (basis @ vectors[:, i] for i in (1, 0))
    return _normalize(first), _normalize(second)


def _null_plane(q: np.ndarray, f2: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    "`q` on the G-complement of `f2` in a (spacelike, timelike) basis and its pivot"
    spacelike, timelike = _orthonormal_complement(f2)
    basis = np.column_stack([spacelike, timelike])
    restricted = basis.T @ q @ basis
    return basis, restricted, int(np.argmax(np.abs(np.diag(restricted))))


def _null_plane_frame(
    q: np.ndarray, f2: np.ndarray, alpha1: float
) -> tuple[np.ndarray, np.ndarray]:
    """Frame vectors f1, f3 of the plane orthogonal to `f2`.

    `q` restricted to that plane has rank one, q(x, x) = l(x)^2 / kappa with
    the pivot column l. Of the two null vectors (1, 1) and (1, -1) the kernel
    vector n has l(n) = 0, the other one n' gives the frame

        f1 = A n' + n / 4A,  f3 = A n' - n / 4A,  A = sqrt(alpha1 kappa) / l(n')

    with q(f1, f1) = q(f1, f3) = q(f3, f3) = alpha1 and f1 - f3 in the kernel.
    """
    basis, restricted, pivot = _null_plane(q, f2)
    kappa = float(restricted[pivot, pivot])
    if not alpha1 * kappa > 0:
        raise NumericalInstabilityError("alpha1 * q on the null plane", alpha1 * kappa)
    column = restricted[:, pivot]
    n, other = sorted(
        (np.array([1.0, 1.0]), np.array([1.0, -1.0])),
        key=lambda v: abs(float(column @ v)),
    )
    level = float(column @ other)
    if level == 0.0:
        raise NumericalInstabilityError("l(n')", level)
    a = sqrt(alpha1 * kappa) / level
    f1 = basis @ (a * other + n / (4 * a))
    f3 = basis @ (a * other - n / (4 * a))
    return f1, f3


def _frame_word(frame: np.ndarray) -> list[Move]:
    "Writes a G-orthonormal frame as rotL rotK1 rotL, possibly followed by R1"
    if np.linalg.det(frame) < 0:
        frame = -frame
    moves: list[Move] = []
    tail: list[Move] = []
    if frame[2, 2] < 0:
        frame = frame @ np.diag([1.0, -1.0, -1.0])
        tail.append(reflect("R1"))
    # sinh(psi) from the spatial part, cosh(psi) near 1 loses half the digits
    psi = asinh(hypot(float(frame[0, 2]), float(frame[1, 2])))
    phi1 = atan2(-frame[0, 2], frame[1, 2]) if psi > 1e-14 else 0.0
    partial = rot_l(phi1).matrix() @ rot_k1(psi).matrix()
    rest = np.linalg.solve(partial, frame)
    phi2 = atan2(rest[1, 0], rest[0, 0])
    moves += _with_angle(MoveKind.ROT_L, phi1)
    moves += _with_angle(MoveKind.ROT_K1, psi)
    moves += _with_angle(MoveKind.ROT_L, phi2)
    return moves + tail


def _smallest_real_root(roots: Sequence[complex]) -> Optional[float]:
    real = sorted(
        (r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))),
        key=lambda r: (abs(r), r),
    )
    return real[0] if real else None


def _rank_one_ratio(m: np.ndarray) -> float:
    "Largest 2x2 minor of `m` against its squared largest entry"
    minors = invariants_second_order(SecondOrderForm.from_matrix(m)).minors
    size = float(np.max(np.abs(m)))
    return max(abs(float(v)) for v in minors.values()) / max(size**2, 1e-300)


# (orbit, params, frame, alpha1, alpha2): F^T M F = alpha1 canonical + alpha2 G
Reduced = tuple[Orbit, dict[str, float], np.ndarray, float, float]
# steps are the names of the reducing methods of `_Reduction`
Step = str


class _Reduction:
    """Frame, class and canonical-form coefficients of a normalized matrix.

    The branches follow the invariants of M shifted by the mean root of
    det(M - mu G) = 0. I2 and I3 of that form vanish for a triple root, the
    discriminant 4 I2^3 - 27 I3^2 separates a double root from three distinct
    or a complex pair, and the 2x2 minors of M shifted to the multiple root
    tell rank one (SPH, EQ, HO) from a Jordan block (EP, HP, SCP). A predicate
    inside the unstable band keeps every matching reduction as a candidate.
    """

    def __init__(self, m: np.ndarray, tolerances: Tolerances) -> None:
        self.m = m
        self.tol = tolerances
        self.t = G @ m
        self.mean = float(np.trace(self.t)) / 3
        self.t0 = self.t - self.mean * np.eye(3)
        centered = invariants_second_order(SecondOrderForm.from_matrix(m - self.mean * G))
        self.i2 = float(centered.i2)
        self.i3 = float(centered.i3)
        self.size = max(abs(self.i2), abs(self.i3))
        disc = 4 * self.i2**3 - 27 * self.i3**2
        self.relative = disc / max(4 * abs(self.i2) ** 3 + 27 * self.i3**2, 1e-300)
        self.ambiguous: Optional[tuple[str, float]] = None

    @property
    def degenerate(self) -> bool:
        return float(np.max(np.abs(self.t0))) <= self.tol.predicate

    def candidates(self) -> list[Step]:
        band, wide = self.tol.predicate, self.tol.unstable_band
        if self.size <= band:
            return self._triple()
        simple = "_distinct" if self.relative > 0 else "_complex_pair"
        if abs(self.relative) <= band:
            found = self._double()
        elif abs(self.relative) <= wide:
            self.ambiguous = ("cubic discriminant", self.relative)
            found = self._double() + [simple]
        else:
            found = [simple]
        if self.size <= wide:
            self.ambiguous = ("I2, I3 after the mean shift", self.size)
            found = self._triple() + found
        return found

    def _by_rank(self, shifted: np.ndarray, rank_one: Step, jordan: Step) -> list[Step]:
        ratio = _rank_one_ratio(shifted)
        if ratio <= self.tol.rank:
            return [rank_one]
        if ratio <= self.tol.unstable_band:
            self.ambiguous = ("2x2 minors", ratio)
            return [rank_one, jordan]
        return [jordan]

    def _triple(self) -> list[Step]:
        return self._by_rank(
            self.m - self.mean * G, "_triple_rank_one", "_triple_jordan"
        )

    def _double(self) -> list[Step]:
        if self.i2 == 0.0:
            return []
        mu_d, _ = self._double_root()
        return self._by_rank(
            self.m - mu_d * G, "_double_rank_one", "_double_jordan"
        )

    def _double_root(self) -> tuple[float, float]:
        "(double, simple) root of det(M - mu G) = 0"
        if self.i2 == 0.0:
            raise NumericalInstabilityError("I2 after the mean shift", self.i2)
        r = 1.5 * self.i3 / self.i2
        return self.mean + r, self.mean - 2 * r

    def _eigenvector(self, value: float) -> np.ndarray:
        return _kernel(self.t - value * np.eye(3))[:, 0]

    def _triple_rank_one(self) -> Reduced:
        # square of a null first-order element
        mu = self.mean
        q = self.m - mu * G
        kernel = _kernel(q, 2)
        _, vectors = np.linalg.eigh(kernel.T @ G @ kernel)
        f2 = _normalize(kernel @ vectors[:, 1])
        _, restricted, pivot = _null_plane(q, f2)
        kappa_sign = 1.0 if restricted[pivot, pivot] > 0 else -1.0
        f1, f3 = _null_plane_frame(q, f2, kappa_sign)
        return Orbit.HO, {}, np.column_stack([f1, f2, f3]), kappa_sign, mu

    def _triple_jordan(self) -> Reduced:
        n = self.t0
        n2 = n @ n
        candidates = [np.eye(3)[i] for i in range(3)] + [np.ones(3)]
        x = max(candidates, key=lambda v: _g(v, n2 @ v))
        kappa = _g(x, n2 @ x)
        if not kappa > 0:
            raise NumericalInstabilityError("g(x, N^2 x)", kappa)
        y = x / sqrt(kappa)
        ny = n @ y
        beta = -_g(y, ny) / 2
        delta = (1 - _g(y, y) - 2 * beta * _g(y, ny) - beta**2) / 2
        f1 = y + beta * ny + delta * (n2 @ y)
        f2 = n @ f1
        f3 = f1 - n2 @ f1
        return Orbit.SCP, {}, np.column_stack([f1, f2, f3]), 1.0, self.mean

    def _double_rank_one(self) -> Reduced:
        mu_d, mu_s = self._double_root()
        w = _normalize(self._eigenvector(mu_s))
        if _g(w, w) < 0:
            f1, f2 = _orthonormal_complement(w)
            return Orbit.SPH, {}, np.column_stack([f1, f2, w]), mu_d - mu_s, mu_d
        f1, f3 = _orthonormal_complement(w)
        return Orbit.EQ, {}, np.column_stack([f1, w, f3]), mu_s - mu_d, mu_d

    def _double_jordan(self) -> Reduced:
        mu_d, mu_s = self._double_root()
        f2 = _normalize(self._eigenvector(mu_s))
        q = self.m - mu_d * G
        _, restricted, pivot = _null_plane(q, f2)
        kappa = float(restricted[pivot, pivot])
        if np.sign(mu_s - mu_d) == np.sign(kappa):
            orbit, alpha1 = Orbit.EP, mu_s - mu_d
        else:
            orbit, alpha1 = Orbit.HP, mu_d - mu_s
        f1, f3 = _null_plane_frame(q, f2, alpha1)
        return orbit, {"gamma": 1.0}, np.column_stack([f1, f2, f3]), alpha1, mu_d

    def _distinct(self) -> Reduced:
        values = np.sort(np.linalg.eigvals(self.t).real)
        vectors = [_normalize(self._eigenvector(v)) for v in values]
        kinds = [_g(v, v) for v in vectors]
        time_index = int(np.argmin(kinds))
        mu0 = values[time_index]
        f3 = vectors[time_index]
        space = [(values[i], vectors[i]) for i in range(3) if i != time_index]
        low, high = space
        if low[0] < mu0 < high[0]:
            (mu_p, fp), (mu_q, fq) = low, high
            k2 = (mu0 - mu_p) / (mu_q - mu_p)
            if k2 > 0.5:
                (mu_p, fp), (mu_q, fq) = (mu_q, fq), (mu_p, fp)
                k2 = 1 - k2
            frame = np.column_stack([fp, fq, f3])
            return Orbit.H, {"k2": float(k2)}, frame, mu_q - mu_p, mu_p
        # the spacelike eigenvalue next to mu0 is the one of K1
        near, far = sorted(space, key=lambda item: abs(item[0] - mu0))
        mu_a, mu_b = near[0], far[0]
        s = (mu_b - mu_a) / (mu_a - mu0)
        frame = np.column_stack([near[1], far[1], f3])
        return Orbit.E, {"s": float(s)}, frame, mu_a - mu0, mu_a

    def _complex_pair(self) -> Reduced:
        values = np.linalg.eigvals(self.t)
        real = float(values[np.argmin(np.abs(values.imag))].real)
        f2 = _normalize(self._eigenvector(real))
        spacelike, timelike = _orthonormal_complement(f2)
        p = float(spacelike @ self.m @ spacelike)
        q = float(spacelike @ self.m @ timelike)
        r = float(timelike @ self.m @ timelike)
        if q == 0.0:
            raise NumericalInstabilityError("{K1, L} coefficient", q)
        psi = 0.5 * float(np.arctanh(-(p + r) / (2 * q)))
        f1 = cosh(psi) * spacelike + sinh(psi) * timelike
        f3 = sinh(psi) * spacelike + cosh(psi) * timelike
        alpha2 = float(f1 @ self.m @ f1)
        alpha1 = float(f1 @ self.m @ f3)
        c = (real - alpha2) / alpha1
        if c < 0:
            f3 = -f3
            alpha1, c = -alpha1, -c
        return Orbit.SH, {"c": c}, np.column_stack([f1, f2, f3]), alpha1, alpha2


def _canonical_array(orbit: Orbit, params: dict[str, float]) -> np.ndarray:
    return np.array(canonical_matrix(orbit, params).evalf(), dtype=float)


@dataclass(frozen=True)
class _Attempt:
    orbit: Orbit
    params: dict[str, float]
    word: AutomorphismWord
    residual: float


def _replay_residual(
    matrix: np.ndarray, word: AutomorphismWord, orbit: Orbit, params: dict[str, float]
) -> float:
    replayed = apply_automorphism(SecondOrderForm.from_matrix(matrix), word).array()
    canonical = _canonical_array(orbit, params)
    return float(np.max(np.abs(replayed - canonical))) / max(
        1.0, float(np.max(np.abs(canonical)))
    )


def _attempt(
    reduction: _Reduction, step: Step, matrix: np.ndarray, norm: float
) -> _Attempt:
    orbit, params, frame, alpha1, alpha2 = getattr(reduction, step)()
    if not (isfinite(alpha1) and alpha1 != 0):
        raise NumericalInstabilityError("alpha1", alpha1)
    moves = _frame_word(frame)
    moves.append(casimir_shift(1.0 / (alpha1 * norm), -alpha2 / alpha1))
    word = AutomorphismWord(tuple(moves))
    return _Attempt(orbit, params, word, _replay_residual(matrix, word, orbit, params))


def _refined(
    attempt: _Attempt, step: Step, matrix: np.ndarray, tolerances: Tolerances
) -> _Attempt:
    "Reduces the replayed matrix once more with the same step and joins the words"
    replayed = apply_automorphism(SecondOrderForm.from_matrix(matrix), attempt.word).array()
    norm = float(np.max(np.abs(replayed)))
    again = _Reduction(replayed / norm, tolerances)
    second = _attempt(again, step, replayed, norm)
    if second.orbit is not attempt.orbit:
        return attempt
    word = attempt.word + second.word
    residual = _replay_residual(matrix, word, second.orbit, second.params)
    return _Attempt(second.orbit, second.params, word, residual)


_REJECTED = (NumericalInstabilityError, ArithmeticError, ValueError, np.linalg.LinAlgError)


def classify_second_order(
    m: SecondOrderForm, tolerances: Tolerances = Tolerances()
) -> Classification:
    """Reduces `m` to one of the nine canonical operators.

    Raises `DegenerateFormError` if `m` is a multiple of the Casimir matrix,
    `NumericalInstabilityError` if a predicate inside the unstable band leaves
    no or more than one reduction that replays, and `ReplayMismatchError` if
    the only reduction does not replay.
    """
    log = logger.bind(form=[float(x) for x in m.entries])
    matrix = m.array()
    norm = float(np.max(np.abs(matrix)))
    if norm == 0.0:
        raise DegenerateFormError(matrix)
    reduction = _Reduction(matrix / norm, tolerances)
    if reduction.degenerate:
        raise DegenerateFormError(matrix)

    steps = reduction.candidates()
    accepted: list[_Attempt] = []
    residuals: list[float] = []
    for step in steps:
        try:
            attempt = _attempt(reduction, step, matrix, norm)
            if not attempt.residual <= tolerances.replay:
                attempt = _refined(attempt, step, matrix, tolerances)
        except _REJECTED as error:
            log.debug("reduction_rejected", step=step, error=str(error))
            continue
        if attempt.residual <= tolerances.replay:
            accepted.append(attempt)
        else:
            log.debug("reduction_rejected", step=step, residual=attempt.residual)
            residuals.append(attempt.residual)

    if len(accepted) != 1:
        if reduction.ambiguous is not None:
            raise NumericalInstabilityError(*reduction.ambiguous)
        residual = min((r for r in residuals if not isnan(r)), default=inf)
        log.warning("replay_mismatch", residual=residual)
        raise ReplayMismatchError(residual)
    [found] = accepted

    roots = np.linalg.eigvals(G @ matrix)
    result = Classification(
        orbit=OrbitClass(found.orbit, found.params),
        word=found.word,
        shift=_smallest_real_root(roots),
        invariants=invariants_second_order(m),
        residual=found.residual,
    )
    log.debug("second_order_classified", orbit=found.orbit.value, params=found.params)
    return result


def random_word(rng: np.random.Generator, moves: int = 5) -> AutomorphismWord:
    "Random rotations and reflections with boosts bounded by one"
    result: list[Move] = []
    for _ in range(moves):
        choice = rng.integers(4)
        if choice == 0:
            result.append(rot_k1(float(rng.uniform(-1, 1))))
        elif choice == 1:
            result.append(rot_k2(float(rng.uniform(-1, 1))))
        elif choice == 2:
            result.append(rot_l(float(rng.uniform(-pi, pi))))
        else:
            result.append(reflect(sorted(REFLECTIONS)[int(rng.integers(3))]))
    alpha1 = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))
    result.append(casimir_shift(alpha1, float(rng.uniform(-1, 1))))
    return AutomorphismWord(tuple(result))


def random_orbit_sample(
    orbit: Orbit, seed: int, params: dict[str, Any] = {}
) -> SecondOrderForm:
    canonical = SecondOrderForm.from_matrix(
        np.array(canonical_matrix(orbit, params).evalf(), dtype=float)
    )
    return apply_automorphism(canonical, random_word(np.random.default_rng(seed)))
