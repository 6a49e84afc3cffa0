"""The Borel subgroup of SL_2 acting on 2x2 matrices.

``B = {[[t, u], [0, 1/t]]}`` is graded by ``diag(t, 1/t)`` and acts on
``Mat_2`` by conjugation and by left multiplication. Both actions have
closed-form semistable loci, quotient maps and unipotent orbit tests, which
makes them golden fixtures for :mod:`nrgit.graded`.

Coordinates of a matrix ``[[a, b], [c, d]]`` are ordered ``(a, b, c, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .exact import q
from .graded import V_GE0, V_LE0, V_MIN, GradedRep, OrbitOracle


@dataclass(frozen=True)
class Mat2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, q(getattr(self, name)))

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def from_coords(cls, v: Sequence) -> "Mat2":
        return cls(*v)

    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c


E11 = Mat2(1, 0, 0, 0)
E12 = Mat2(0, 1, 0, 0)
E21 = Mat2(0, 0, 1, 0)
E22 = Mat2(0, 0, 0, 1)
ZERO = Mat2(0, 0, 0, 0)
IDENTITY = Mat2(1, 0, 0, 1)


@dataclass(frozen=True)
class BorelElem:
    t: Fraction
    u: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", q(self.t))
        object.__setattr__(self, "u", q(self.u))
        if self.t == 0:
            raise ValueError("t must be nonzero")

    def matrix(self) -> Mat2:
        return Mat2(self.t, self.u, 0, 1 / self.t)

    def inverse(self) -> "BorelElem":
        # [[t,u],[0,1/t]]^-1 = [[1/t,-u],[0,t]]
        return BorelElem(1 / self.t, -self.u)

    def __mul__(self, o: "BorelElem") -> "BorelElem":
        m = self.matrix() @ o.matrix()
        return BorelElem(m.a, m.b)


def conj_act(g: BorelElem, M: Mat2) -> Mat2:
    """``g M g^-1`` in closed form, with ``w = u / t``."""
    t2, w = g.t * g.t, g.u / g.t
    wc = w * M.c
    return Mat2(M.a + wc, t2 * (M.b + w * (M.d - M.a) - w * wc), M.c / t2, M.d - wc)


def left_act(g: BorelElem, M: Mat2) -> Mat2:
    t, u = g.t, g.u
    return Mat2(t * M.a + u * M.c, t * M.b + u * M.d, M.c / t, M.d / t)


# -- conjugation --------------------------------------------------------------


def conj_ss(M: Mat2) -> bool:
    return M.c != 0


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise ValueError(f"matrix is not {what}-semistable")


def conj_quotient(M: Mat2) -> tuple[Fraction, Fraction]:
    _require(conj_ss(M), "conjugation")
    return (M.trace, M.det)


def conj_U_quotient(M: Mat2) -> tuple[Fraction, Fraction, Fraction]:
    _require(conj_ss(M), "conjugation")
    return (M.c, M.trace, M.det)


def conj_U_vmin(M: Mat2) -> bool:
    """``M in U.V_min``: ``M = [[uc, -u^2 c], [c, -uc]]`` for some ``u``."""
    if M.c == 0:
        return M == ZERO
    u = M.a / M.c
    return M.d == -u * M.c and M.b == -u * u * M.c


def conj_U_vle0(M: Mat2) -> bool:
    """``M in U.V_{<=0}``: some ``u`` solves ``c u^2 + (a - d) u - b = 0`` over the algebraic closure."""
    if M.c != 0:
        return True
    return M.a != M.d or M.b == 0


def conj_U_vge0(M: Mat2) -> bool:
    return M.c == 0


@dataclass(frozen=True)
class ConjugationWitness:
    """``g = [[t, u], [0, 1/t]]`` with ``t**2 = t_squared`` and ``u = t * u_over_t``.

    When ``t_squared`` is not a rational square, ``t`` lives in a quadratic
    extension and ``t`` is None; the conjugate depends on ``t`` only through
    ``t_squared`` so the certificate is still checked exactly.
    """

    t_squared: Fraction
    u_over_t: Fraction
    t: Fraction | None

    def element(self) -> BorelElem | None:
        if self.t is None:
            return None
        return BorelElem(self.t, self.t * self.u_over_t)

    def apply(self, M: Mat2) -> Mat2:
        s, w = self.t_squared, self.u_over_t
        return Mat2(
            M.a + w * M.c,
            s * (M.b + w * (M.d - M.a) - w * w * M.c),
            M.c / s,
            M.d - w * M.c,
        )


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = q(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def conj_orbit_witness(M: Mat2, M2: Mat2) -> ConjugationWitness | None:
    """Solve ``g M g^-1 = M2`` over the algebraic closure for semistable M, M2."""
    _require(conj_ss(M) and conj_ss(M2), "conjugation")
    if conj_quotient(M) != conj_quotient(M2):
        return None
    s = M.c / M2.c
    w = (M2.a - M.a) / M.c
    wit = ConjugationWitness(s, w, rational_sqrt(s))
    if wit.apply(M) != M2:
        return None
    return wit


# -- left multiplication ------------------------------------------------------


def leftmult_ss(M: Mat2) -> bool:
    return M.c != 0 or M.d != 0


@dataclass(frozen=True)
class ProjPoint1:
    """``[x : y]`` normalized so the last nonzero coordinate is 1."""

    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "ProjPoint1":
        x, y = q(x), q(y)
        if y != 0:
            return cls(x / y, Fraction(1))
        if x != 0:
            return cls(Fraction(1), Fraction(0))
        raise ValueError("[0:0] is not a projective point")


def leftmult_quotient(M: Mat2) -> tuple[Fraction, ProjPoint1]:
    _require(leftmult_ss(M), "left-multiplication")
    return (M.det, ProjPoint1.of(M.c, M.d))


def leftmult_U_quotient(M: Mat2) -> tuple[Fraction, Fraction, Fraction]:
    _require(leftmult_ss(M), "left-multiplication")
    return (M.c, M.d, M.det)


def leftmult_U_vmin(M: Mat2) -> bool:
    """``M in U.V_min``: the top row is ``u`` times the bottom row for some ``u``."""
    if M.c == 0 and M.d == 0:
        return M.a == 0 and M.b == 0
    return M.a * M.d - M.b * M.c == 0


def leftmult_U_vge0(M: Mat2) -> bool:
    return M.c == 0 and M.d == 0


def leftmult_orbit_witness(M: Mat2, M2: Mat2) -> BorelElem | None:
    """Solve ``g M = M2`` for semistable M, M2 with equal quotient values."""
    _require(leftmult_ss(M) and leftmult_ss(M2), "left-multiplication")
    if leftmult_quotient(M) != leftmult_quotient(M2):
        return None
    # bottom row scales by 1/t
    t = M.c / M2.c if M2.c != 0 else M.d / M2.d
    # top row: t*(a,b) + u*(c,d) = (a2,b2)
    if M.c != 0:
        u = (M2.a - t * M.a) / M.c
    else:
        u = (M2.b - t * M.b) / M.d
    g = BorelElem(t, u)
    return g if left_act(g, M) == M2 else None


# -- graded representations ---------------------------------------------------


def _coords_mat(v) -> Mat2:
    return Mat2.from_coords(v)


def conjugation_graded_rep() -> GradedRep:
    """Weights ``(0, 2, -2, 0)`` on ``(a, b, c, d)``; Lie U spanned by ``ad(E12)``.

    ``[E12, M] = [[c, d - a], [0, -c]]``.
    """
    N = [
        [0, 0, 1, 0],
        [-1, 0, 0, 1],
        [0, 0, 0, 0],
        [0, 0, -1, 0],
    ]
    return GradedRep((0, 2, -2, 0), (N,))


def leftmult_graded_rep() -> GradedRep:
    """Weights ``(1, 1, -1, -1)``; ``E12 M = [[c, d], [0, 0]]``."""
    N = [
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ]
    return GradedRep((1, 1, -1, -1), (N,))


def conjugation_oracle() -> OrbitOracle:
    return OrbitOracle(
        {
            V_MIN: lambda v: conj_U_vmin(_coords_mat(v)),
            V_LE0: lambda v: conj_U_vle0(_coords_mat(v)),
            V_GE0: lambda v: conj_U_vge0(_coords_mat(v)),
        }
    )


def leftmult_oracle() -> OrbitOracle:
    # V_min is the bottom row, which is also V_{<=0}
    return OrbitOracle(
        {
            V_MIN: lambda v: leftmult_U_vmin(_coords_mat(v)),
            V_LE0: lambda v: leftmult_U_vmin(_coords_mat(v)),
            V_GE0: lambda v: leftmult_U_vge0(_coords_mat(v)),
        }
    )
