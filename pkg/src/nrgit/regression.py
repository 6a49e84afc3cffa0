"""Golden fixtures: every worked example with a known answer, as named checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import borel as B
from . import graded as G
from . import quiver as Qv
from . import torus as T
from .exact import AmMatrix, QMatrix, TruncPoly, am_matrix_embed, fmt


@dataclass(frozen=True)
class Golden:
    name: str
    anchor: str
    check: Callable[[], tuple[bool, str]]


def _plane_example() -> tuple[bool, str]:
    rep = T.TorusRep.of([[1, 0], [0, 1]])
    bad = [(x, y) for x in range(-2, 3) for y in range(-2, 3)
           if T.is_rho_ss(rep, (x, y), (1, 1)) != (x * y != 0)]
    return not bad, f"mismatches: {bad}" if bad else "25/25 grid points agree with xy != 0"


def _halic() -> tuple[bool, str]:
    rep = T.TorusRep.of([[1, 0], [0, 1]])
    d = T.halic_min_degree(rep, (1, 1), (1, 1))
    return d == 2, f"halic degree {d}"


def _torus_cli_example() -> tuple[bool, str]:
    rep = T.TorusRep.of([[1, 0], [0, 1]])
    got = (T.is_rho_ss(rep, (1, 1), (1, 1)), T.is_rho_stable(rep, (1, 1), (1, 1)),
           T.halic_min_degree(rep, (1, 1), (1, 1)))
    return got == (True, True, 2), f"(rho_ss, rho_stable, halic_d) = {got}"


def _gradings() -> tuple[bool, str]:
    c = G.grading_summary(B.conjugation_graded_rep())
    lm = G.grading_summary(B.leftmult_graded_rep())
    got = ((c.omega_min, c.omega_next), (lm.omega_min, lm.omega_next))
    return got == ((-2, 0), (-1, 1)), f"(omega_min, omega_next) = {got}"


def _table_one() -> tuple[bool, str]:
    rng = random.Random("golden:table-one")
    fails = 0
    for _ in range(20):
        M = B.Mat2(*(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)))
        g = B.BorelElem(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)),
                        Fraction(rng.randint(-3, 3)))
        C, L = B.conj_act(g, M), B.left_act(g, M)
        if B.conj_ss(M) != (M.c != 0) or B.leftmult_ss(M) != (M.c != 0 or M.d != 0):
            fails += 1
        if B.conj_ss(M) and (B.conj_quotient(C) != B.conj_quotient(M)):
            fails += 1
        if B.leftmult_ss(M) and B.leftmult_quotient(L) != B.leftmult_quotient(M):
            fails += 1
    return fails == 0, f"{fails} failures"


def _equality() -> tuple[bool, str]:
    reps = [B.conjugation_graded_rep(), B.leftmult_graded_rep()]
    got = [(G.equality_condition(r, -1), G.equality_condition(r, 0)) for r in reps]
    return got == [(True, False)] * 2, f"(rho=-1, rho=0) = {got}"


def _worked_quotient() -> tuple[bool, str]:
    a = Qv.worked_example_quotient(Qv.worked_example_rep(1, 0, 1, 0))
    b = Qv.worked_example_quotient(Qv.worked_example_rep(0, 1, 1, 0))
    shown = [tuple(fmt(x) for x in v) for v in (a, b)]
    return (a, b) == ((1, 0), (0, 1)), f"q values {shown}"


def _worked_membership() -> tuple[bool, str]:
    Q = Qv.worked_example_quiver()
    rho = Qv.StabilityParam.on(Q, [1, -1])
    bad = []
    for vals in itertools.product([-1, 0, 1], repeat=4):
        Phi = Qv.worked_example_rep(*vals)
        if Qv.qss_membership(Phi, rho) != (vals[2] != 0):
            bad.append(vals)
    return not bad, f"mismatches {bad}" if bad else "81/81 agree with alpha2 != 0"


def _rudakov_gap() -> tuple[bool, str]:
    Q = Qv.worked_example_quiver()
    rho = Qv.StabilityParam.on(Q, [1, -1])
    Phi = Qv.worked_example_rep(1, 0, 0, 1)
    got = (Qv.rudakov_stable_toric(Phi, rho), Qv.nrgit_stable(Phi, rho))
    return got == (True, False), f"(rudakov, nrgit) = {got}"


def _generic() -> tuple[bool, str]:
    Q2 = Qv.worked_example_quiver()
    Q3 = Qv.Quiver.of(["1", "2", "3"], [])
    got = (Qv.is_generic(Qv.StabilityParam.on(Q2, [1, -1]), Q2),
           Qv.is_generic(Qv.StabilityParam.on(Q3, [1, 0, -1]), Q3))
    return got == (True, False), f"genericity {got}"


def _aut_dims() -> tuple[bool, str]:
    Q = Qv.worked_example_quiver()
    z = Qv.aut_stab_lie(Qv.zero_rep(Q, 1))[0]
    p = Qv.aut_stab_lie(Qv.extended_truncation(Qv.worked_example_rep(1, 0, 1, 0)))[0]
    return (z, p) == (4, 2), f"stabilizer dimensions {z}, {p}"


def _embedding() -> tuple[bool, str]:
    E = am_matrix_embed(AmMatrix.scalar(TruncPoly([1, 2, 3], 2), 1))
    want = QMatrix([[1, 2, 3], [0, 1, 2], [0, 0, 1]])
    return E == want, "block embedding of 1+2e+3e^2"


def _nilpotent() -> tuple[bool, str]:
    got = (Qv.in_null_cone_quiver(Qv.worked_example_rep(1, 0, 1, 0)),
           Qv.in_null_cone_quiver(Qv.worked_example_rep(1, 0, 0, 0)))
    return got == (False, True), f"null cone {got}"


GOLDEN: tuple[Golden, ...] = (
    Golden("plane-rho-ss-locus", "torus weight-cone criterion", _plane_example),
    Golden("halic-degree", "minimal twisting degree", _halic),
    Golden("torus-check-example", "torus weight-cone criterion", _torus_cli_example),
    Golden("borel-gradings", "graded unipotent minimal weights", _gradings),
    Golden("table-one-quotients", "Borel quotient maps", _table_one),
    Golden("equality-criterion", "HM equality criterion", _equality),
    Golden("worked-quiver-quotient", "worked quiver quotient map", _worked_quotient),
    Golden("worked-quiver-membership", "quiver moduli membership", _worked_membership),
    Golden("rudakov-strictly-larger", "Rudakov comparison", _rudakov_gap),
    Golden("genericity", "generic stability parameter", _generic),
    Golden("stabilizer-dimensions", "automorphism Lie algebra", _aut_dims),
    Golden("block-embedding", "A_m block embedding", _embedding),
    Golden("nilpotency", "quiver null cone", _nilpotent),
)


def run_all() -> list[tuple[Golden, bool, str]]:
    out = []
    for g in GOLDEN:
        try:
            ok, detail = g.check()
        except Exception as exc:  # a crashing fixture is a failing fixture
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((g, ok, detail))
    return out
