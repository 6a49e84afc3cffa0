"""Acceptance criteria 1-11, each exact and under a wall-clock limit.

Run under pytest (a summary line per criterion is printed at the end) or
directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from nrgit import borel as B  # noqa: E402
from nrgit import graded as G  # noqa: E402
from nrgit import quiver as Qv  # noqa: E402
from nrgit import torus as T  # noqa: E402
from nrgit.exact import AmMatrix, TruncPoly  # noqa: E402
from nrgit.polyhedra import in_convex_hull  # noqa: E402

RESULTS: list[str] = []

LIMITS = {1: 1, 2: 1, 3: 5, 4: 10, 5: 2, 6: 30, 7: 5, 8: 60, 9: 30, 10: 30, 11: 5}


def _record(n, ok, seconds, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {seconds:6.2f} s / {LIMITS[n]} s  {detail}"
    RESULTS.append(line)
    print(line)


def timed(n):
    def wrap(fn):
        def test():
            start = time.perf_counter()
            try:
                detail = fn()
            except BaseException:
                _record(n, False, time.perf_counter() - start, "assertion failed")
                raise
            elapsed = time.perf_counter() - start
            ok = elapsed < LIMITS[n]
            _record(n, ok, elapsed, detail or "")
            assert ok, f"criterion {n} took {elapsed:.2f} s, limit {LIMITS[n]} s"
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test
    return wrap


def rq(rng, num=5, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_unit(rng):
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))


def rand_borel(rng):
    return B.BorelElem(rand_unit(rng), rq(rng))


# -- shared enumerations for the quiver criteria -------------------------------------

_BASE_RHOS = {
    1: [(0,)],
    2: [(1, -1)],
    3: [(1, 2, -3), (1, 1, -2), (-1, -1, 2)],
    4: [(1, 2, 4, -7), (1, 1, 1, -3), (-1, -1, -1, 3)],
}
GENERIC_RHOS = {n: sorted({p for b in bs for p in itertools.permutations(b)}) for n, bs in _BASE_RHOS.items()}


def pattern_instances(m):
    """Every quiver with <= 4 vertices and <= 6 arrows, all arrows at coefficient 1 in layer 0."""
    for Q in Qv.quivers_up_to_iso(4, 6):
        yield Qv.toric_rep(Q, m, {a.id: [1] + [0] * m for a in Q.arrows})


def closed_walk_exists(phi):
    """Trace along cycles: with positive weights, tr(A^k) > 0 iff a closed walk of length k exists."""
    vs = phi.quiver.vertices
    n = len(vs)
    A = [[0] * n for _ in range(n)]
    for a in phi.quiver.arrows:
        if phi.mats[a.id].layers[0][0, 0] != 0:
            A[vs.index(a.src)][vs.index(a.tgt)] += 1
    P = [row[:] for row in A]
    for _ in range(n):
        if any(P[i][i] for i in range(n)):
            return True
        P = [[sum(P[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return False


def torus_instances():
    rng = random.Random("acceptance:torus")
    for _ in range(300):
        r, n = rng.randint(1, 3), rng.randint(1, 5)
        ws = [tuple(rng.randint(-2, 2) for _ in range(r)) for _ in range(n)]
        v = [rng.choice([0, 1, -1, 2, Fraction(1, 2)]) for _ in range(n)]
        rho = tuple(rng.randint(-2, 2) for _ in range(r))
        yield T.TorusRep.of(ws, r), v, rho


# -- criteria --------------------------------------------------------------------------


@timed(1)
def test_c01_plane_semistable_locus():
    rep = T.TorusRep.of([[1, 0], [0, 1]])
    for x, y in itertools.product(range(-2, 3), repeat=2):
        assert T.is_rho_ss(rep, (x, y), (1, 1)) == (x * y != 0), (x, y)
    return "25/25 grid points"


@timed(2)
def test_c02_halic_degree():
    rep = T.TorusRep.of([[1, 0], [0, 1]])
    assert T.halic_min_degree(rep, (1, 1), (1, 1)) == 2
    hull = T.support_weights(rep, (1, 1)) + [(0, 0)]
    assert not in_convex_hull((1, 1), hull)
    assert in_convex_hull((Fraction(1, 2), Fraction(1, 2)), hull)
    return "d = 2; d = 1 fails the hull test"


@timed(3)
def test_c03_table_one():
    rng = random.Random("acceptance:3")
    mats = [B.Mat2(*(rq(rng) if rng.random() > 0.2 else 0 for _ in range(4))) for _ in range(500)]
    elems = [rand_borel(rng) for _ in range(100)]
    for M in mats:
        assert B.conj_ss(M) == (M.c != 0)
        assert B.leftmult_ss(M) == (M.c != 0 or M.d != 0)
    conj = [M for M in mats if B.conj_ss(M)]
    left = [M for M in mats if B.leftmult_ss(M)]
    for g in elems:
        for M in conj[:100]:
            C = B.conj_act(g, M)
            assert B.conj_quotient(C) == B.conj_quotient(M)
        for M in left[:100]:
            L = B.left_act(g, M)
            assert B.leftmult_quotient(L) == B.leftmult_quotient(M)
        # the U-quotients are invariant under the unipotent part only
        u = B.BorelElem(1, g.u)
        for M in conj[100:200]:
            assert B.conj_U_quotient(B.conj_act(u, M)) == B.conj_U_quotient(M)
        for M in left[100:200]:
            assert B.leftmult_U_quotient(B.left_act(u, M)) == B.leftmult_U_quotient(M)
    return f"500 matrices, 100 Borel elements, {len(conj)} / {len(left)} semistable"


@timed(4)
def test_c04_orbit_separation():
    rng = random.Random("acceptance:4")
    irrational = 0
    for _ in range(100):
        M = B.Mat2(rq(rng), rq(rng), rand_unit(rng), rq(rng))
        tr, det = M.trace, M.det
        c2, a2 = rand_unit(rng), rq(rng)
        d2 = tr - a2
        M2 = B.Mat2(a2, (a2 * d2 - det) / c2, c2, d2)
        assert B.conj_quotient(M2) == (tr, det)
        w = B.conj_orbit_witness(M, M2)
        assert w is not None and w.apply(M) == M2
        g = w.element()
        if g is None:
            irrational += 1
            assert B.rational_sqrt(w.t_squared) is None
        else:
            assert B.conj_act(g, M) == M2
    return f"100 pairs solved, {irrational} need a quadratic extension"


@timed(5)
def test_c05_graded_trichotomy():
    rng = random.Random("acceptance:5")
    crep, lrep = B.conjugation_graded_rep(), B.leftmult_graded_rep()
    cor, lor = B.conjugation_oracle(), B.leftmult_oracle()
    for _ in range(500):
        M = B.Mat2(*(rq(rng) if rng.random() > 0.3 else 0 for _ in range(4)))
        cv = G.uhat_semistable(crep, M.coords(), cor).status
        lv = G.uhat_semistable(lrep, M.coords(), lor).status
        assert (cv == G.SEMISTABLE) == B.conj_ss(M)
        assert (lv == G.SEMISTABLE) == B.leftmult_ss(M)
    c, lm = G.grading_summary(crep), G.grading_summary(lrep)
    assert (c.omega_min, c.omega_next) == (-2, 0)
    assert (lm.omega_min, lm.omega_next) == (-1, 1)
    return "500 points; summaries (-2, 0) and (-1, 1)"


@timed(6)
def test_c06_hm_oracle():
    stable = 0
    for rep, v, rho in torus_instances():
        ss = T.is_rho_ss(rep, v, rho)
        assert ss == T.hm_brute_oracle(rep, v, rho, 4), (rep.weights, v, rho)
        if T.is_rho_stable(rep, v, rho):
            stable += 1
            assert ss
    return f"300 instances, {stable} stable"


@timed(7)
def test_c07_worked_quiver():
    Q = Qv.worked_example_quiver()
    rho = Qv.StabilityParam.on(Q, [1, -1])
    for vals in itertools.product((-1, 0, 1), repeat=4):
        assert Qv.qss_membership(Qv.worked_example_rep(*vals), rho) == (vals[2] != 0)
    rng = random.Random("acceptance:7")
    Phi = Qv.worked_example_rep(rq(rng), rq(rng), rand_unit(rng), rq(rng))
    base = Qv.worked_example_quotient(Phi)
    for _ in range(100):
        g = Qv.GroupElemMult({v: AmMatrix.scalar(TruncPoly([rand_unit(rng), rq(rng)], 1), 1)
                              for v in Q.vertices})
        assert Qv.worked_example_quotient(Qv.act(g, Phi)) == base
    # an independently drawn point with the same quotient values
    q0, q1 = base
    al2 = rand_unit(rng)
    al1 = q0 / al2
    be1 = rq(rng)
    be2 = (q1 - al2 * be1) / al1 if al1 != 0 else rq(rng)
    if al1 == 0:
        be1 = q1 / al2
    Psi = Qv.worked_example_rep(al1, be1, al2, be2)
    assert Qv.worked_example_quotient(Psi) == base
    h = Qv.worked_example_witness(Phi, Psi)
    assert h is not None and Qv.act(h, Phi) == Psi
    return "81/81 grid points, 100 group elements, witness solved"


@timed(8)
def test_c08_toric_cross_validation():
    count = ss_count = 0
    for m in (1, 2):
        for Phi in pattern_instances(m):
            conn = Qv.is_connected(Qv.support_quiver(Phi))
            assert Qv.nontrivial_aut_reductive(Phi) == conn
            phi = Qv.classical_truncation(Phi)
            for vals in GENERIC_RHOS[len(Phi.quiver.vertices)]:
                rho = Qv.StabilityParam.on(Phi.quiver, vals)
                ss = Qv.king_ss_toric(phi, rho)
                assert ss == Qv.king_stable_toric(phi, rho)
                if ss:
                    ss_count += 1
                    assert conn
            count += 1
    return f"{count} instances, {ss_count} semistable (instance, rho) pairs"


@timed(9)
def test_c09_stability_ordering():
    checks = gap = 0
    for n, colours in Qv.two_colour_patterns(4, 6):
        for m in (1, 2):
            Phi = Qv.pattern_rep(n, colours, m)
            for vals in GENERIC_RHOS[n]:
                rho = Qv.StabilityParam.on(Phi.quiver, vals)
                if rho.is_zero():
                    continue
                ns = Qv.nrgit_stable(Phi, rho)
                rs = Qv.rudakov_stable_toric(Phi, rho)
                assert rs or not ns
                gap += rs and not ns
                checks += 1
    assert gap > 0
    return f"{checks} checks, {gap} Rudakov-stable but not NRGIT-stable"


@timed(10)
def test_c10_nilpotency():
    count = 0
    for m in (1, 2):
        for Phi in pattern_instances(m):
            phi = Qv.classical_truncation(Phi)
            nil = Qv.is_nilpotent_rep(phi)
            assert nil == (not Qv.has_directed_cycle(Qv.support_quiver(phi))) == (not closed_walk_exists(phi))
            assert Qv.in_null_cone_quiver(Phi) == nil
            count += 1
    nonzero = 0
    for rep, v, _ in torus_instances():
        if any(x != 0 for x in v):
            nonzero += 1
            assert T.in_null_cone(rep, v) == (not T.is_ss_projective(rep, v))
    return f"{count} quiver instances, {nonzero} nonzero torus points"


@timed(11)
def test_c11_equality_criterion():
    rng = random.Random("acceptance:11")
    examples = [(B.conjugation_graded_rep(), B.conjugation_oracle()),
                (B.leftmult_graded_rep(), B.leftmult_oracle())]
    for rep, oracle in examples:
        assert G.equality_condition(rep, -1)
        for _ in range(200):
            v = [rq(rng) if rng.random() > 0.3 else 0 for _ in range(4)]
            assert G.hm_rho_ss_uhat(rep, v, -1, oracle).status == G.uhat_semistable(rep, v, oracle).status
        assert not G.equality_condition(rep, 0)
        witness = (1, 0, 0, 0)
        assert G.hm_rho_ss_uhat(rep, witness, 0, oracle).status != G.uhat_semistable(rep, witness, oracle).status
    return "200 points per example; rho = 0 disagrees at (1, 0, 0, 0)"


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except BaseException:
                failed += 1
    sys.exit(1 if failed else 0)
