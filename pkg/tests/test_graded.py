import random
from fractions import Fraction

import pytest

from nrgit import borel as B
from nrgit.graded import (
    NEEDS_ORACLE,
    SEMISTABLE,
    UNSTABLE,
    V_MIN,
    GradedRep,
    OrbitOracle,
    SemistableVerdict,
    boundary_description,
    check_R_cond_at,
    check_U_cond_at,
    check_U_cond_sampled,
    check_Uss_cond_at,
    embed_vmin,
    equality_condition,
    grading_summary,
    h_semistable,
    hm_rho_ss_uhat,
    in_vmin0,
    infinitesimal_orbit_matrix,
    p_min,
    projective_boundary_ss,
    u_invariance_defect,
    uhat_semistable,
)

from conftest import rand_q

CONJ = B.conjugation_graded_rep()
LEFT = B.leftmult_graded_rep()


def rand_point(rng, n=4):
    return [Fraction(0) if rng.random() < 0.3 else rand_q(rng) for _ in range(n)]


def test_validation():
    with pytest.raises(ValueError):
        GradedRep((), ())
    with pytest.raises(ValueError):
        GradedRep((0, 1), ([[0, 1], [0, 0]],))  # lowers weight
    with pytest.raises(ValueError):
        GradedRep((0, 1), ([[0, 0, 0]],))


def test_lie_u_nilpotent_and_raising():
    for rep in (CONJ, LEFT):
        assert u_invariance_defect(rep) == []
        from nrgit.exact import is_nilpotent_matrix

        assert all(is_nilpotent_matrix(N) for N in rep.lie_u)


def test_grading_summary_examples():
    s = grading_summary(CONJ)
    assert (s.omega_min, s.omega_next, s.vmin_indices) == (-2, 0, (2,))
    s = grading_summary(LEFT)
    assert (s.omega_min, s.omega_next, s.vmin_indices) == (-1, 1, (2, 3))
    s = grading_summary(GradedRep((0, 0, 0)))
    assert (s.omega_min, s.omega_next, s.vmin_indices) == (0, None, (0, 1, 2))
    # listed order of the conjugation weights does not matter
    s = grading_summary(GradedRep((-2, 0, 0, 2)))
    assert (s.omega_min, s.omega_next) == (-2, 0)


def test_p_min_examples():
    assert p_min(CONJ, (1, 2, 3, 4)) == (3,)
    assert p_min(CONJ, (0, 0, 0, 0)) == (0,)
    assert p_min(LEFT, (1, 2, 3, 4)) == (3, 4)
    assert embed_vmin(LEFT, (3, 4)) == (0, 0, 3, 4)


def test_in_vmin0_examples():
    assert in_vmin0(CONJ, (0, 0, 1, 0))
    assert not in_vmin0(CONJ, (0, 0, 0, 0))
    assert in_vmin0(LEFT, (0, 0, 0, 1))


def test_U_cond_examples():
    assert check_U_cond_at(CONJ, B.E21.coords())
    assert infinitesimal_orbit_matrix(CONJ, B.E21.coords()).col(0) == (1, 0, 0, -1)
    assert not check_U_cond_at(CONJ, (0, 0, 0, 0))
    assert check_U_cond_at(LEFT, (0, 0, 1, 0))


def test_U_cond_sampled():
    assert check_U_cond_sampled(CONJ, 20, seed=1).holds_on_sample
    assert check_U_cond_sampled(LEFT, 20, seed=2).holds_on_sample
    zero = GradedRep((0, 1), ([[0, 0], [0, 0]],))
    res = check_U_cond_sampled(zero, 5, seed=0)
    assert not res.holds_on_sample and res.counterexample == (1, 0)
    with pytest.raises(ValueError):
        check_U_cond_sampled(CONJ, 0)


def test_U_cond_scale_invariant(rng):
    for _ in range(50):
        v = rand_point(rng)
        assert check_U_cond_at(CONJ, v) == check_U_cond_at(CONJ, [3 * x for x in v])


def test_uhat_examples(rng):
    assert uhat_semistable(CONJ, (0, 0, 1, 0)).status == SEMISTABLE
    assert uhat_semistable(CONJ, (1, 1, 0, 1)).status == UNSTABLE
    zero_min = GradedRep((0, 1), ([[0, 0], [1, 0]],))
    assert uhat_semistable(zero_min, (1, 0)).status == NEEDS_ORACLE
    with pytest.raises(TypeError):
        bool(uhat_semistable(CONJ, (0, 0, 1, 0)))
    for _ in range(200):
        v = rand_point(rng)
        for rep in (CONJ, LEFT):
            assert uhat_semistable(rep, v).semistable == in_vmin0(rep, v)


def test_uhat_with_oracle():
    # V = k^2 with weights 0, 1 and N e_0 = e_1: U.V_min = {(x, y): x != 0 or y = 0}
    rep = GradedRep((0, 1), ([[0, 0], [1, 0]],))
    oracle = OrbitOracle({V_MIN: lambda v: v[0] != 0 or v[1] == 0})
    assert uhat_semistable(rep, (1, 5), oracle).status == UNSTABLE
    assert uhat_semistable(rep, (0, 5), oracle).status == UNSTABLE
    assert projective_boundary_ss(rep, (1, 5), oracle).status == UNSTABLE
    with pytest.raises(ValueError):
        projective_boundary_ss(rep, (0, 0), oracle)


def test_hm_examples():
    assert hm_rho_ss_uhat(CONJ, (0, 0, 1, 0), -1).status == SEMISTABLE
    assert hm_rho_ss_uhat(CONJ, (1, 1, 0, 1), -1).status == UNSTABLE
    assert hm_rho_ss_uhat(LEFT, (0, 0, 0, 0), 0).status == SEMISTABLE
    assert hm_rho_ss_uhat(CONJ, (1, 0, 1, 0), 1).status == NEEDS_ORACLE
    # [[1,1],[0,1]] is not U-conjugate into b = 0; the identity already has b = 0
    assert hm_rho_ss_uhat(CONJ, (1, 1, 0, 1), 1, B.conjugation_oracle()).status == SEMISTABLE
    assert hm_rho_ss_uhat(CONJ, (1, 0, 0, 1), 1, B.conjugation_oracle()).status == UNSTABLE


def test_equality_condition_examples():
    assert equality_condition(CONJ, -1)
    assert not equality_condition(CONJ, 0)
    assert equality_condition(LEFT, -1)
    assert not equality_condition(LEFT, 1)
    assert equality_condition(GradedRep((-1, -1)), -1)  # single weight: next treated as +inf
    assert not equality_condition(GradedRep((-2, -1, 0)), -1)


def test_equality_implies_agreement(rng):
    for rep in (CONJ, LEFT):
        assert equality_condition(rep, -1)
        for _ in range(200):
            v = rand_point(rng)
            assert hm_rho_ss_uhat(rep, v, -1).status == uhat_semistable(rep, v).status


def test_h_semistable_cases():
    rep = GradedRep((0, 1), ([[0, 0], [1, 0]],))
    yes, no = (lambda w: True), (lambda w: False)
    v = (1, 2)
    ext = h_semistable(rep, v, yes, no, rho_trivial=False, external_grading=True)
    assert ext.status == SEMISTABLE
    assert h_semistable(rep, v, yes, no, rho_trivial=False).status == NEEDS_ORACLE
    assert h_semistable(rep, v, no, no, rho_trivial=False).status == UNSTABLE
    # omega_min != 0: p_min in the null cone excludes the point
    assert h_semistable(CONJ, (0, 0, 1, 0), yes, yes, rho_trivial=False).status == UNSTABLE
    assert h_semistable(CONJ, (0, 0, 1, 0), yes, no, rho_trivial=False).status == SEMISTABLE
    oracle = OrbitOracle({V_MIN: lambda w: w[0] != 0 or w[1] == 0})
    assert h_semistable(rep, (1, 2), no, no, rho_trivial=True, oracle=oracle).status == UNSTABLE
    assert "assumed" in ext.reason


def test_h_semistable_depends_only_on_pmin(rng):
    ss = lambda w: w[0] > 0
    nc = lambda w: w[0] == 0
    for _ in range(100):
        v = rand_point(rng)
        w = list(v)
        w[0], w[1], w[3] = rand_q(rng), rand_q(rng), rand_q(rng)
        a = h_semistable(CONJ, v, ss, nc, rho_trivial=False)
        b = h_semistable(CONJ, w, ss, nc, rho_trivial=False)
        assert a.status == b.status


def test_R_and_Uss_conditions_trivial_cases():
    yes = lambda w: True
    no = lambda w: False
    assert check_R_cond_at((1,), yes, yes, no, -2, False)
    assert not check_R_cond_at((1,), yes, no, no, -2, False)
    # point in the null cone is outside the quantified set when omega_min != 0
    assert check_R_cond_at((1,), yes, no, yes, -2, False)
    assert check_Uss_cond_at(CONJ, (1,), yes, no, -2, False)
    assert check_Uss_cond_at(CONJ, (0,), no, no, -2, False)


def test_boundary_description():
    assert boundary_description(CONJ)["omega_min"] == -2
    assert len(boundary_description(CONJ)["boundary_pieces"]) == 1
    assert len(boundary_description(GradedRep((0, 1)))["boundary_pieces"]) == 2
    assert len(boundary_description(GradedRep((1, 2)))["boundary_pieces"]) == 1


def test_verdict_semistable_property():
    assert SemistableVerdict(SEMISTABLE, "").semistable
    assert not SemistableVerdict(NEEDS_ORACLE, "").semistable
