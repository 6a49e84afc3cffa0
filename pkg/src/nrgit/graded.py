"""Affine GIT for graded unipotent and graded linear algebraic groups.

A :class:`GradedRep` is the data of a linear action: the weight of the
grading ``G_m`` on each coordinate of ``V`` and matrices for a basis of
``Lie U``. From it we read off the minimal weight space, decide the
semistable loci for ``U x| G_m`` and for ``H = U x| R``, and check the
stabilizer conditions pointwise.

Unipotent orbit membership (``U.V_min`` and friends) has no general
algorithm here; callers pass an :class:`OrbitOracle` where one is needed.
Universally quantified conditions can only be checked at sample points.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .exact import QMatrix, QVector, hstack, qvec, rank

SEMISTABLE = "semistable"
UNSTABLE = "unstable"
NEEDS_ORACLE = "needs_oracle"

# subspace names understood by OrbitOracle
V_MIN = "V_min"
V_LE0 = "V_le0"
V_GE0 = "V_ge0"

_POINTWISE_NOTE = "universal stabilizer/stability conditions are assumed, not verified"


@dataclass(frozen=True)
class GradedRep:
    gm_weights: tuple
    lie_u: tuple = ()

    def __post_init__(self):
        ws = tuple(int(w) for w in self.gm_weights)
        if not ws:
            raise ValueError("gm_weights must be nonempty")
        mats = tuple(M if isinstance(M, QMatrix) else QMatrix(M) for M in self.lie_u)
        n = len(ws)
        for k, N in enumerate(mats):
            if N.shape != (n, n):
                raise ValueError(f"Lie U matrix {k} has shape {N.shape}, expected {(n, n)}")
            for i in range(n):
                for j in range(n):
                    if N[i, j] != 0 and not ws[i] > ws[j]:
                        raise ValueError(
                            f"Lie U matrix {k} does not raise weight at entry ({i},{j})"
                        )
        object.__setattr__(self, "gm_weights", ws)
        object.__setattr__(self, "lie_u", mats)

    @property
    def dim(self) -> int:
        return len(self.gm_weights)

    def coords(self, v: Sequence) -> QVector:
        v = qvec(v)
        if len(v) != self.dim:
            raise ValueError(f"point has length {len(v)}, expected {self.dim}")
        return v


@dataclass(frozen=True)
class GradingSummary:
    omega_min: int
    omega_next: int | None
    vmin_indices: tuple


@dataclass
class OrbitOracle:
    """Membership tests ``v in U.W`` keyed by subspace name (``V_MIN``, ``V_LE0``, ``V_GE0``)."""

    members: Mapping[str, Callable[[QVector], bool]] = field(default_factory=dict)

    def has(self, subspace: str) -> bool:
        return subspace in self.members

    def contains(self, subspace: str, v: QVector) -> bool:
        return bool(self.members[subspace](v))


@dataclass(frozen=True)
class SemistableVerdict:
    status: str
    reason: str
    witness: object = None

    @property
    def semistable(self) -> bool:
        return self.status == SEMISTABLE

    def __bool__(self):
        raise TypeError("use .semistable or .status; needs_oracle is not a boolean")


def grading_summary(rep: GradedRep) -> GradingSummary:
    ws = sorted(set(rep.gm_weights))
    wmin = ws[0]
    wnext = ws[1] if len(ws) > 1 else None
    return GradingSummary(wmin, wnext, tuple(i for i, w in enumerate(rep.gm_weights) if w == wmin))


def p_min(rep: GradedRep, v: Sequence) -> QVector:
    """Projection to the minimal weight space, in V_min coordinates."""
    v = rep.coords(v)
    return tuple(v[i] for i in grading_summary(rep).vmin_indices)


def embed_vmin(rep: GradedRep, w: Sequence) -> QVector:
    """Inverse of :func:`p_min` on V_min: pad with zeros."""
    idx = grading_summary(rep).vmin_indices
    w = qvec(w)
    if len(w) != len(idx):
        raise ValueError("V_min point has the wrong length")
    out = [0] * rep.dim
    for i, x in zip(idx, w):
        out[i] = x
    return qvec(out)


def in_vmin0(rep: GradedRep, v: Sequence) -> bool:
    return any(x != 0 for x in p_min(rep, v))


def _nonzero_on(rep: GradedRep, v: QVector, pred) -> bool:
    return any(x != 0 for x, w in zip(v, rep.gm_weights) if pred(w))


def infinitesimal_orbit_matrix(rep: GradedRep, v: Sequence) -> QMatrix:
    """``n x k`` matrix whose columns are ``N_j v``."""
    v = rep.coords(v)
    if not rep.lie_u:
        return QMatrix.zeros(rep.dim, 0)
    cols = [QMatrix([[x] for x in N.apply(v)], 1) for N in rep.lie_u]
    return hstack(cols)


def check_U_cond_at(rep: GradedRep, v: Sequence) -> bool:
    """Is ``Stab_U(v)`` trivial? In characteristic 0 this is the vanishing of the
    infinitesimal stabilizer, i.e. ``u -> sum u_j N_j v`` is injective."""
    M = infinitesimal_orbit_matrix(rep, v)
    return rank(M) == len(rep.lie_u)


@dataclass(frozen=True)
class SampledCheck:
    holds_on_sample: bool
    counterexample: QVector | None = None
    points_checked: int = 0


def _random_rational(rng: random.Random, num: int = 5, den: int = 4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def check_U_cond_sampled(rep: GradedRep, trials: int, seed: int = 0) -> SampledCheck:
    """Evaluate :func:`check_U_cond_at` on the coordinate vectors of V_min and
    ``trials`` random nonzero points of V_min."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    idx = grading_summary(rep).vmin_indices
    rng = random.Random(f"U-cond:{seed}")
    points = []
    for k in range(len(idx)):
        w = [0] * len(idx)
        w[k] = 1
        points.append(w)
    while len(points) < len(idx) + trials:
        w = [_random_rational(rng) for _ in idx]
        if any(x != 0 for x in w):
            points.append(w)
    for w in points:
        v = embed_vmin(rep, w)
        if not check_U_cond_at(rep, v):
            return SampledCheck(False, v, len(points))
    return SampledCheck(True, None, len(points))


def uhat_semistable(rep: GradedRep, v: Sequence, oracle: OrbitOracle | None = None) -> SemistableVerdict:
    """Quotienting semistable locus for the graded unipotent group.

    ``V^0_min`` when the minimal weight is nonzero, ``V^0_min`` minus ``U.V_min``
    when it is zero. The stabilizer condition on V_min is assumed.
    """
    v = rep.coords(v)
    summ = grading_summary(rep)
    if not in_vmin0(rep, v):
        return SemistableVerdict(UNSTABLE, "p_min(v) = 0")
    if summ.omega_min != 0:
        return SemistableVerdict(SEMISTABLE, f"omega_min = {summ.omega_min} != 0 and p_min(v) != 0")
    if oracle is None or not oracle.has(V_MIN):
        return SemistableVerdict(NEEDS_ORACLE, "omega_min = 0: membership in U.V_min required")
    if oracle.contains(V_MIN, v):
        return SemistableVerdict(UNSTABLE, "v lies in U.V_min")
    return SemistableVerdict(SEMISTABLE, "p_min(v) != 0 and v not in U.V_min")


def hm_rho_ss_uhat(
    rep: GradedRep, v: Sequence, rho: int, oracle: OrbitOracle | None = None
) -> SemistableVerdict:
    """Hilbert-Mumford rho-semistability for the graded unipotent group, rho an integer character."""
    v = rep.coords(v)
    rho = int(rho)
    if rho < 0:
        if _nonzero_on(rep, v, lambda w: w < 0):
            return SemistableVerdict(SEMISTABLE, "rho < 0 and v has a nonzero negative-weight coordinate")
        return SemistableVerdict(UNSTABLE, "rho < 0 and v lies in V_{>=0}")
    if rho == 0:
        return SemistableVerdict(SEMISTABLE, "rho = 0: every point is semistable")
    if oracle is None or not oracle.has(V_LE0):
        return SemistableVerdict(NEEDS_ORACLE, "rho > 0: membership in U.V_{<=0} required")
    if oracle.contains(V_LE0, v):
        return SemistableVerdict(UNSTABLE, "v lies in U.V_{<=0}")
    return SemistableVerdict(SEMISTABLE, "v not in U.V_{<=0}")


def equality_condition(rep: GradedRep, rho: int) -> bool:
    """Do the quotienting, Hilbert-Mumford and invariant-theoretic loci coincide?

    Holds iff ``rho < 0``, ``omega_min < 0`` and ``omega_next >= 0``; a single
    weight counts as ``omega_next = +inf``.
    """
    summ = grading_summary(rep)
    next_ok = summ.omega_next is None or summ.omega_next >= 0
    return int(rho) < 0 and summ.omega_min < 0 and next_ok


def h_semistable(
    rep: GradedRep,
    v: Sequence,
    rho_ss: Callable[[QVector], bool],
    nullcone: Callable[[QVector], bool],
    rho_trivial: bool,
    oracle: OrbitOracle | None = None,
    external_grading: bool = False,
) -> SemistableVerdict:
    """rho-twisted semistable locus for ``H = U x| R``.

    ``rho_ss`` and ``nullcone`` decide reductive semistability and null-cone
    membership on V_min (they receive V_min coordinates). With
    ``external_grading`` the grading group is not inside H and the
    ``U.V_min`` deletion is dropped.
    """
    v = rep.coords(v)
    summ = grading_summary(rep)
    w = p_min(rep, v)
    note = f"; {_POINTWISE_NOTE}"
    if summ.omega_min != 0 or (external_grading and rho_trivial):
        if rho_ss(w) and not nullcone(w):
            return SemistableVerdict(SEMISTABLE, "p_min(v) is R-semistable and outside the null cone" + note)
        return SemistableVerdict(UNSTABLE, "p_min(v) is R-unstable or in the null cone" + note)
    if rho_trivial:
        base = not nullcone(w)
        why = "p_min(v) outside the null cone"
    else:
        base = rho_ss(w)
        why = "p_min(v) is R-semistable"
    if not base:
        return SemistableVerdict(UNSTABLE, "not: " + why + note)
    if external_grading:
        return SemistableVerdict(SEMISTABLE, why + " (externally graded)" + note)
    if oracle is None or not oracle.has(V_MIN):
        return SemistableVerdict(NEEDS_ORACLE, why + "; membership in U.V_min required" + note)
    if oracle.contains(V_MIN, v):
        return SemistableVerdict(UNSTABLE, "v lies in U.V_min" + note)
    return SemistableVerdict(SEMISTABLE, why + " and v not in U.V_min" + note)


def _quantified(vmin_point, rho_ss, nullcone, omega_min: int, rho_trivial: bool) -> bool:
    """Is ``vmin_point`` in the set the stabilizer and stability conditions quantify over?"""
    if not rho_ss(vmin_point):
        return False
    if omega_min != 0 or rho_trivial:
        return not nullcone(vmin_point)
    return True


def check_R_cond_at(vmin_point, rho_ss, rho_stable, nullcone, omega_min: int, rho_trivial: bool) -> bool:
    """Pointwise "semistable implies stable" on the relevant part of V_min."""
    if _quantified(vmin_point, rho_ss, nullcone, omega_min, rho_trivial):
        return bool(rho_stable(vmin_point))
    return True


def check_Uss_cond_at(
    rep: GradedRep, vmin_point, rho_ss, nullcone, omega_min: int, rho_trivial: bool
) -> bool:
    """Pointwise trivial-unipotent-stabilizer check on the relevant part of V_min."""
    if _quantified(vmin_point, rho_ss, nullcone, omega_min, rho_trivial):
        return check_U_cond_at(rep, embed_vmin(rep, vmin_point))
    return True


def u_invariance_defect(rep: GradedRep) -> list[tuple[int, int]]:
    """Pairs (matrix index, basis index) where ``N_j`` fails to push a weight
    vector strictly upward. Empty for every valid GradedRep."""
    bad = []
    ws = rep.gm_weights
    for k, N in enumerate(rep.lie_u):
        for j in range(rep.dim):
            col = N.col(j)
            if any(x != 0 and ws[i] <= ws[j] for i, x in enumerate(col)):
                bad.append((k, j))
    return bad


def boundary_description(rep: GradedRep) -> dict:
    """Which pieces make up the boundary of the projective completion of V//U^.

    Each piece is a copy of P(V)//U^, whose semistable points are
    ``P(V^0_min) minus U.P(V_min)``.
    """
    w = grading_summary(rep).omega_min
    if w < 0:
        pieces = ["P(V)//U^ via [v] -> [v:0]"]
        completion = "X//U^ with X = P(V + k)"
    elif w == 0:
        pieces = ["P(V)//U^ via [v] -> ([v:0],[v])", "P(V)//U^ via [v] -> ([0:1],[v])"]
        completion = "Xhat//U^ with Xhat the blow-up of X at [0:1]"
    else:
        pieces = ["P(V)//U^ via [v] -> ([0:1],[v])"]
        completion = "Xhat//U^ with Xhat the blow-up of X at [0:1]"
    return {"omega_min": w, "completion": completion, "boundary_pieces": pieces}


def projective_boundary_ss(rep: GradedRep, v: Sequence, oracle: OrbitOracle | None = None) -> SemistableVerdict:
    """Membership of ``[v]`` in the semistable locus of P(V) carried by the boundary."""
    v = rep.coords(v)
    if all(x == 0 for x in v):
        raise ValueError("the zero vector has no projective point")
    if not in_vmin0(rep, v):
        return SemistableVerdict(UNSTABLE, "p_min(v) = 0")
    if oracle is None or not oracle.has(V_MIN):
        return SemistableVerdict(NEEDS_ORACLE, "membership in U.V_min required")
    if oracle.contains(V_MIN, v):
        return SemistableVerdict(UNSTABLE, "v lies in U.V_min")
    return SemistableVerdict(SEMISTABLE, "p_min(v) != 0 and v not in U.V_min")
