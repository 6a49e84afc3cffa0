"""Membership and ray tests for rational polytopes and cones, decided by exact LP."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exact import QMatrix, QVector, dot, qvec, rank
from .lp import OPTIMAL, UNBOUNDED, solve_lp

INFINITY = math.inf


def _check_dims(p: Sequence, points: Sequence[Sequence]) -> None:
    for s in points:
        if len(s) != len(p):
            raise ValueError(f"dimension mismatch: {len(s)} vs {len(p)}")


def hull_certificate(p: Sequence, S: Sequence[Sequence]) -> QVector | None:
    """Convex weights ``alpha`` with ``sum alpha_i S_i = p``, or None."""
    p = qvec(p)
    S = [qvec(s) for s in S]
    _check_dims(p, S)
    if not S:
        return None
    A = [[s[k] for s in S] for k in range(len(p))] + [[1] * len(S)]
    b = list(p) + [1]
    res = solve_lp([0] * len(S), A, b)
    return res.x if res.status == OPTIMAL else None


def in_convex_hull(p: Sequence, S: Sequence[Sequence]) -> bool:
    return hull_certificate(p, S) is not None


def cone_certificate(p: Sequence, rays: Sequence[Sequence]) -> QVector | None:
    """Nonnegative ``beta`` with ``sum beta_i r_i = p``, or None."""
    p = qvec(p)
    R = [qvec(r) for r in rays]
    _check_dims(p, R)
    if not R:
        return () if all(x == 0 for x in p) else None
    A = [[r[k] for r in R] for k in range(len(p))]
    res = solve_lp([0] * len(R), A, list(p))
    return res.x if res.status == OPTIMAL else None


def in_cone(p: Sequence, rays: Sequence[Sequence]) -> bool:
    return cone_certificate(p, rays) is not None


def max_ray_scale(rho: Sequence, S: Sequence[Sequence]):
    """Largest ``t >= 0`` with ``t * rho`` in conv(S).

    Returns a Fraction when that maximum is positive, None when no positive
    multiple of ``rho`` lies in the hull, and ``INFINITY`` if the LP is
    unbounded.
    """
    rho = qvec(rho)
    if all(x == 0 for x in rho):
        raise ValueError("rho must be nonzero")
    S = [qvec(s) for s in S]
    _check_dims(rho, S)
    if not S:
        return None
    n = len(S)
    # variables: alpha_1..alpha_n, t
    A = [[s[k] for s in S] + [-rho[k]] for k in range(len(rho))] + [[1] * n + [0]]
    b = [0] * len(rho) + [1]
    res = solve_lp([0] * n + [1], A, b)
    if res.status == UNBOUNDED:
        return INFINITY
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.value


def cone_face_in_subspace(
    weights: Sequence[Sequence], rho: Sequence, annihilated: Sequence[Sequence]
) -> bool:
    """Does every ``lam`` with ``<chi, lam> >= 0`` for all weights and ``<rho, lam> = 0``
    pair to zero with every vector in ``annihilated``?

    ``lam`` is split into nonnegative parts bounded by 1, so each LP is bounded.
    """
    rho = qvec(rho)
    r = len(rho)
    W = [qvec(w) for w in weights]
    _check_dims(rho, W)
    _check_dims(rho, annihilated)
    A_ub = [[-x for x in w] + list(w) for w in W]
    b_ub = [0] * len(W)
    # box |lam_j| <= 1 via lam+ <= 1, lam- <= 1
    for j in range(2 * r):
        row = [0] * (2 * r)
        row[j] = 1
        A_ub.append(row)
        b_ub.append(1)
    A_eq = [list(rho) + [-x for x in rho]]
    for w in annihilated:
        w = qvec(w)
        for sign in (1, -1):
            c = [sign * x for x in w] + [-sign * x for x in w]
            res = solve_lp(c, A_eq, [0], A_ub, b_ub)
            if res.status != OPTIMAL or res.value != 0:
                return False
    return True


def spans_space(vectors: Sequence[Sequence], dim: int) -> bool:
    if not vectors:
        return dim == 0
    return rank(QMatrix(vectors)) == dim


def pairing(u: Sequence, v: Sequence) -> Fraction:
    return dot(qvec(u), qvec(v))
