"""(Semi)stability for a diagonal torus action on a vector space.

A :class:`TorusRep` records one integral character per coordinate. Every
verdict below depends on a point only through the set of weights on which
it is nonzero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import QVector, dot, qvec
from .polyhedra import (
    INFINITY,
    cone_face_in_subspace,
    in_cone,
    in_convex_hull,
    max_ray_scale,
    spans_space,
)


@dataclass(frozen=True)
class TorusRep:
    weights: tuple  # tuple of integer tuples, one per coordinate

    def __post_init__(self):
        ws = tuple(tuple(int(x) for x in w) for w in self.weights)
        for w, orig in zip(ws, self.weights):
            if any(Fraction(a) != Fraction(b) for a, b in zip(w, orig)):
                raise ValueError("torus weights must be integral")
        if ws and len({len(w) for w in ws}) != 1:
            raise ValueError("all weights need the same torus rank")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def of(cls, weights: Sequence[Sequence[int]], rank: int | None = None) -> "TorusRep":
        rep = cls(tuple(tuple(w) for w in weights))
        if rank is not None and rep.weights and rep.rank != rank:
            raise ValueError(f"weights have rank {rep.rank}, expected {rank}")
        return rep

    @property
    def rank(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    @property
    def dim(self) -> int:
        return len(self.weights)


def _coords(rep: TorusRep, v: Sequence) -> QVector:
    v = qvec(v)
    if len(v) != rep.dim:
        raise ValueError(f"point has length {len(v)}, representation has dimension {rep.dim}")
    return v


def _rho(rep: TorusRep, rho: Sequence) -> QVector:
    rho = qvec(rho)
    if rep.dim and len(rho) != rep.rank:
        raise ValueError(f"rho has length {len(rho)}, torus has rank {rep.rank}")
    return rho


def support_weights(rep: TorusRep, v: Sequence) -> list[tuple[int, ...]]:
    """Distinct weights of the nonzero coordinates of ``v``, in first-seen order."""
    v = _coords(rep, v)
    seen: dict[tuple, None] = {}
    for w, x in zip(rep.weights, v):
        if x != 0:
            seen.setdefault(w, None)
    return list(seen)


def _require_nonzero(v: QVector) -> None:
    if all(x == 0 for x in v):
        raise ValueError("the zero vector has no projective point")


def is_ss_projective(rep: TorusRep, v: Sequence) -> bool:
    v = _coords(rep, v)
    _require_nonzero(v)
    return in_convex_hull([0] * rep.rank, support_weights(rep, v))


def is_stable_projective(rep: TorusRep, v: Sequence) -> bool:
    """True iff every nonzero cocharacter pairs negatively with some support weight.

    Equivalently the support weights generate all of Q^r as a cone, which is
    tested on the vectors +-e_j.
    """
    v = _coords(rep, v)
    _require_nonzero(v)
    S = support_weights(rep, v)
    r = rep.rank
    for j in range(r):
        for sign in (1, -1):
            e = [0] * r
            e[j] = sign
            if not in_cone(e, S):
                return False
    return True


def is_rho_ss(rep: TorusRep, v: Sequence, rho: Sequence) -> bool:
    v = _coords(rep, v)
    rho = _rho(rep, rho)
    if all(x == 0 for x in v):
        return all(x == 0 for x in rho)
    return in_cone(rho, support_weights(rep, v))


def is_rho_stable(rep: TorusRep, v: Sequence, rho: Sequence) -> bool:
    """rho-stability: semistable, finite stabilizer, and every nonzero cocharacter
    with a limit pairs strictly positively with rho."""
    v = _coords(rep, v)
    rho = _rho(rep, rho)
    if all(x == 0 for x in v):
        return False
    S = support_weights(rep, v)
    if not in_cone(rho, S):
        return False
    if not spans_space(S, rep.rank):
        return False
    return cone_face_in_subspace(S, rho, S)


def in_null_cone(rep: TorusRep, v: Sequence) -> bool:
    v = _coords(rep, v)
    if all(x == 0 for x in v):
        return True
    return not in_convex_hull([0] * rep.rank, support_weights(rep, v))


def halic_min_degree(rep: TorusRep, v: Sequence, rho: Sequence) -> int | None:
    """Least ``d >= 1`` with ``rho/d`` in conv(support weights and 0); None if no d exists."""
    v = _coords(rep, v)
    _require_nonzero(v)
    rho = _rho(rep, rho)
    if all(x == 0 for x in rho):
        return 1
    S = support_weights(rep, v) + [tuple([0] * rep.rank)]
    t = max_ray_scale(rho, S)
    if t is None:
        return None
    if t == INFINITY:
        return 1
    return max(1, math.ceil(1 / t))


def uniform_halic_degree(rep: TorusRep, points: Sequence[Sequence], rho: Sequence) -> int | None:
    """Max of the pointwise minimal degrees over the semistable points supplied."""
    ds = [halic_min_degree(rep, v, rho) for v in points]
    ds = [d for d in ds if d is not None]
    return max(ds) if ds else None


def hm_brute_oracle(rep: TorusRep, v: Sequence, rho: Sequence, bound: int) -> bool:
    """Enumerate integral cocharacters in ``[-bound, bound]^r``; every one whose
    limit at 0 exists on ``v`` must pair nonnegatively with ``rho``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    v = _coords(rep, v)
    rho = _rho(rep, rho)
    return hm_brute_witness(rep, v, rho, bound) is None


def hm_brute_witness(rep: TorusRep, v: Sequence, rho: Sequence, bound: int):
    """First destabilizing cocharacter found by enumeration, or None."""
    v = _coords(rep, v)
    rho = _rho(rep, rho)
    S = support_weights(rep, v)
    for lam in itertools.product(range(-bound, bound + 1), repeat=rep.rank):
        if all(dot(w, lam) >= 0 for w in S) and dot(rho, lam) < 0:
            return lam
    return None
