"""Representations of quivers with multiplicities.

A representation of ``(Q, m)`` of rank ``d`` assigns to each arrow ``a`` a
``d[t(a)] x d[s(a)]`` matrix over ``A_m = Q[eps]/(eps^(m+1))``. The group
``G = prod_v GL_{d_v}(A_m)`` acts by ``g.Phi_a = g_t(a) Phi_a g_s(a)^-1``
and the grading ``G_m`` scales layer ``i`` by ``t^i``.

King (semi)stability and the Rudakov variant are decided exactly for toric
ranks ``d = (1, ..., 1)``, where subrepresentations are coordinate subsets
closed under the nonzero arrows. General King stability is not decided
here; callers supply a classical-stability predicate instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .exact import AmMatrix, QMatrix, QVector, TruncPoly, kernel_basis, q, qvec, rank, solve
from .graded import V_MIN, GradedRep, OrbitOracle

GENERIC_VERTEX_LIMIT = 24


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex id")
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in self.arrows)
        if len({a.id for a in arrows}) != len(arrows):
            raise ValueError("duplicate arrow id")
        for a in arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", arrows)

    @classmethod
    def of(cls, vertices: Iterable, arrows: Iterable[tuple]) -> "Quiver":
        """``Quiver.of(["1", "2"], [("a", "1", "2")])``."""
        return cls(tuple(vertices), tuple(arrows))

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def subquiver(self, arrow_ids: Iterable[str]) -> "Quiver":
        keep = set(arrow_ids)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.id in keep))


def _rank_map(quiver: Quiver, rank: Mapping) -> dict:
    d = {str(v): int(n) for v, n in rank.items()}
    for v in quiver.vertices:
        if v not in d:
            raise ValueError(f"rank missing for vertex {v}")
        if d[v] < 1:
            raise ValueError(f"rank at vertex {v} must be positive")
    if set(d) != set(quiver.vertices):
        raise ValueError("rank given for unknown vertices")
    return d


@dataclass(frozen=True)
class StabilityParam:
    rho: Mapping

    def __post_init__(self):
        object.__setattr__(self, "rho", {str(v): int(x) for v, x in self.rho.items()})

    @classmethod
    def on(cls, quiver: Quiver, values: Sequence[int]) -> "StabilityParam":
        if len(values) != len(quiver.vertices):
            raise ValueError("one value per vertex required")
        return cls(dict(zip(quiver.vertices, values)))

    def __getitem__(self, v) -> int:
        return self.rho[str(v)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.rho.values())

    def pairing(self, rank: Mapping) -> int:
        return sum(self.rho[v] * int(n) for v, n in rank.items())

    def is_valid_for(self, rank: Mapping) -> bool:
        return set(self.rho) == {str(v) for v in rank} and self.pairing(rank) == 0


@dataclass(frozen=True)
class RepMult:
    quiver: Quiver
    m: int
    rank: Mapping
    mats: Mapping

    def __post_init__(self):
        d = _rank_map(self.quiver, self.rank)
        mats = {}
        for a in self.quiver.arrows:
            if a.id not in self.mats:
                raise ValueError(f"no matrix for arrow {a.id}")
            M = self.mats[a.id]
            if not isinstance(M, AmMatrix):
                M = AmMatrix(M, self.m)
            if M.m != self.m:
                raise ValueError(f"arrow {a.id} has multiplicity {M.m}, expected {self.m}")
            if M.shape != (d[a.tgt], d[a.src]):
                raise ValueError(f"arrow {a.id} has shape {M.shape}, expected {(d[a.tgt], d[a.src])}")
            mats[a.id] = M
        extra = set(self.mats) - set(mats)
        if extra:
            raise ValueError(f"matrices for unknown arrows: {sorted(extra)}")
        object.__setattr__(self, "rank", d)
        object.__setattr__(self, "mats", mats)

    def __getitem__(self, aid: str) -> AmMatrix:
        return self.mats[aid]

    def is_toric(self) -> bool:
        return all(n == 1 for n in self.rank.values())

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.mats.values())


def zero_rep(quiver: Quiver, m: int, rank: Mapping | None = None) -> RepMult:
    d = _rank_map(quiver, rank) if rank is not None else {v: 1 for v in quiver.vertices}
    return RepMult(
        quiver, m, d, {a.id: AmMatrix.zeros(d[a.tgt], d[a.src], m) for a in quiver.arrows}
    )


def toric_rep(quiver: Quiver, m: int, coeffs: Mapping[str, Sequence]) -> RepMult:
    """Toric representation from ``{arrow id: [c_0, ..., c_m]}`` (missing arrows are zero)."""
    mats = {}
    for a in quiver.arrows:
        cs = list(coeffs.get(a.id, [0]))
        mats[a.id] = AmMatrix([QMatrix([[c]]) for c in cs], m)
    return RepMult(quiver, m, {v: 1 for v in quiver.vertices}, mats)


@dataclass(frozen=True)
class GroupElemMult:
    mats: Mapping

    def __post_init__(self):
        for v, g in self.mats.items():
            if not g.is_invertible():
                raise ValueError(f"group element at vertex {v} is not invertible")

    def __getitem__(self, v) -> AmMatrix:
        return self.mats[v]

    def __mul__(self, other: "GroupElemMult") -> "GroupElemMult":
        return GroupElemMult({v: self.mats[v] @ other.mats[v] for v in self.mats})

    def inverse(self) -> "GroupElemMult":
        return GroupElemMult({v: g.inverse() for v, g in self.mats.items()})

    def layer0(self) -> "GroupElemMult":
        return GroupElemMult({v: g.truncate(0) for v, g in self.mats.items()})


def identity_elem(quiver: Quiver, m: int, rank: Mapping) -> GroupElemMult:
    d = _rank_map(quiver, rank)
    return GroupElemMult({v: AmMatrix.identity(d[v], m) for v in quiver.vertices})


# -- functors and actions -----------------------------------------------------


def _memo(Phi: RepMult, key: str, compute: Callable[[], object]):
    # RepMult is immutable, so derived data can be cached on the instance
    cache = Phi.__dict__.setdefault("_memo", {})
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def classical_truncation(Phi: RepMult) -> RepMult:
    if Phi.m == 0:
        return Phi
    return _memo(
        Phi,
        "truncation",
        lambda: RepMult(Phi.quiver, 0, Phi.rank, {a: M.truncate(0) for a, M in Phi.mats.items()}),
    )


def extend_scalars(phi: RepMult, m: int) -> RepMult:
    if phi.m != 0:
        raise ValueError("extension of scalars starts from multiplicity 0")
    return RepMult(phi.quiver, m, phi.rank, {a: M.extend(m) for a, M in phi.mats.items()})


def extended_truncation(Phi: RepMult) -> RepMult:
    """``Phi^0``: the classical truncation viewed again over ``A_m``."""
    return extend_scalars(classical_truncation(Phi), Phi.m)


def act(g: GroupElemMult, Phi: RepMult) -> RepMult:
    inv = {v: M.inverse() for v, M in g.mats.items()}
    out = {}
    for a in Phi.quiver.arrows:
        gt, gs_inv = g.mats[a.tgt], inv[a.src]
        if gt.m != Phi.m or gs_inv.m != Phi.m:
            raise ValueError("group element and representation have different multiplicities")
        out[a.id] = gt @ Phi.mats[a.id] @ gs_inv
    return RepMult(Phi.quiver, Phi.m, Phi.rank, out)


def lambda_act(t, Phi: RepMult) -> RepMult:
    """Grading action: layer ``i`` is multiplied by ``t**i``."""
    t = q(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return _scale_layers(t, Phi)


def lambda_limit(Phi: RepMult) -> RepMult:
    """Limit of ``lambda_act(t, Phi)`` as ``t -> 0``."""
    return _scale_layers(Fraction(0), Phi)


def _scale_layers(t: Fraction, Phi: RepMult) -> RepMult:
    out = {
        a: AmMatrix([L.scale(t**i) for i, L in enumerate(M.layers)], Phi.m)
        for a, M in Phi.mats.items()
    }
    return RepMult(Phi.quiver, Phi.m, Phi.rank, out)


# -- graph data ---------------------------------------------------------------


def support_quiver(Phi: RepMult) -> Quiver:
    return _memo(
        Phi,
        "support",
        lambda: Phi.quiver.subquiver(a for a, M in Phi.mats.items() if not M.layers[0].is_zero()),
    )


def is_connected(quiver: Quiver) -> bool:
    """Undirected connectivity over all vertices."""
    if not quiver.vertices:
        raise ValueError("empty quiver")
    adj = {v: set() for v in quiver.vertices}
    for a in quiver.arrows:
        adj[a.src].add(a.tgt)
        adj[a.tgt].add(a.src)
    seen = {quiver.vertices[0]}
    stack = [quiver.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(quiver.vertices)


def has_directed_cycle(quiver: Quiver) -> bool:
    out = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        out[a.src].append(a.tgt)
    state = {v: 0 for v in quiver.vertices}  # 0 new, 1 on stack, 2 done

    def visit(v) -> bool:
        state[v] = 1
        for w in out[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in quiver.vertices)


def is_generic(rho: StabilityParam, quiver: Quiver) -> bool:
    vs = quiver.vertices
    if len(vs) > GENERIC_VERTEX_LIMIT:
        raise ValueError(f"genericity check limited to {GENERIC_VERTEX_LIMIT} vertices")
    vals = [rho[v] for v in vs]
    if sum(vals) != 0:
        return False
    n = len(vals)
    for mask in range(1, (1 << n) - 1):
        if sum(vals[i] for i in range(n) if mask >> i & 1) == 0:
            return False
    return True


# -- toric King / Rudakov stability --------------------------------------------


def _require_toric(Phi: RepMult) -> None:
    if not Phi.is_toric():
        raise ValueError("toric rank vector (1, ..., 1) required")


def closed_subsets(vertices: Sequence[str], arrows: Iterable[Arrow]) -> Iterator[frozenset]:
    """Nonempty proper vertex subsets S with ``s(a) in S => t(a) in S`` for every arrow."""
    n = len(vertices)
    pos = {v: i for i, v in enumerate(vertices)}
    edges = {(pos[a.src], pos[a.tgt]) for a in arrows if a.src != a.tgt}
    for mask in range(1, (1 << n) - 1):
        if all(not (mask >> s & 1) or mask >> t & 1 for s, t in edges):
            yield frozenset(vertices[i] for i in range(n) if mask >> i & 1)


def _closed_supports(Phi: RepMult, kind: str) -> list[frozenset]:
    """Cached closed subsets for the support arrows (``"support"``) or all nonzero arrows."""
    def compute():
        if kind == "support":
            arrows = support_quiver(Phi).arrows
        else:
            arrows = [a for a in Phi.quiver.arrows if not Phi.mats[a.id].is_zero()]
        return list(closed_subsets(Phi.quiver.vertices, arrows))

    return _memo(Phi, "closed_" + kind, compute)


def destabilizing_subset(phi: RepMult, rho: StabilityParam, strict: bool) -> frozenset | None:
    """A subrepresentation support violating (semi)stability, or None."""
    _require_toric(phi)
    for S in _closed_supports(phi, "support"):
        total = sum(rho[v] for v in S)
        if total < 0 or (strict and total == 0):
            return S
    return None


def king_ss_toric(phi: RepMult, rho: StabilityParam) -> bool:
    return destabilizing_subset(phi, rho, strict=False) is None


def king_stable_toric(phi: RepMult, rho: StabilityParam) -> bool:
    return destabilizing_subset(phi, rho, strict=True) is None


def rudakov_stable_toric(Phi: RepMult, rho: StabilityParam) -> bool:
    """Rudakov stability over locally free subrepresentations (rank 0 or 1 at each vertex)."""
    _require_toric(Phi)
    return all(sum(rho[v] for v in S) > 0 for S in _closed_supports(Phi, "nonzero"))


# -- nilpotency -----------------------------------------------------------------


def is_nilpotent_rep(phi: RepMult) -> bool:
    """Every oriented cycle of length at most ``(sum d)^2`` has traceless product.

    Paths are grown one arrow at a time; zero products are pruned and equal
    (start, end, product) triples merged.
    """
    if phi.m != 0:
        raise ValueError("is_nilpotent_rep expects a classical (m = 0) representation")
    bound = sum(phi.rank.values()) ** 2
    mats = {a.id: phi.mats[a.id].layers[0] for a in phi.quiver.arrows}
    out = {v: [] for v in phi.quiver.vertices}
    for a in phi.quiver.arrows:
        if not mats[a.id].is_zero():
            out[a.src].append(a)
    frontier = set()
    for a in phi.quiver.arrows:
        if not mats[a.id].is_zero():
            frontier.add((a.src, a.tgt, mats[a.id]))
    for _ in range(bound):
        for s, t, P in frontier:
            if s == t and P.trace() != 0:
                return False
        nxt = set()
        for s, t, P in frontier:
            for a in out[t]:
                R = mats[a.id] @ P
                if not R.is_zero():
                    nxt.add((s, a.tgt, R))
        if not nxt:
            return True
        frontier = nxt
    return True


def in_null_cone_quiver(Phi: RepMult) -> bool:
    return is_nilpotent_rep(classical_truncation(Phi))


# -- automorphisms --------------------------------------------------------------


def _unknown_layout(Phi: RepMult, layers: Sequence[int]):
    """Index of each scalar unknown ``(vertex, layer, i, j)`` of ``X = (X_v)``."""
    layout = []
    for v in Phi.quiver.vertices:
        n = Phi.rank[v]
        for k in layers:
            for i in range(n):
                for j in range(n):
                    layout.append((v, k, i, j))
    return layout


def _unit_x(Phi: RepMult, entry) -> dict:
    v0, k0, i0, j0 = entry
    X = {}
    for v in Phi.quiver.vertices:
        n = Phi.rank[v]
        if v == v0:
            layer = QMatrix([[int(i == i0 and j == j0) for j in range(n)] for i in range(n)], n)
            zeros = QMatrix.zeros(n, n)
            X[v] = AmMatrix([layer if k == k0 else zeros for k in range(Phi.m + 1)], Phi.m)
        else:
            X[v] = AmMatrix.zeros(n, n, Phi.m)
    return X


def _commutator_system(Phi: RepMult, layout) -> QMatrix:
    """Matrix of ``X -> (X_t(a) Phi_a - Phi_a X_s(a))_a`` in the given unknown layout.

    Rows are indexed by (arrow, layer, p, q); the entries are read off the
    layer convolution directly.
    """
    d, m = Phi.rank, Phi.m
    row_index = {}
    for a in Phi.quiver.arrows:
        for r in range(m + 1):
            for p in range(d[a.tgt]):
                for qq in range(d[a.src]):
                    row_index[(a.id, r, p, qq)] = len(row_index)
    rows = [[Fraction(0)] * len(layout) for _ in range(len(row_index))]
    for col, (v, k, i, j) in enumerate(layout):
        for a in Phi.quiver.arrows:
            layers = Phi.mats[a.id].layers
            for r in range(k, m + 1):
                L = layers[r - k]
                if a.tgt == v:
                    # E_ij eps^k Phi_a: row i picks up row j of the layer
                    for qq in range(d[a.src]):
                        x = L[j, qq]
                        if x:
                            rows[row_index[(a.id, r, i, qq)]][col] += x
                if a.src == v:
                    # -Phi_a E_ij eps^k: column j picks up minus column i of the layer
                    for p in range(d[a.tgt]):
                        x = L[p, i]
                        if x:
                            rows[row_index[(a.id, r, p, j)]][col] -= x
    return QMatrix(rows, len(layout))


def _stabilizer_kernel(Phi: RepMult, layers: Sequence[int]):
    layout = _unknown_layout(Phi, layers)
    if not layout:
        return layout, []
    M = _commutator_system(Phi, layout)
    if M.rows == 0:
        basis = [tuple(Fraction(int(i == j)) for j in range(len(layout))) for i in range(len(layout))]
        return layout, basis
    return layout, kernel_basis(M)


def _vector_to_x(Phi: RepMult, layout, vec) -> dict:
    layers = {v: [[[Fraction(0)] * Phi.rank[v] for _ in range(Phi.rank[v])] for _ in range(Phi.m + 1)]
              for v in Phi.quiver.vertices}
    for (v, k, i, j), x in zip(layout, vec):
        layers[v][k][i][j] = x
    return {v: AmMatrix([QMatrix(L, Phi.rank[v]) for L in ls], Phi.m) for v, ls in layers.items()}


def aut_stab_lie(Phi: RepMult) -> tuple[int, list[dict]]:
    """Lie algebra of ``Stab_G(Phi)``: all ``X`` with ``X_t(a) Phi_a = Phi_a X_s(a)``.

    Returns its dimension over Q and a basis, each element a map vertex -> AmMatrix.
    """
    layout, basis = _stabilizer_kernel(Phi, range(Phi.m + 1))
    return len(basis), [_vector_to_x(Phi, layout, b) for b in basis]


def unipotent_stab_dim(Phi: RepMult) -> int:
    """Dimension of the stabilizer of ``Phi`` in the unipotent radical (layers >= 1)."""
    layout = _unknown_layout(Phi, range(1, Phi.m + 1))
    if not layout:
        return 0
    M = _commutator_system(Phi, layout)
    return len(layout) - (rank(M) if M.rows else 0)


def nontrivial_aut_reductive(Phi: RepMult) -> bool:
    """Is ``Aut(Phi^0)/Delta_m`` reductive? Its unipotent part must be exactly the scalars."""
    return _memo(Phi, "aut_reductive", lambda: unipotent_stab_dim(extended_truncation(Phi)) == Phi.m)


# -- stability notions ----------------------------------------------------------


def _check_rho(Phi: RepMult, rho: StabilityParam) -> None:
    if rho.is_zero():
        raise ValueError("rho must be nonzero")
    if not rho.is_valid_for(Phi.rank):
        raise ValueError("rho must satisfy sum_v rho_v d_v = 0")


def _classical_stable(phi: RepMult, rho: StabilityParam, classical_stable) -> bool:
    if phi.is_toric():
        return king_stable_toric(phi, rho)
    if classical_stable is None:
        raise ValueError("non-toric rank: pass a classical_stable predicate")
    return bool(classical_stable(phi))


def nrgit_stable(
    Phi: RepMult, rho: StabilityParam, classical_stable: Callable[[RepMult], bool] | None = None
) -> bool:
    """Classical truncation rho-stable and ``Aut(Phi^0)/Delta_m`` reductive."""
    _check_rho(Phi, rho)
    if not _classical_stable(classical_truncation(Phi), rho, classical_stable):
        return False
    return nontrivial_aut_reductive(Phi)


def qss_membership(
    Phi: RepMult, rho: StabilityParam, classical_stable: Callable[[RepMult], bool] | None = None
) -> bool:
    """Membership in the moduli locus: the classical truncation is rho-stable."""
    _check_rho(Phi, rho)
    return _classical_stable(classical_truncation(Phi), rho, classical_stable)


# -- the two-vertex worked example ---------------------------------------------


def worked_example_quiver() -> Quiver:
    """``v1 -a1-> v2`` and ``v2 -a2-> v1``."""
    return Quiver.of(["v1", "v2"], [("a1", "v1", "v2"), ("a2", "v2", "v1")])


def worked_example_rep(alpha1, beta1, alpha2, beta2) -> RepMult:
    return toric_rep(worked_example_quiver(), 1, {"a1": [alpha1, beta1], "a2": [alpha2, beta2]})


def _worked_example_values(Phi: RepMult) -> tuple[TruncPoly, TruncPoly]:
    Q = worked_example_quiver()
    if Phi.quiver != Q or Phi.m != 1 or not Phi.is_toric():
        raise ValueError("expected a toric rep of the two-vertex worked-example quiver with m = 1")
    return Phi.mats["a1"].entry(0, 0), Phi.mats["a2"].entry(0, 0)


def worked_example_quotient(Phi: RepMult) -> tuple[Fraction, Fraction]:
    """``(alpha1 alpha2, alpha2 beta1 + alpha1 beta2)``, the coefficients of ``Phi1 Phi2``."""
    p1, p2 = _worked_example_values(Phi)
    if p2.coeffs[0] == 0:
        raise ValueError("not semistable: alpha2 = 0")
    return (p1 * p2).coeffs


def worked_example_element(t, u) -> GroupElemMult:
    """``h = t + u eps`` at ``v2`` and the identity at ``v1``, acting as ``(h Phi1, h^-1 Phi2)``."""
    return GroupElemMult(
        {
            "v1": AmMatrix.identity(1, 1),
            "v2": AmMatrix.scalar(TruncPoly([t, u], 1), 1),
        }
    )


def worked_example_witness(Phi: RepMult, Psi: RepMult) -> GroupElemMult | None:
    """Group element moving ``Phi`` to ``Psi`` when both are semistable with equal quotient."""
    if worked_example_quotient(Phi) != worked_example_quotient(Psi):
        return None
    _, p2 = _worked_example_values(Phi)
    _, r2 = _worked_example_values(Psi)
    h = p2 * r2.inverse()
    g = worked_example_element(*h.coeffs)
    return g if act(g, Phi) == Psi else None


# -- graded-representation view ---------------------------------------------------


@dataclass(frozen=True)
class CoordLayout:
    """Flattening of ``Rep(Q, m, d)``: arrows in quiver order, then layers, then row-major entries."""

    quiver: Quiver
    m: int
    rank: Mapping
    slots: tuple = field(default=())

    def __post_init__(self):
        d = _rank_map(self.quiver, self.rank)
        slots = []
        for a in self.quiver.arrows:
            for k in range(self.m + 1):
                for i in range(d[a.tgt]):
                    for j in range(d[a.src]):
                        slots.append((a.id, k, i, j))
        object.__setattr__(self, "rank", d)
        object.__setattr__(self, "slots", tuple(slots))

    @property
    def dim(self) -> int:
        return len(self.slots)

    def weights(self) -> tuple:
        return tuple(k for _, k, _, _ in self.slots)

    def to_coords(self, Phi: RepMult) -> QVector:
        return tuple(Phi.mats[a].layers[k][i, j] for a, k, i, j in self.slots)

    def from_coords(self, v: Sequence) -> RepMult:
        v = qvec(v)
        if len(v) != self.dim:
            raise ValueError("coordinate vector has the wrong length")
        d = self.rank
        grids = {
            a.id: [[[Fraction(0)] * d[a.src] for _ in range(d[a.tgt])] for _ in range(self.m + 1)]
            for a in self.quiver.arrows
        }
        for (a, k, i, j), x in zip(self.slots, v):
            grids[a][k][i][j] = x
        mats = {
            a.id: AmMatrix([QMatrix(g, d[a.src]) for g in grids[a.id]], self.m) for a in self.quiver.arrows
        }
        return RepMult(self.quiver, self.m, d, mats)

    def vmin_to_rep(self, w: Sequence) -> RepMult:
        """Classical representation from V_min (layer-0) coordinates."""
        layout0 = CoordLayout(self.quiver, 0, self.rank)
        return layout0.from_coords(w)


def _lie_u_basis(quiver: Quiver, m: int, d: Mapping) -> list[tuple]:
    """Basis of ``Lie U`` for ``H = G/Delta_m``: layer >= 1 elementary matrices, with the
    ``(0, 0)`` entry at the first vertex dropped in each layer (complement to the scalars)."""
    basis = []
    for k in range(1, m + 1):
        for idx, v in enumerate(quiver.vertices):
            for i in range(d[v]):
                for j in range(d[v]):
                    if idx == 0 and i == 0 and j == 0:
                        continue
                    basis.append((v, k, i, j))
    return basis


def quiver_to_graded_rep(quiver: Quiver, m: int, rank: Mapping) -> tuple[GradedRep, OrbitOracle | None, CoordLayout]:
    """The externally graded action on ``Rep(Q, m, d)`` in coordinates.

    Weights are the eps-layer of each coordinate (so the minimal weight is 0
    and V_min is the classical part). Lie U acts by ``Phi_a -> X_t Phi_a - Phi_a X_s``.
    For toric ranks an exact ``U.V_min`` oracle is attached.
    """
    layout = CoordLayout(quiver, m, rank)
    d = layout.rank
    template = zero_rep(quiver, m, d)
    mats = []
    for entry in _lie_u_basis(quiver, m, d):
        X = _unit_x(template, entry)
        cols = []
        for k in range(layout.dim):
            e = [0] * layout.dim
            e[k] = 1
            Phi = layout.from_coords(e)
            D = {
                a.id: X[a.tgt] @ Phi.mats[a.id] - Phi.mats[a.id] @ X[a.src] for a in quiver.arrows
            }
            cols.append(layout.to_coords(RepMult(quiver, m, d, D)))
        mats.append(QMatrix([[cols[j][i] for j in range(layout.dim)] for i in range(layout.dim)], layout.dim))
    rep = GradedRep(layout.weights(), tuple(mats))
    oracle = None
    if all(n == 1 for n in d.values()):
        oracle = OrbitOracle({V_MIN: lambda v: toric_in_U_vmin(layout.from_coords(v))})
    return rep, oracle, layout


def toric_in_U_vmin(Phi: RepMult) -> bool:
    """Is ``Phi = u . Phi^0`` for a unipotent ``u``? Toric ranks only.

    Writing ``u_v = exp(l_v)``, the condition is ``log(Phi_a / Phi_a^0) = l_t - l_s``
    on arrows with nonzero classical part and ``Phi_a = 0`` elsewhere: a
    linear system over Q, one per eps-layer.
    """
    _require_toric(Phi)
    if Phi.m == 0:
        return True
    vs = Phi.quiver.vertices
    rows, rhs = [], []
    for a in Phi.quiver.arrows:
        p = Phi.mats[a.id].entry(0, 0)
        a0 = p.coeffs[0]
        if a0 == 0:
            if not p.is_zero():
                return False
            continue
        L = p.scale(1 / a0).log1p()
        row = [0] * len(vs)
        row[vs.index(a.tgt)] += 1
        row[vs.index(a.src)] -= 1
        rows.append(row)
        rhs.append(L.coeffs[1:])
    if not rows:
        return True
    M = QMatrix(rows, len(vs))
    return all(solve(M, [r[k] for r in rhs]) is not None for k in range(Phi.m))


# -- enumeration helpers ------------------------------------------------------------


def generic_params(quiver: Quiver, candidates: Iterable[Sequence[int]]) -> list[StabilityParam]:
    out = []
    for vals in candidates:
        rho = StabilityParam.on(quiver, vals)
        if is_generic(rho, quiver):
            out.append(rho)
    return out


def toric_instances(quiver: Quiver, m: int, grid: Sequence) -> Iterator[RepMult]:
    """Every toric rep with all coefficients (every layer, every arrow) in ``grid``."""
    grid = [q(x) for x in grid]
    n = len(quiver.arrows) * (m + 1)
    for vals in itertools.product(grid, repeat=n):
        coeffs = {
            a.id: vals[i * (m + 1):(i + 1) * (m + 1)] for i, a in enumerate(quiver.arrows)
        }
        yield toric_rep(quiver, m, coeffs)


def _count_matrices(n: int, total: int) -> Iterator[tuple]:
    """All n x n nonnegative integer matrices (flattened) with entry sum ``total``."""
    slots = n * n

    def rec(i: int, left: int, acc: list):
        if i == slots - 1:
            yield tuple(acc + [left])
            return
        for x in range(left + 1):
            yield from rec(i + 1, left - x, acc + [x])

    if slots:
        yield from rec(0, total, [])


def quivers_up_to_iso(max_vertices: int, max_arrows: int, min_vertices: int = 1) -> list[Quiver]:
    """One quiver per isomorphism class with the given vertex and arrow bounds.

    Loops and parallel arrows are included. Vertices are named ``"0"``, ``"1"``, ...
    and arrows ``"a0"``, ``"a1"``, ... in row-major (source, target) order.
    """
    out = []
    for n in range(min_vertices, max_vertices + 1):
        perms = list(itertools.permutations(range(n)))
        idx = [[[p[i] * n + p[j] for j in range(n)] for i in range(n)] for p in perms]
        for k in range(max_arrows + 1):
            for C in _count_matrices(n, k):
                canonical = True
                for P in idx:
                    # permuted matrix: entry (p(i), p(j)) receives C[i][j]
                    img = [0] * (n * n)
                    for i in range(n):
                        row = P[i]
                        base = i * n
                        for j in range(n):
                            img[row[j]] = C[base + j]
                    if tuple(img) < C:
                        canonical = False
                        break
                if canonical:
                    arrows = []
                    for i in range(n):
                        for j in range(n):
                            for _ in range(C[i * n + j]):
                                arrows.append((f"a{len(arrows)}", str(i), str(j)))
                    out.append(Quiver.of([str(i) for i in range(n)], arrows))
    return out


def two_colour_patterns(max_vertices: int, max_arrows: int, min_vertices: int = 1) -> list[tuple[int, dict]]:
    """Loop-free digraphs with each arrow coloured 1 or 2, at most one arrow per
    ordered pair, up to isomorphism: ``(n, {(i, j): colour})``."""
    out = []
    for n in range(min_vertices, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        perms = list(itertools.permutations(range(n)))
        pos = {p: k for k, p in enumerate(pairs)}
        images = [[pos[(P[i], P[j])] for i, j in pairs] for P in perms]
        for states in itertools.product((0, 1, 2), repeat=len(pairs)):
            if sum(1 for x in states if x) > max_arrows:
                continue
            canonical = True
            for img in images:
                permuted = [0] * len(pairs)
                for k, target in enumerate(img):
                    permuted[target] = states[k]
                if tuple(permuted) < states:
                    canonical = False
                    break
            if canonical:
                out.append((n, {pairs[k]: x for k, x in enumerate(states) if x}))
    return out


def pattern_rep(n: int, colours: Mapping, m: int) -> RepMult:
    """Toric rep with coefficient 1 in layer 0 on colour-1 arrows and 1 in layer 1 only on colour-2 arrows."""
    if m < 1:
        raise ValueError("colour-2 arrows need m >= 1")
    arrows, coeffs = [], {}
    for k, ((i, j), c) in enumerate(sorted(colours.items())):
        aid = f"a{k}"
        arrows.append((aid, str(i), str(j)))
        coeffs[aid] = [1] + [0] * m if c == 1 else [0, 1] + [0] * (m - 1)
    return toric_rep(Quiver.of([str(i) for i in range(n)], arrows), m, coeffs)
