"""Exact rational linear algebra and matrices over truncated polynomial rings.

Scalars are :class:`fractions.Fraction`. Vectors are tuples of fractions,
matrices are immutable :class:`QMatrix` objects. ``A_m = Q[eps]/(eps^(m+1))``
is modelled by :class:`TruncPoly` and matrices over it by :class:`AmMatrix`,
which is stored as its list of eps-layers ``Phi^0, ..., Phi^m``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

QVector = tuple  # tuple[Fraction, ...]


def q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def qvec(xs: Iterable) -> QVector:
    return tuple(q(x) for x in xs)


def fmt(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class QMatrix:
    """Dense immutable matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(q(x) for x in r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def scalar(cls, n: int, c) -> "QMatrix":
        c = q(c)
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> QVector:
        return self._data[i]

    def col(self, j: int) -> QVector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(x for r in self._data for x in r)

    def __repr__(self):
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._data)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def _check_same_shape(self, other: "QMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-a for a in r] for r in self._data], self.cols)

    def scale(self, c) -> "QMatrix":
        c = q(c)
        return QMatrix([[c * a for a in r] for r in self._data], self.cols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        return QMatrix(
            [[dot(r, c) if self.cols else Fraction(0) for c in ocols] for r in self._data],
            other.cols,
        )

    def apply(self, v: Sequence) -> QVector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match columns")
        return tuple(dot(r, v) for r in self._data)

    def transpose(self) -> "QMatrix":
        return QMatrix([self.col(j) for j in range(self.cols)], self.rows)

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "QMatrix":
        return inverse(self)


def hstack(blocks: Sequence[QMatrix]) -> QMatrix:
    rows = blocks[0].rows
    data = [[] for _ in range(rows)]
    for b in blocks:
        if b.rows != rows:
            raise ValueError("hstack row mismatch")
        for i in range(rows):
            data[i].extend(b.row(i))
    return QMatrix(data, sum(b.cols for b in blocks))


def vstack(blocks: Sequence[QMatrix]) -> QMatrix:
    cols = blocks[0].cols
    data = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("vstack column mismatch")
        data.extend(b.tolist())
    return QMatrix(data, cols)


def _integer_rows(M: QMatrix) -> list[list[int]]:
    out = []
    for r in M.tolist():
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(M: QMatrix) -> int:
    """Exact rank via Bareiss fraction-free elimination on integer rows."""
    A = _integer_rows(M)
    nrows, ncols = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rref(M: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = M.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return A, pivots


def kernel_basis(M: QMatrix) -> list[QVector]:
    """Basis of the right null space ``{x : M x = 0}``."""
    A, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -A[i][f]
        basis.append(tuple(x))
    return basis


def solve(M: QMatrix, b: Sequence) -> QVector | None:
    """One solution of ``M x = b``, or None when inconsistent."""
    b = qvec(b)
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = QMatrix([list(M.row(i)) + [b[i]] for i in range(M.rows)], M.cols + 1)
    A, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = A[i][M.cols]
    return tuple(x)


def inverse(M: QMatrix) -> QMatrix:
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = hstack([M, QMatrix.identity(n)])
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return QMatrix([row[n:] for row in A[:n]], n)


def is_nilpotent_matrix(M: QMatrix) -> bool:
    if not M.is_square():
        raise ValueError("nilpotency is only defined for square matrices")
    P = M
    for _ in range(M.rows - 1):
        if P.is_zero():
            return True
        P = P @ M
    return P.is_zero()


# -- truncated polynomial ring A_m ------------------------------------------


class TruncPoly:
    """Element of ``Q[eps]/(eps^(m+1))``; ``coeffs[i]`` multiplies ``eps**i``."""

    __slots__ = ("m", "coeffs")

    def __init__(self, coeffs: Iterable, m: int | None = None):
        cs = list(qvec(coeffs))
        if m is None:
            m = len(cs) - 1
        if m < 0:
            raise ValueError("multiplicity must be >= 0")
        if len(cs) > m + 1:
            if any(c != 0 for c in cs[m + 1:]):
                raise ValueError("coefficients beyond eps^m must be zero")
            cs = cs[: m + 1]
        cs += [Fraction(0)] * (m + 1 - len(cs))
        self.m = m
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c, m: int) -> "TruncPoly":
        return cls([c], m)

    def __repr__(self):
        terms = [fmt(c) + ("" if i == 0 else f"e^{i}") for i, c in enumerate(self.coeffs) if c]
        return f"TruncPoly(m={self.m}: {' + '.join(terms) or '0'})"

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def _check(self, other: "TruncPoly"):
        if self.m != other.m:
            raise ValueError(f"multiplicity mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly([a + b for a, b in zip(self.coeffs, other.coeffs)], self.m)

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly([a - b for a, b in zip(self.coeffs, other.coeffs)], self.m)

    def __neg__(self) -> "TruncPoly":
        return TruncPoly([-a for a in self.coeffs], self.m)

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        return am_mul(self, other)

    def scale(self, c) -> "TruncPoly":
        c = q(c)
        return TruncPoly([c * a for a in self.coeffs], self.m)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def inverse(self) -> "TruncPoly":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("not a unit in A_m")
        inv = [1 / a0]
        for k in range(1, self.m + 1):
            s = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv.append(-s / a0)
        return TruncPoly(inv, self.m)

    def log1p(self) -> "TruncPoly":
        """``log(self)`` for a unit with constant term 1 (exact, finite series)."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        x = TruncPoly([0] + list(self.coeffs[1:]), self.m)
        out = TruncPoly.const(0, self.m)
        power = TruncPoly.const(1, self.m)
        for k in range(1, self.m + 1):
            power = power * x
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out


def am_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Product in ``A_m``; powers of eps above m are discarded."""
    if a.m != b.m:
        raise ValueError(f"multiplicity mismatch: {a.m} vs {b.m}")
    m = a.m
    out = [Fraction(0)] * (m + 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j in range(m + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return TruncPoly(out, m)


class AmMatrix:
    """Matrix over ``A_m`` stored as layers ``Phi = sum_i Phi^i eps^i``."""

    __slots__ = ("m", "rows", "cols", "layers")

    def __init__(self, layers: Sequence, m: int | None = None):
        ls = [L if isinstance(L, QMatrix) else QMatrix(L) for L in layers]
        if not ls:
            raise ValueError("need at least one layer")
        if m is None:
            m = len(ls) - 1
        shape = ls[0].shape
        for L in ls:
            if L.shape != shape:
                raise ValueError("all layers must share one shape")
        if len(ls) > m + 1:
            if any(not L.is_zero() for L in ls[m + 1:]):
                raise ValueError("layers beyond eps^m must be zero")
            ls = ls[: m + 1]
        if len(ls) < m + 1:
            ls += [QMatrix.zeros(*shape)] * (m + 1 - len(ls))
        self.m = m
        self.rows, self.cols = shape
        self.layers = tuple(ls)

    @classmethod
    def zeros(cls, rows: int, cols: int, m: int) -> "AmMatrix":
        return cls([QMatrix.zeros(rows, cols)], m)

    @classmethod
    def identity(cls, n: int, m: int) -> "AmMatrix":
        return cls([QMatrix.identity(n)], m)

    @classmethod
    def from_entries(cls, grid: Sequence[Sequence[TruncPoly]]) -> "AmMatrix":
        m = grid[0][0].m
        rows, cols = len(grid), len(grid[0])
        layers = [
            QMatrix([[grid[i][j].coeffs[k] for j in range(cols)] for i in range(rows)], cols)
            for k in range(m + 1)
        ]
        return cls(layers, m)

    @classmethod
    def scalar(cls, p: TruncPoly, n: int) -> "AmMatrix":
        return cls([QMatrix.scalar(n, c) for c in p.coeffs], p.m)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> TruncPoly:
        return TruncPoly([L[i, j] for L in self.layers], self.m)

    def entries(self) -> list[list[TruncPoly]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self):
        return f"AmMatrix(m={self.m}, {self.rows}x{self.cols}, layers={list(self.layers)})"

    def __eq__(self, other):
        if not isinstance(other, AmMatrix):
            return NotImplemented
        return self.m == other.m and self.layers == other.layers

    def __hash__(self):
        return hash((self.m, self.layers))

    def _check(self, other: "AmMatrix"):
        if self.m != other.m:
            raise ValueError(f"multiplicity mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "AmMatrix") -> "AmMatrix":
        self._check(other)
        return AmMatrix([a + b for a, b in zip(self.layers, other.layers)], self.m)

    def __sub__(self, other: "AmMatrix") -> "AmMatrix":
        self._check(other)
        return AmMatrix([a - b for a, b in zip(self.layers, other.layers)], self.m)

    def __neg__(self) -> "AmMatrix":
        return AmMatrix([-a for a in self.layers], self.m)

    def __matmul__(self, other: "AmMatrix") -> "AmMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for k in range(self.m + 1):
            acc = QMatrix.zeros(self.rows, other.cols)
            for i in range(k + 1):
                acc = acc + self.layers[i] @ other.layers[k - i]
            out.append(acc)
        return AmMatrix(out, self.m)

    def is_zero(self) -> bool:
        return all(L.is_zero() for L in self.layers)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self.layers[0]) == self.rows

    def inverse(self) -> "AmMatrix":
        """Inverse over ``A_m``; exists iff layer 0 is invertible over Q."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        h0 = inverse(self.layers[0])
        inv = [h0]
        for k in range(1, self.m + 1):
            acc = QMatrix.zeros(self.rows, self.cols)
            for j in range(1, k + 1):
                acc = acc + self.layers[j] @ inv[k - j]
            inv.append(-(h0 @ acc))
        return AmMatrix(inv, self.m)

    def truncate(self, m2: int) -> "AmMatrix":
        if m2 > self.m:
            raise ValueError("cannot truncate to a larger multiplicity")
        return AmMatrix(self.layers[: m2 + 1], m2)

    def extend(self, m2: int) -> "AmMatrix":
        """Extension of scalars from ``A_0`` (only layer 0 is kept)."""
        return AmMatrix([self.layers[0]], m2)

    def embed(self) -> QMatrix:
        return am_matrix_embed(self)


def am_matrix_embed(M: AmMatrix) -> QMatrix:
    """Upper block-triangular Toeplitz matrix with ``Phi^(j-i)`` in block (i, j)."""
    m, r, c = M.m, M.rows, M.cols
    zero = QMatrix.zeros(r, c)
    block_rows = []
    for i in range(m + 1):
        block_rows.append(hstack([M.layers[j - i] if j >= i else zero for j in range(m + 1)]))
    return vstack(block_rows) if r else QMatrix.zeros(0, (m + 1) * c)
