"""Vectors and matrices over the quaternions.

Conventions: H^d is a right H-module, so vectors are columns with scalars
acting on the right, matrices act on the left, and

    <v, w> = sum_j conj(v_j) w_j,     <v a, w b> = conj(a) <v, w> b.

Matrices and vectors store every entry as raw quaternion numerators over a
single shared denominator (see :mod:`quatlines.quatalg`); that keeps products
cheap enough to close groups of order 1440 exactly.
"""
from __future__ import annotations

import math

from .numfield import FieldElem, ONE as FONE, ZERO as FZERO
from .quatalg import Quaternion, QZERO, QONE, _mul_acc, _CONJ_SIGN

__all__ = [
    "QuatVector",
    "QuatMatrix",
    "ComplexMatrix",
    "inner_product",
    "angle",
    "complexify",
    "complexify_vec",
    "quat_rank",
    "perp_vector",
    "canonical_line",
    "line_key",
    "DimensionError",
]


class DimensionError(ValueError):
    pass


def _reduce_flat(entries, d):
    """Divide a list of 32-int lists and their shared denominator by the overall gcd."""
    if d < 0:
        entries = [[-x for x in e] for e in entries]
        d = -d
    g = d
    for e in entries:
        if g == 1:
            break
        g = math.gcd(g, *e)
    if g != 1:
        entries = [tuple(x // g for x in e) for e in entries]
        d //= g
    else:
        entries = [tuple(e) for e in entries]
    return tuple(entries), d


def _common(quats):
    den = math.lcm(*(q._d for q in quats)) if quats else 1
    return [[x * (den // q._d) for x in q._v] for q in quats], den


class _QuatArray:
    """Shared storage for vectors and matrices."""

    __slots__ = ("_e", "_d", "_hash", "_key")

    def _entry(self, idx):
        return Quaternion._raw(list(self._e[idx]), self._d)

    def entries(self):
        return [self._entry(i) for i in range(len(self._e))]

    def is_zero(self):
        return not any(any(e) for e in self._e)

    @property
    def key(self):
        """Canonical byte string: equal keys iff equal arrays."""
        if self._key is None:
            flat = ",".join(",".join(map(str, e)) for e in self._e)
            self._key = f"{self._shape()}|{self._d}|{flat}".encode()
        return self._key

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self._shape() == other._shape()
            and self._d == other._d
            and self._e == other._e
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shape(), self._d, self._e))
        return self._hash


class QuatVector(_QuatArray):
    """Column vector in H^d."""

    __slots__ = ("dim",)

    def __init__(self, entries):
        qs = [Quaternion.coerce(x) for x in entries]
        if not qs:
            raise DimensionError("vector needs at least one entry")
        raw, den = _common(qs)
        self.dim = len(qs)
        self._e, self._d = _reduce_flat(raw, den)
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, entries, d):
        obj = object.__new__(cls)
        obj.dim = len(entries)
        obj._e, obj._d = _reduce_flat(entries, d)
        obj._hash = None
        obj._key = None
        return obj

    def _shape(self):
        return (self.dim,)

    def __getitem__(self, i):
        return self._entry(i)

    def __iter__(self):
        return iter(self.entries())

    def __len__(self):
        return self.dim

    def __mul__(self, alpha):
        """Right scalar action v*alpha."""
        alpha = Quaternion.coerce(alpha)
        out = []
        for e in self._e:
            acc = [0] * 32
            _mul_acc(acc, e, alpha._v)
            out.append(acc)
        return QuatVector._raw(out, self._d * alpha._d)

    def __add__(self, other):
        _check_dims(self.dim, other.dim)
        da, db = self._d, other._d
        return QuatVector._raw(
            [[x * db + y * da for x, y in zip(e, f)] for e, f in zip(self._e, other._e)],
            da * db,
        )

    def __neg__(self):
        return QuatVector._raw([[-x for x in e] for e in self._e], self._d)

    def __sub__(self, other):
        return self + (-other)

    def first_nonzero(self):
        for i, e in enumerate(self._e):
            if any(e):
                return i
        return None

    def __str__(self):
        return "(" + ", ".join(str(q) for q in self.entries()) + ")^T"

    def __repr__(self):
        return f"QuatVector({self!s})"

    def to_json(self):
        return [q.to_json() for q in self.entries()]

    @classmethod
    def from_json(cls, data):
        return cls([Quaternion.from_json(q) for q in data])


class QuatMatrix(_QuatArray):
    """rows x cols matrix over H acting on the left of column vectors."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrix needs at least one entry")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        qs = [Quaternion.coerce(x) for r in rows for x in r]
        raw, den = _common(qs)
        self.rows, self.cols = len(rows), ncols
        self._e, self._d = _reduce_flat(raw, den)
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, rows, cols, entries, d):
        obj = object.__new__(cls)
        obj.rows, obj.cols = rows, cols
        obj._e, obj._d = _reduce_flat(entries, d)
        obj._hash = None
        obj._key = None
        return obj

    @classmethod
    def identity(cls, n):
        return cls([[QONE if i == j else QZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else QZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        n = columns[0].dim
        return cls([[c[i] for c in columns] for i in range(n)])

    def _shape(self):
        return (self.rows, self.cols)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._entry(i * self.cols + j)

    def row(self, i):
        return [self[i, j] for j in range(self.cols)]

    def column(self, j):
        return QuatVector([self[i, j] for i in range(self.rows)])

    def tolist(self):
        return [self.row(i) for i in range(self.rows)]

    def __matmul__(self, other):
        if isinstance(other, QuatMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            a, b, n, m = self._e, other._e, self.cols, other.cols
            out = []
            for i in range(self.rows):
                for j in range(m):
                    acc = [0] * 32
                    for k in range(n):
                        _mul_acc(acc, a[i * n + k], b[k * m + j])
                    out.append(acc)
            return QuatMatrix._raw(self.rows, m, out, self._d * other._d)
        if isinstance(other, QuatVector):
            if self.cols != other.dim:
                raise DimensionError(f"cannot apply {self.shape} to dim {other.dim}")
            a, b, n = self._e, other._e, self.cols
            out = []
            for i in range(self.rows):
                acc = [0] * 32
                for k in range(n):
                    _mul_acc(acc, a[i * n + k], b[k])
                out.append(acc)
            return QuatVector._raw(out, self._d * other._d)
        return NotImplemented

    __mul__ = __matmul__

    def scale(self, alpha):
        """Entrywise left multiplication by a scalar (alpha * M)."""
        alpha = Quaternion.coerce(alpha)
        out = []
        for e in self._e:
            acc = [0] * 32
            _mul_acc(acc, alpha._v, e)
            out.append(acc)
        return QuatMatrix._raw(self.rows, self.cols, out, self._d * alpha._d)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        da, db = self._d, other._d
        return QuatMatrix._raw(
            self.rows,
            self.cols,
            [[x * db + y * da for x, y in zip(e, f)] for e, f in zip(self._e, other._e)],
            da * db,
        )

    def __neg__(self):
        return QuatMatrix._raw(self.rows, self.cols, [[-x for x in e] for e in self._e], self._d)

    def __sub__(self, other):
        return self + (-other)

    def adjoint(self):
        """Conjugate transpose."""
        out = []
        for j in range(self.cols):
            for i in range(self.rows):
                e = self._e[i * self.cols + j]
                out.append([x * s for x, s in zip(e, _CONJ_SIGN)])
        return QuatMatrix._raw(self.cols, self.rows, out, self._d)

    def is_identity(self):
        return self == QuatMatrix.identity(self.rows) if self.rows == self.cols else False

    def is_unitary(self):
        return self.rows == self.cols and (self.adjoint() @ self).is_identity()

    def inverse(self):
        """Two-sided inverse by Gauss-Jordan elimination over H."""
        if self.rows != self.cols:
            raise DimensionError("only square matrices are invertible")
        n = self.rows
        aug = [self.row(i) + [QONE if i == j else QZERO for j in range(n)] for i in range(n)]
        rank, _ = _row_reduce(aug, n)
        if rank < n:
            raise ZeroDivisionError("singular quaternion matrix")
        return QuatMatrix([r[n:] for r in aug])

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuatMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __str__(self):
        return "[" + "; ".join(", ".join(str(q) for q in self.row(i)) for i in range(self.rows)) + "]"

    def __repr__(self):
        return f"QuatMatrix({self!s})"

    def to_json(self):
        return [[q.to_json() for q in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data):
        return cls([[Quaternion.from_json(q) for q in row] for row in data])


def _check_dims(m, n):
    if m != n:
        raise DimensionError(f"dimension mismatch: {m} vs {n}")


def inner_product(v: QuatVector, w: QuatVector) -> Quaternion:
    """<v, w> = sum conj(v_j) w_j."""
    _check_dims(v.dim, w.dim)
    acc = [0] * 32
    for e, f in zip(v._e, w._e):
        _mul_acc(acc, [x * s for x, s in zip(e, _CONJ_SIGN)], f)
    return Quaternion._raw(acc, v._d * w._d)


def norm2(v: QuatVector) -> FieldElem:
    """<v, v> as a field element."""
    return inner_product(v, v).real


def angle(v: QuatVector, w: QuatVector) -> FieldElem:
    """|<v,w>|^2 / (<v,v><w,w>), which lies in [0, 1]."""
    nv, nw = norm2(v), norm2(w)
    if not nv or not nw:
        raise ValueError("angle is undefined for the zero vector")
    return inner_product(v, w).norm() / (nv * nw)


# -- complexification ---------------------------------------------------


class ComplexMatrix:
    """Matrix over F(i), entries stored as (re, im) pairs of field elements."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows):
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.entries = tuple(
            tuple((FieldElem(re), FieldElem(im)) for re, im in row) for row in rows
        )

    @classmethod
    def identity(cls, n):
        return cls([[(1 if i == j else 0, 0) for j in range(n)] for i in range(n)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                re, im = FZERO, FZERO
                for k in range(self.cols):
                    a, b = self.entries[i][k]
                    c, d = other.entries[k][j]
                    re = re + a * c - b * d
                    im = im + a * d + b * c
                row.append((re, im))
            out.append(row)
        return ComplexMatrix(out)

    def trace(self):
        re = sum((self.entries[i][i][0] for i in range(self.rows)), FZERO)
        im = sum((self.entries[i][i][1] for i in range(self.rows)), FZERO)
        return re, im

    def __eq__(self, other):
        return isinstance(other, ComplexMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ComplexMatrix({[[f'{a} + ({b})i' for a, b in r] for r in self.entries]})"


def _split(q):
    """q = (a + b i) + (c + d i) j  ->  ((a, b), (c, d))."""
    a, b, c, d = q.parts
    return (a, b), (c, d)


def complexify(g: QuatMatrix) -> ComplexMatrix:
    """A + Bj  ->  [[A, -B], [conj(B), conj(A)]]."""
    n, m = g.rows, g.cols
    out = [[None] * (2 * m) for _ in range(2 * n)]
    for i in range(n):
        for j in range(m):
            (a, b), (c, d) = _split(g[i, j])
            out[i][j] = (a, b)
            out[i][m + j] = (-c, -d)
            out[n + i][j] = (c, -d)
            out[n + i][m + j] = (a, -b)
    return ComplexMatrix(out)


def complexify_vec(v: QuatVector) -> ComplexMatrix:
    """z + wj  ->  column (z, conj(w))."""
    top, bottom = [], []
    for q in v.entries():
        (a, b), (c, d) = _split(q)
        top.append([(a, b)])
        bottom.append([(c, -d)])
    return ComplexMatrix(top + bottom)


# -- rank ---------------------------------------------------------------


def _row_reduce(rows, ncols):
    """In-place reduced row echelon form over H using left row operations.

    Pivot: first nonzero entry in column order.  Returns (rank, pivot columns).
    """
    rank = 0
    pivots = []
    nrows = len(rows)
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [inv * x for x in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots


def quat_rank(m: QuatMatrix) -> int:
    """Rank of ``m`` as a map of right H-modules."""
    rows = m.tolist()
    rank, _ = _row_reduce(rows, m.cols)
    return rank


def perp_vector(v: QuatVector) -> QuatVector:
    """A vector orthogonal to v in H^2 with the same norm.

    For v = (a, b) with a != 0 this is (-conj(a)^-1 conj(b) conj(a), conj(a));
    for a = 0 it is (conj(b), 0).
    """
    if v.dim != 2:
        raise DimensionError("perp_vector is defined on H^2 only")
    a, b = v[0], v[1]
    if not a and not b:
        raise ValueError("perp_vector of the zero vector")
    if not a:
        return QuatVector([b.conj(), QZERO])
    ca = a.conj()
    return QuatVector([-(ca.inv() * b.conj() * ca), ca])


# -- lines --------------------------------------------------------------


def canonical_line(v: QuatVector) -> QuatVector:
    """Representative of the line v*H whose first nonzero coordinate is 1."""
    f = v.first_nonzero()
    if f is None:
        raise ValueError("the zero vector spans no line")
    return v * v[f].inv()


def line_key(v: QuatVector) -> bytes:
    return canonical_line(v).key
