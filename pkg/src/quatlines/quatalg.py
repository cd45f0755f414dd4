"""Quaternions a + b i + c j + d k with coefficients in Q(sqrt2, sqrt3, sqrt5).

A quaternion is held as 32 integer numerators over a single positive
denominator: index ``8*p + m`` is the coefficient of unit ``p`` (0=1, 1=i,
2=j, 3=k) times basis radical ``m`` of the field (bitmask order, see
:mod:`quatlines.numfield`).  The flat layout lets matrix code accumulate
whole dot products before a single gcd reduction.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from . import numfield
from .numfield import FieldElem, _W

__all__ = [
    "Quaternion",
    "quat_mul",
    "quat_norm_conj_inv",
    "quat_order",
    "QZERO",
    "QONE",
    "QI",
    "QJ",
    "QK",
    "ORDER_CAP",
]

ORDER_CAP = 240

# e_p * e_q = sign * e_r for units (1, i, j, k)
_UNIT_MUL = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}


def _build_table():
    table = []
    for ia in range(32):
        p, m1 = divmod(ia, 8)
        row = []
        for ib in range(32):
            q, m2 = divmod(ib, 8)
            r, s = _UNIT_MUL[p, q]
            row.append((8 * r + (m1 ^ m2), s * _W[m1 & m2]))
        table.append(row)
    return tuple(tuple(row) for row in table)


_T = _build_table()
_CONJ_SIGN = (1,) * 8 + (-1,) * 24


def _mul_acc(acc, x, y):
    """acc += x*y on raw 32-int numerator vectors."""
    ys = [(j, v) for j, v in enumerate(y) if v]
    if not ys:
        return
    for i, u in enumerate(x):
        if u:
            row = _T[i]
            for j, v in ys:
                t, mu = row[j]
                acc[t] += u * v * mu


def _reduce(v, d):
    if d < 0:
        v = [-x for x in v]
        d = -d
    g = math.gcd(d, *v)
    if g != 1:
        v = [x // g for x in v]
        d //= g
    return tuple(v), d


def _coerce_field(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Rational)):
        return FieldElem(x)
    raise TypeError(f"cannot use {type(x).__name__} as a field element")


class Quaternion:
    """Quaternion over Q(sqrt2, sqrt3, sqrt5); immutable and hashable."""

    __slots__ = ("_v", "_d", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        parts = [_coerce_field(x) for x in (a, b, c, d)]
        den = math.lcm(*(p._d for p in parts))
        v = []
        for p in parts:
            s = den // p._d
            v.extend(x * s for x in p._c)
        self._v, self._d = _reduce(v, den)
        self._hash = None

    @classmethod
    def _raw(cls, v, d):
        obj = object.__new__(cls)
        obj._v, obj._d = _reduce(v, d)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Quaternion):
            return x
        return cls(_coerce_field(x))

    # -- parts -----------------------------------------------------------

    def _part(self, p):
        return FieldElem._raw(list(self._v[8 * p: 8 * p + 8]), self._d)

    @property
    def a(self):
        return self._part(0)

    @property
    def b(self):
        return self._part(1)

    @property
    def c(self):
        return self._part(2)

    @property
    def d(self):
        return self._part(3)

    @property
    def parts(self):
        return tuple(self._part(p) for p in range(4))

    @property
    def real(self):
        return self._part(0)

    def is_zero(self):
        return not any(self._v)

    def is_real(self):
        return not any(self._v[8:])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except TypeError:
                return NotImplemented
        da, db = self._d, other._d
        if da == db:
            return Quaternion._raw([x + y for x, y in zip(self._v, other._v)], da)
        return Quaternion._raw(
            [x * db + y * da for x, y in zip(self._v, other._v)], da * db
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(Quaternion)
        obj._v = tuple(-x for x in self._v)
        obj._d = self._d
        obj._hash = None
        return obj

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except TypeError:
                return NotImplemented
        return quat_mul(self, other)

    def __rmul__(self, other):
        try:
            other = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return quat_mul(other, self)

    def __truediv__(self, other):
        # right division: self * other^-1
        other = Quaternion.coerce(other)
        inv = other.inv()
        if inv is None:
            raise ZeroDivisionError("quaternion division by zero")
        return quat_mul(self, inv)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            inv = self.inv()
            if inv is None:
                raise ZeroDivisionError("zero quaternion to a negative power")
            return inv ** (-n)
        result, base = QONE, self
        while n:
            if n & 1:
                result = quat_mul(result, base)
            base = quat_mul(base, base)
            n >>= 1
        return result

    def conj(self):
        obj = object.__new__(Quaternion)
        obj._v = tuple(x * s for x, s in zip(self._v, _CONJ_SIGN))
        obj._d = self._d
        obj._hash = None
        return obj

    def norm(self):
        """a^2 + b^2 + c^2 + d^2 (the squared absolute value)."""
        a, b, c, d = self.parts
        return a * a + b * b + c * c + d * d

    def inv(self):
        """Inverse, or None for the zero quaternion."""
        n = self.norm()
        if not n:
            return None
        ninv = numfield.field_inv(n)
        return self.conj() * ninv

    def order(self, cap=ORDER_CAP):
        return quat_order(self, cap)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = Quaternion.coerce(other)
            except TypeError:
                return NotImplemented
        return self._d == other._d and self._v == other._v

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._v, self._d))
        return self._hash

    def __bool__(self):
        return any(self._v)

    # -- text ------------------------------------------------------------

    def __str__(self):
        out = []
        for unit, part in zip(("", "i", "j", "k"), self.parts):
            if not part:
                continue
            s = str(part)
            if unit:
                s = f"({s})*{unit}" if (" " in s or "/" in s) else (
                    unit if s == "1" else "-" + unit if s == "-1" else f"{s}*{unit}"
                )
            out.append(s)
        return " + ".join(out) if out else "0"

    def __repr__(self):
        return f"Quaternion({str(self)!r})"

    def to_json(self):
        return [p.to_json() for p in self.parts]

    @classmethod
    def from_json(cls, data):
        return cls(*(FieldElem.from_json(p) for p in data))


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p*q."""
    acc = [0] * 32
    _mul_acc(acc, p._v, q._v)
    return Quaternion._raw(acc, p._d * q._d)


def quat_norm_conj_inv(q: Quaternion):
    """Return ``(norm, conj, inv)``; ``inv`` is None when q = 0."""
    n = q.norm()
    conj = q.conj()
    inv = conj * numfield.field_inv(n) if n else None
    return n, conj, inv


def quat_order(q: Quaternion, cap: int = ORDER_CAP):
    """Multiplicative order of a unit quaternion, or None if it exceeds ``cap``."""
    if q.norm() != 1:
        raise ValueError(f"quat_order needs a unit quaternion, got norm {q.norm()}")
    x = q
    for n in range(1, cap + 1):
        if x == QONE:
            return n
        x = quat_mul(x, q)
    return None


QZERO = Quaternion(0)
QONE = Quaternion(1)
QI = Quaternion(0, 1)
QJ = Quaternion(0, 0, 1)
QK = Quaternion(0, 0, 0, 1)
