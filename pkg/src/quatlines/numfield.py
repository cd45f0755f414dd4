"""Exact arithmetic in the real multiquadratic field F = Q(sqrt2, sqrt3, sqrt5).

An element is stored as eight integer numerators over one positive common
denominator, in gcd-reduced form, so that equal values always have equal
representations (and hash equal).  Internally the basis is indexed by a
bitmask ``m`` over the primes (2, 3, 5): bit 0 <-> sqrt2, bit 1 <-> sqrt3,
bit 2 <-> sqrt5, so that

    sqrt(P(m1)) * sqrt(P(m2)) = P(m1 & m2) * sqrt(P(m1 ^ m2))

where ``P(m)`` is the product of the primes selected by ``m``.  The public
coordinate order is the one used in text and JSON output:

    (1, r2, r3, r5, r6, r10, r15, r30)
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "FieldElem",
    "BASIS_RADICANDS",
    "field_mul",
    "field_inv",
    "field_approx",
    "sqrt",
    "ZERO",
    "ONE",
]

_PRIMES = (2, 3, 5)
# radicand of basis element with bitmask m
_RAD = tuple(
    math.prod(p for bit, p in enumerate(_PRIMES) if m >> bit & 1) for m in range(8)
)
# P(m1 & m2) lookup, i.e. the integer factor produced by multiplying basis elements
_W = _RAD

# public (text/JSON) order of the basis, as bitmasks
_PUBLIC = (0, 1, 2, 4, 3, 5, 6, 7)
BASIS_RADICANDS = tuple(_RAD[m] for m in _PUBLIC)  # (1, 2, 3, 5, 6, 10, 15, 30)
_MASK_OF_RADICAND = {r: m for m, r in enumerate(_RAD)}

# Galois automorphisms sqrt(p) -> -sqrt(p): sign per mask
_SIGMA = {
    p: tuple(-1 if m >> bit & 1 else 1 for m in range(8))
    for bit, p in enumerate(_PRIMES)
}


def _reduce(c, d):
    """Return the canonical (coords, den) pair for numerators ``c`` over ``d``."""
    if d < 0:
        c = [-x for x in c]
        d = -d
    g = math.gcd(d, *c)
    if g != 1:
        c = [x // g for x in c]
        d //= g
    return tuple(c), d


class FieldElem:
    """An element of Q(sqrt2, sqrt3, sqrt5).

    Construct from an int/Fraction (``FieldElem(3)``), from a mapping of
    radicand to rational coefficient (``FieldElem({1: 1, 5: 1}) / 2`` is the
    golden ratio), or from eight public-order coordinates.
    """

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, FieldElem):
            self._c, self._d = value._c, value._d
        elif isinstance(value, (int, Rational)):
            q = Fraction(value)
            self._c = (q.numerator, 0, 0, 0, 0, 0, 0, 0)
            self._d = q.denominator
        elif isinstance(value, dict):
            terms = {}
            for rad, coef in value.items():
                if rad not in _MASK_OF_RADICAND:
                    raise ValueError(f"radicand {rad} is not a basis element")
                terms[_MASK_OF_RADICAND[rad]] = Fraction(coef)
            self._c, self._d = _from_fractions(terms)
        else:
            coords = list(value)
            if len(coords) != 8:
                raise ValueError("expected 8 coordinates")
            terms = {m: Fraction(x) for m, x in zip(_PUBLIC, coords)}
            self._c, self._d = _from_fractions(terms)
        self._hash = None

    @classmethod
    def _raw(cls, c, d):
        obj = object.__new__(cls)
        obj._c, obj._d = _reduce(c, d)
        obj._hash = None
        return obj

    # -- accessors -------------------------------------------------------

    @property
    def coords(self):
        """Coordinates in the public basis order as Fractions."""
        return tuple(Fraction(self._c[m], self._d) for m in _PUBLIC)

    def coeff(self, radicand):
        """Rational coefficient of sqrt(radicand)."""
        return Fraction(self._c[_MASK_OF_RADICAND[radicand]], self._d)

    def is_zero(self):
        return not any(self._c)

    def is_rational(self):
        return not any(self._c[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._c[0], self._d)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FieldElem):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, da = self._c, self._d
        b, db = other._c, other._d
        if da == db:
            return FieldElem._raw([x + y for x, y in zip(a, b)], da)
        return FieldElem._raw([x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(FieldElem)
        obj._c = tuple(-x for x in self._c)
        obj._d = self._d
        obj._hash = None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, FieldElem):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return field_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return field_mul(self, field_inv(other))

    def __rtruediv__(self, other):
        return field_mul(_coerce(other), field_inv(self))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return field_inv(self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, p):
        """Image under the automorphism sqrt(p) -> -sqrt(p), p in {2, 3, 5}."""
        s = _SIGMA[p]
        obj = object.__new__(FieldElem)
        obj._c = tuple(x * e for x, e in zip(self._c, s))
        obj._d = self._d
        obj._hash = None
        return obj

    def inv(self):
        return field_inv(self)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self._d == other._d and self._c == other._c
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._d == other._d and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._c[0], self._d))
            else:
                self._hash = hash((self._c, self._d))
        return self._hash

    def __bool__(self):
        return any(self._c)

    def sign(self):
        """-1, 0 or 1, decided exactly (interval refinement terminates for nonzero values)."""
        if not any(self._c):
            return 0
        if self.is_rational():
            return 1 if self._c[0] > 0 else -1
        prec = 32
        while True:
            lo, hi = field_approx(self, prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        lo, hi = field_approx(self, 60)
        return float((lo + hi) / 2)

    # -- text ------------------------------------------------------------

    def canonical_str(self):
        """Full eight-term form ``q0 + q1*r2 + ... + q7*r30``."""
        parts = []
        for rad, q in zip(BASIS_RADICANDS, self.coords):
            frac = f"{q.numerator}/{q.denominator}"
            parts.append(frac if rad == 1 else f"{frac}*r{rad}")
        return " + ".join(parts)

    def to_json(self):
        return [f"{q.numerator}/{q.denominator}" for q in self.coords]

    @classmethod
    def from_json(cls, data):
        return cls([Fraction(s) for s in data])

    @classmethod
    def parse(cls, text):
        """Parse the canonical form (or any sum of ``q`` and ``q*rN`` terms)."""
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty field element")
        terms = {}
        pos = 0
        for m in _TERM_RE.finditer(body):
            if m.start() != pos or m.group(0) == "":
                break
            pos = m.end()
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if m.group("sign") == "-":
                coef = -coef
            rad = int(m.group("rad")) if m.group("rad") else 1
            if rad not in _MASK_OF_RADICAND:
                raise ValueError(f"unknown radical r{rad} in {text!r}")
            terms[rad] = terms.get(rad, 0) + coef
        if pos != len(body):
            raise ValueError(f"cannot parse field element at {body[pos:]!r}")
        return cls(terms)

    def __str__(self):
        out = []
        for rad, q in zip(BASIS_RADICANDS, self.coords):
            if not q:
                continue
            if rad == 1:
                term = str(q)
            elif q == 1:
                term = f"r{rad}"
            elif q == -1:
                term = f"-r{rad}"
            else:
                term = f"{q}*r{rad}"
            out.append(term)
        if not out:
            return "0"
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"FieldElem({str(self)!r})"


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?(?P<coef>\d+(?:/\d+)?)?(?:\*?r(?P<rad>\d+))?"
)


def _from_fractions(terms):
    d = math.lcm(*(q.denominator for q in terms.values())) if terms else 1
    c = [0] * 8
    for m, q in terms.items():
        c[m] += q.numerator * (d // q.denominator)
    return _reduce(c, d)


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Rational)):
        return FieldElem(x)
    return None


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """Exact product, re-expressed in the canonical basis."""
    x, y = a._c, b._c
    r = [0, 0, 0, 0, 0, 0, 0, 0]
    ys = [(j, v) for j, v in enumerate(y) if v]
    for i, u in enumerate(x):
        if u:
            for j, v in ys:
                r[i ^ j] += u * v * _W[i & j]
    return FieldElem._raw(r, a._d * b._d)


def field_inv(a: FieldElem) -> FieldElem:
    """Exact inverse via the tower Q < Q(r2) < Q(r2, r3) < F.

    Multiplying by the conjugate over each quadratic step leaves an element
    of the next smaller field, ending in a nonzero rational.
    """
    if not a:
        raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3, sqrt5)")
    c5 = a.conjugate(5)
    n1 = a * c5  # in Q(r2, r3)
    c3 = n1.conjugate(3)
    n2 = n1 * c3  # in Q(r2)
    c2 = n2.conjugate(2)
    n3 = n2 * c2  # rational
    q = n3.to_fraction()
    num = c5 * c3 * c2
    return FieldElem._raw([x * q.denominator for x in num._c], num._d * q.numerator)


def field_approx(a: FieldElem, precision: int) -> tuple[Fraction, Fraction]:
    """Rational interval ``(lo, hi)`` containing ``a`` with ``hi - lo <= 2**-precision``."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    c, d = a._c, a._d
    total = sum(abs(x) for m, x in enumerate(c) if m)
    k = precision + (total // d).bit_length() + 1
    scale = 1 << k
    lo = hi = c[0] * scale
    for m in range(1, 8):
        x = c[m]
        if not x:
            continue
        s = math.isqrt(_RAD[m] << (2 * k))
        if x > 0:
            lo += x * s
            hi += x * (s + 1)
        else:
            lo += x * (s + 1)
            hi += x * s
    return Fraction(lo, d * scale), Fraction(hi, d * scale)


def sqrt(n) -> FieldElem:
    """Square root of a nonnegative rational whose squarefree part divides 30."""
    q = Fraction(n)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return ZERO
    # sqrt(p/q) = sqrt(p*q)/q
    m = q.numerator * q.denominator
    square, free = 1, 1
    for p in _PRIMES:
        while m % (p * p) == 0:
            m //= p * p
            square *= p
        if m % p == 0:
            m //= p
            free *= p
    root = math.isqrt(m)
    if root * root != m:
        raise ValueError(f"sqrt({n}) is not in Q(sqrt2, sqrt3, sqrt5)")
    return FieldElem({free: Fraction(square * root, q.denominator)})


ZERO = FieldElem(0)
ONE = FieldElem(1)
