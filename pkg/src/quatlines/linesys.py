"""Systems of quaternionic lines, their angles, and spherical (t,t)-designs.

Everything here works with normalized angles

    angle(v, w) = |<v,w>|^2 / (<v,v> <w,w>)

so vectors never have to be scaled to unit length (which would leave the
field).  A set of n lines in H^d is a (t,t)-design exactly when

    (1/n^2) sum_{j,k} angle(v_j, v_k)^t = c_t(H^d).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .numfield import FieldElem, ZERO
from .qlinalg import QuatVector, angle, canonical_line, inner_product, norm2

__all__ = [
    "LineSystem",
    "AngleReport",
    "DesignCheck",
    "orbit_lines",
    "angle_set",
    "is_t_design",
    "orbit_design_defect",
    "design_constant",
    "angle_shape",
    "special_bound",
    "absolute_bound",
    "design_defect",
    "SHAPES",
]


class LineSystem:
    """An ordered set of distinct lines in H^d.

    ``lines`` holds the canonical representatives (first nonzero coordinate
    equal to 1).  ``counts[i]``, when known, is the number of distinct orbit
    vectors lying on line ``i``.
    """

    def __init__(self, vectors=(), counts=None, transitive=False, label=""):
        self.lines: list[QuatVector] = []
        self._index: dict[bytes, int] = {}
        self.dim = None
        for v in vectors:
            self.add(v)
        self.counts = list(counts) if counts is not None else None
        self.transitive = transitive
        self.label = label

    def add(self, v):
        """Add the line of ``v``; return its index (existing or new)."""
        c = canonical_line(v)
        if self.dim is None:
            self.dim = c.dim
        elif c.dim != self.dim:
            raise ValueError("all lines must live in the same H^d")
        k = c.key
        if k not in self._index:
            self._index[k] = len(self.lines)
            self.lines.append(c)
        return self._index[k]

    def index(self, v):
        """Index of the line of ``v`` or None."""
        return self._index.get(canonical_line(v).key)

    def __contains__(self, v):
        return self.index(v) is not None

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]

    def keys(self):
        return frozenset(self._index)

    def same_lines(self, other):
        return self.keys() == other.keys()

    def union(self, other, label=""):
        return LineSystem(list(self.lines) + list(other.lines), label=label)

    def __repr__(self):
        return f"LineSystem(n={len(self)}, dim={self.dim}, label={self.label!r})"

    def to_json(self):
        return {"dim": self.dim, "lines": [v.to_json() for v in self.lines], "counts": self.counts}

    @classmethod
    def from_json(cls, data):
        return cls([QuatVector.from_json(v) for v in data["lines"]], counts=data.get("counts"))


def orbit_lines(group, v, order_by=None):
    """Distinct lines of the orbit {g v : g in group}.

    Lines are ordered by first occurrence in the group's element order, unless
    ``order_by`` (a sequence of matrices) is given, in which case the lines of
    ``h v`` for h in ``order_by`` come first in that order.
    """
    if v.is_zero():
        raise ValueError("orbit of the zero vector")
    vectors = [g @ v for g in group.elements]
    if order_by is not None:
        lines = LineSystem([h @ v for h in order_by] + vectors)
    else:
        lines = LineSystem(vectors)
    per_line = [set() for _ in range(len(lines))]
    for x in vectors:
        per_line[lines.index(x)].add(x.key)
    lines.counts = [len(s) for s in per_line]
    lines.transitive = True
    lines.n_vectors = len(set().union(*per_line))
    return lines


@dataclass
class AngleReport:
    """Angles between a system's lines.

    ``per_line[i]`` maps each angle value to its multiplicity among the other
    n-1 lines, seen from line i.
    """

    per_line: list
    values: list
    homogeneous: bool
    equiangular: bool

    @property
    def multiset(self):
        return self.per_line[0] if self.per_line else {}


def _angle_matrix(lines):
    vs = list(lines)
    norms = [norm2(v) for v in vs]
    n = len(vs)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = FieldElem(1)
        for j in range(i + 1, n):
            a = inner_product(vs[i], vs[j]).norm() / (norms[i] * norms[j])
            table[i][j] = table[j][i] = a
    return table


def angle_set(lines) -> AngleReport:
    """Exact angle multisets seen from every line of the system."""
    if len(lines) < 2:
        raise ValueError("need at least two lines")
    table = _angle_matrix(lines)
    per_line = []
    for i, row in enumerate(table):
        per_line.append(dict(Counter(a for j, a in enumerate(row) if j != i)))
    values = sorted(set().union(*per_line), key=float)
    homogeneous = all(p == per_line[0] for p in per_line)
    return AngleReport(per_line, values, homogeneous, equiangular=len(values) == 1)


def design_constant(t: int, d: int) -> Fraction:
    """c_t(H^d) = (2*3*...*(t+1)) / (2d (2d+1) ... (2d+t-1))."""
    if t < 1 or d < 1:
        raise ValueError("t and d must be positive")
    return Fraction(math.prod(range(2, t + 2)), math.prod(range(2 * d, 2 * d + t)))


@dataclass
class DesignCheck:
    t: int
    is_design: bool
    defect: FieldElem
    n: int
    constant: Fraction


def is_t_design(lines, t: int, _table=None) -> DesignCheck:
    """Exact (t,t)-design test using the full double sum.

    The returned defect is ``(1/n) sum_{j,k} angle^t - c_t n``; for an orbit
    this coincides with the single-row defect of :func:`orbit_design_defect`.
    """
    n = len(lines)
    table = _table or _angle_matrix(lines)
    total = ZERO
    for row in table:
        for a in row:
            total = total + a ** t
    c = design_constant(t, lines.dim)
    defect = total / n - c * n
    return DesignCheck(t, not defect, defect, n, c)


def orbit_design_defect(lines, t: int, base: int = 0) -> FieldElem:
    """sum_j angle(v_j, v_base)^t - c_t n, valid for transitive systems."""
    vb = lines[base]
    total = sum((angle(v, vb) ** t for v in lines), ZERO)
    return total - design_constant(t, lines.dim) * len(lines)


# -- bounds -------------------------------------------------------------

SHAPES = ("one", "two", "zero_one", "zero_two")


def _as_fraction(x):
    if isinstance(x, FieldElem):
        return x.to_fraction()
    return Fraction(x)


def angle_shape(angles):
    """Classify an angle set as one of ``SHAPES``."""
    vals = sorted({_as_fraction(a) for a in angles})
    if not vals or any(a < 0 or a >= 1 for a in vals):
        raise ValueError(f"malformed angle set {vals}")
    has_zero = vals[0] == 0
    k = len(vals) - has_zero
    shape = {(False, 1): "one", (False, 2): "two", (True, 1): "zero_one", (True, 2): "zero_two"}.get(
        (has_zero, k)
    )
    if shape is None:
        raise ValueError(f"no bound is tabulated for angle set {vals}")
    return shape, [a for a in vals if a]


def special_bound(angles, d: int):
    """Special bound nu(A) on the number of lines with angle set A in H^d.

    Returns None when the tabulated restriction on alpha + beta fails.
    """
    shape, nz = angle_shape(angles)
    if shape == "one":
        (a,) = nz
        den = 1 - d * a
        return d * (1 - a) / den if den > 0 else None
    if shape == "zero_one":
        (a,) = nz
        den = 3 - (2 * d + 1) * a
        return d * (2 * d + 1) * (1 - a) / den if den > 0 else None
    a, b = nz
    if shape == "two":
        if a + b > Fraction(3, d + 1):
            return None
        num = d * (2 * d + 1) * (1 - a) * (1 - b)
        den = 3 - (2 * d + 1) * (a + b) + d * (2 * d + 1) * a * b
    else:
        if a + b > Fraction(8, 2 * d + 3):
            return None
        num = d * (d + 1) * (2 * d + 1) * (1 - a) * (1 - b)
        den = 6 - 3 * (d + 1) * (a + b) + (d + 1) * (2 * d + 1) * a * b
    return num / den if den > 0 else None


def absolute_bound(shape: str, d: int) -> Fraction:
    if shape == "one":
        return Fraction(d * (2 * d - 1))
    if shape == "two":
        return Fraction(d * d * (4 * d * d - 1), 3)
    if shape == "zero_one":
        return Fraction(d * (4 * d * d - 1), 3)
    if shape == "zero_two":
        return Fraction(d * d * (d + 1) * (4 * d * d - 1), 6)
    raise ValueError(f"unknown angle-set shape {shape!r}")


# -- group design polynomial --------------------------------------------


def design_defect(group, t: int, x: QuatVector, elements=None) -> FieldElem:
    """p_G^(t)(x) = (1/|G|) sum_g |<x, g x>|^(2t) - c_t <x,x>^(2t), exactly.

    ``elements`` optionally restricts the sum to a subset of the group's
    matrices (e.g. a subgroup).
    """
    if x.is_zero():
        raise ValueError("design_defect of the zero vector")
    mats = group.elements if elements is None else elements
    total = ZERO
    for g in mats:
        total = total + inner_product(x, g @ x).norm() ** t
    nx = norm2(x)
    return total / len(mats) - design_constant(t, x.dim) * nx ** (2 * t)
