"""Projective stabilizers of lines and the scalar homomorphism g -> alpha_g.

For a nonzero v the projective stabilizer G_v is the set of g with
g v = v alpha_g for some quaternion alpha_g.  The map g -> alpha_g is a
homomorphism into the unit quaternions; its image is one of the finite
subgroups of H* (cyclic, binary dihedral, binary tetrahedral, octahedral or
icosahedral) and is classified here by order and element-order profile.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .quatalg import Quaternion, QONE
from .qlinalg import QuatVector, canonical_line
from .grouplib import FiniteMatrixGroup, close_group, fs_indicator

__all__ = [
    "ProjectiveStabilizer",
    "HStarClass",
    "projective_stabilizer",
    "classify_hstar",
    "close_quaternions",
    "restriction_characters",
    "HSTAR_PROFILES",
]


HSTAR_PROFILES = {
    "binary_tetrahedral": {1: 1, 2: 1, 3: 8, 4: 6, 6: 8},
    "binary_octahedral": {1: 1, 2: 1, 3: 8, 4: 18, 6: 8, 8: 12},
    "binary_icosahedral": {1: 1, 2: 1, 3: 20, 4: 30, 5: 24, 6: 20, 10: 24},
}
"""Element-order multisets of T, O and I (checked in the tests by closing
explicit generators of each group)."""


@dataclass(frozen=True)
class HStarClass:
    kind: str
    m: int | None = None

    def __str__(self):
        return f"{self.kind}({self.m})" if self.m is not None else self.kind

    @property
    def order(self):
        if self.kind == "cyclic":
            return self.m
        if self.kind == "binary_dihedral":
            return 4 * self.m
        return {"binary_tetrahedral": 24, "binary_octahedral": 48, "binary_icosahedral": 120}[self.kind]


def close_quaternions(gens, cap=1000):
    """Finite group generated by unit quaternions, in BFS order from 1."""
    gens = [Quaternion.coerce(g) for g in gens]
    for g in gens:
        if g.norm() != 1:
            raise ValueError(f"{g} is not a unit quaternion")
    out = [QONE]
    seen = {QONE}
    i = 0
    while i < len(out):
        for g in gens:
            y = out[i] * g
            if y not in seen:
                if len(out) >= cap:
                    raise ValueError("quaternion closure exceeded its cap")
                seen.add(y)
                out.append(y)
        i += 1
    return out


def classify_hstar(scalars) -> HStarClass:
    """Identify a finite subgroup of the unit quaternions."""
    elems = set(Quaternion.coerce(s) for s in scalars)
    if not elems:
        raise ValueError("empty scalar set")
    for a in elems:
        if a.norm() != 1:
            raise ValueError(f"{a} is not a unit quaternion")
    for a in elems:
        for b in elems:
            if a * b not in elems:
                raise ValueError("scalar set is not closed under multiplication")
    n = len(elems)
    orders = Counter(a.order(cap=n) for a in elems)
    abelian = all(a * b == b * a for a in elems for b in elems)
    if abelian:
        if orders.get(n):
            return HStarClass("cyclic", n)
        raise ValueError("abelian but not cyclic: not a subgroup of H*")
    if n % 4 == 0 and orders.get(n // 2):
        return HStarClass("binary_dihedral", n // 4)
    for kind, prof in HSTAR_PROFILES.items():
        if dict(orders) == prof:
            return HStarClass(kind)
    raise ValueError(f"unrecognised order profile {dict(orders)}")


@dataclass
class ProjectiveStabilizer:
    """Stabilizer G_v of the line through ``vector`` with its scalars alpha_g.

    ``indices`` are element indices in ``parent``; ``scalars[n]`` is alpha of
    ``parent[indices[n]]``, taken relative to ``vector`` itself.
    """

    parent: FiniteMatrixGroup
    vector: QuatVector
    indices: list
    scalars: list
    _subgroup: FiniteMatrixGroup | None = field(default=None, repr=False)

    @property
    def order(self):
        return len(self.indices)

    @property
    def line(self):
        return canonical_line(self.vector)

    def scalar_map(self):
        return {self.parent[i].key: a for i, a in zip(self.indices, self.scalars)}

    def alpha(self, g):
        """alpha_g for a matrix g in the stabilizer."""
        i = self.parent.index(g)
        try:
            return self.scalars[self.indices.index(i)]
        except ValueError:
            raise ValueError("matrix is not in this stabilizer") from None

    def character(self, g):
        """2 Re(alpha_g): the character of the action on the line."""
        return 2 * self.alpha(g).real

    def generators(self):
        """A small generating set (element indices), found greedily."""
        gens = []
        have = np.zeros(self.parent.order, dtype=bool)
        have[0] = True
        for i in self.indices:
            if not have[i]:
                gens.append(i)
                have[self.parent.close_indices(gens)] = True
        return gens

    @property
    def subgroup(self):
        if self._subgroup is None:
            mats = [self.parent[i] for i in self.generators()] or [self.parent[0]]
            self._subgroup = close_group(mats, cap=self.order)
        return self._subgroup

    def is_homomorphism(self):
        pos = {i: n for n, i in enumerate(self.indices)}
        t = self.parent.table
        for a, i in enumerate(self.indices):
            for b, j in enumerate(self.indices):
                k = pos.get(int(t[i, j]))
                if k is None or self.scalars[k] != self.scalars[a] * self.scalars[b]:
                    return False
        return True

    def is_faithful(self):
        return len(set(self.scalars)) == len(self.scalars)

    def hstar_class(self):
        return classify_hstar(set(self.scalars))

    def fs_indicator(self):
        pos = {i: n for n, i in enumerate(self.indices)}
        t = self.parent.table
        squares = [pos[int(t[i, i])] for i in self.indices]
        return fs_indicator(self.scalars, squares)

    def classes(self):
        """Conjugacy classes of G_v, as lists of parent indices (sorted by first member)."""
        t, inv = self.parent.table, self.parent.inverses
        members = set(self.indices)
        gens = self.generators()
        done = set()
        out = []
        for x in self.indices:
            if x in done:
                continue
            cls = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for s in gens:
                    z = int(t[t[inv[s], y], s])
                    if z not in cls:
                        cls.add(z)
                        stack.append(z)
            assert cls <= members
            done |= cls
            out.append(sorted(cls))
        return out

    def to_json(self, perp=None):
        chars = {}
        for cls in self.classes():
            rep = cls[0]
            chars[str(self.parent[rep])] = str(self.character(self.parent[rep]))
        return {
            "line": self.line.to_json(),
            "stabilizer_order": self.order,
            "hstar_class": str(self.hstar_class()),
            "faithful": self.is_faithful(),
            "character_values": chars,
        }


def projective_stabilizer(G: FiniteMatrixGroup, v: QuatVector) -> ProjectiveStabilizer:
    """All g in G with g v = v alpha_g, with alpha_g solved from the first nonzero coordinate."""
    if v.is_zero():
        raise ValueError("the zero vector spans no line")
    f = v.first_nonzero()
    vf_inv = v[f].inv()
    indices, scalars = [], []
    for i, g in enumerate(G.elements):
        gv = g @ v
        a = vf_inv * gv[f]
        if gv == v * a:
            indices.append(i)
            scalars.append(a)
    return ProjectiveStabilizer(G, v, indices, scalars)


def restriction_characters(S: ProjectiveStabilizer, Sp: ProjectiveStabilizer):
    """Characters 2 Re(alpha_g) of G_v on the two lines, per class of G_v.

    Returns (chi, chi_perp, distinct) where the dicts are keyed by the parent
    index of each class representative.
    """
    if S.parent is not Sp.parent or sorted(S.indices) != sorted(Sp.indices):
        raise ValueError("the two stabilizers are not the same subgroup")
    chi, chip = {}, {}
    for cls in S.classes():
        g = S.parent[cls[0]]
        chi[cls[0]] = S.character(g)
        chip[cls[0]] = Sp.character(g)
    return chi, chip, chi != chip
