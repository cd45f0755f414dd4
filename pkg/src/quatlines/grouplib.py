"""Finite groups of unitary quaternion matrices.

Groups are closed exactly by breadth-first search from the identity, always
multiplying on the right by the generators in the given order, so element
indices are reproducible.  Everything after closure (multiplication table,
inverses, classes, subgroups) works on integer indices with numpy.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .numfield import ZERO
from .quatalg import Quaternion
from .qlinalg import QuatMatrix, QuatVector, inner_product, norm2, quat_rank
from .linesys import LineSystem, design_defect, orbit_lines

__all__ = [
    "FiniteMatrixGroup",
    "GroupClosureError",
    "ConjugacyClass",
    "Subgroup",
    "close_group",
    "conjugacy_classes",
    "reflections_and_root_lines",
    "is_irreducible",
    "fs_indicator",
    "permutation_action",
    "PermutationAction",
    "cycle_notation",
    "permutation_parity",
    "enumerate_subgroups",
    "reflection_pairs_generating",
    "verify_constants",
    "group_report",
    "save_generators",
    "load_generators",
    "DEFAULT_CAP",
    "PIT_SEED",
]

DEFAULT_CAP = 10000
PIT_SEED = 20240229


class GroupClosureError(RuntimeError):
    """Closure exceeded its cap: the generators are probably mis-entered."""


class FiniteMatrixGroup:
    """A closed finite group of unitary matrices over H.

    ``elements[0]`` is the identity; every other element ``y`` was first found
    as ``elements[parent[y]] @ generators[via[y]]``.
    """

    def __init__(self, generators, elements, parent, via, right, name=""):
        self.generators = list(generators)
        self.elements = elements
        self.parent = np.asarray(parent, dtype=np.int64)
        self.via = np.asarray(via, dtype=np.int64)
        self._right = right
        self._index = {g.key: i for i, g in enumerate(elements)}
        self.name = name
        self._table = None
        self._inv = None
        self._orders = None
        self._ctable = None
        self._classes = None

    # -- basics ----------------------------------------------------------

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def dim(self):
        return self.elements[0].rows

    def index(self, g):
        """Index of matrix ``g`` or None if it is not in the group."""
        return self._index.get(g.key)

    def __contains__(self, g):
        return g.key in self._index

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"FiniteMatrixGroup(order={self.order}, name={self.name!r})"

    @property
    def generator_indices(self):
        return [self.index(g) for g in self.generators]

    # -- derived tables --------------------------------------------------

    @property
    def table(self):
        """Multiplication table: table[x, y] is the index of x @ y."""
        if self._table is None:
            n = self.order
            t = np.empty((n, n), dtype=np.int32)
            t[:, 0] = np.arange(n)
            for y in range(1, n):
                t[:, y] = self._right[self.via[y]][t[:, self.parent[y]]]
            self._table = t
        return self._table

    @property
    def inverses(self):
        if self._inv is None:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int64)
            inv[rows] = cols
            self._inv = inv
        return self._inv

    @property
    def element_orders(self):
        if self._orders is None:
            n = self.order
            t = self.table
            idx = np.arange(n)
            cur = idx.copy()
            orders = np.zeros(n, dtype=np.int64)
            k = 1
            while True:
                done = (cur == 0) & (orders == 0)
                orders[done] = k
                if orders.all():
                    break
                cur = t[cur, idx]
                k += 1
            self._orders = orders
        return self._orders

    @property
    def conj_table(self):
        """conj_table[c, x] is the index of c^-1 x c."""
        if self._ctable is None:
            t, inv = self.table, self.inverses
            self._ctable = np.stack([t[t[inv[c]], c] for c in range(self.order)])
        return self._ctable

    def center(self):
        t = self.table
        gens = self.generator_indices
        mask = np.ones(self.order, dtype=bool)
        for s in gens:
            mask &= t[:, s] == t[s, :]
        return [int(i) for i in np.nonzero(mask)[0]]

    def close_indices(self, gens):
        """Sorted index array of the subgroup generated by element indices ``gens``."""
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        t = self.table
        while frontier.size and gens.size:
            nxt = np.unique(t[np.ix_(frontier, gens)])
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return np.nonzero(seen)[0]

    def subgroup(self, gens, name=""):
        """Exact closure of the given matrices (which must lie in the group)."""
        return close_group(gens, cap=self.order, name=name)

    # -- persistence -----------------------------------------------------

    def to_json(self):
        return {"name": self.name, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data, cap=DEFAULT_CAP):
        gens = [QuatMatrix.from_json(g) for g in data["generators"]]
        return close_group(gens, cap=cap, name=data.get("name", ""))


def close_group(generators, cap: int = DEFAULT_CAP, name: str = "") -> FiniteMatrixGroup:
    """Breadth-first closure of ``generators`` under right multiplication."""
    gens = list(generators)
    if cap < 1:
        raise ValueError("cap must be positive")
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].rows
    for i, g in enumerate(gens):
        if g.shape != (d, d):
            raise ValueError(f"generator {i} has shape {g.shape}, expected {(d, d)}")
        if not g.is_unitary():
            raise ValueError(f"generator {i} is not unitary")
    ident = QuatMatrix.identity(d)
    elements = [ident]
    index = {ident.key: 0}
    parent, via = [0], [0]
    right = [[] for _ in gens]
    i = 0
    while i < len(elements):
        x = elements[i]
        for s, g in enumerate(gens):
            y = x @ g
            k = y.key
            j = index.get(k)
            if j is None:
                if len(elements) >= cap:
                    raise GroupClosureError(
                        f"closure exceeded cap {cap}: generators may be mis-entered or generate an infinite group"
                    )
                j = len(elements)
                index[k] = j
                elements.append(y)
                parent.append(i)
                via.append(s)
            right[s].append(j)
        i += 1
    right = [np.asarray(r, dtype=np.int64) for r in right]
    return FiniteMatrixGroup(gens, elements, parent, via, right, name=name)


# -- conjugacy classes ----------------------------------------------------


@dataclass
class ConjugacyClass:
    representative: int
    size: int
    order: int
    members: list = field(repr=False, default_factory=list)


def conjugacy_classes(G: FiniteMatrixGroup) -> list:
    """Classes sorted by (element order, first member index)."""
    if G._classes is not None:
        return G._classes
    t, inv = G.table, G.inverses
    gens = G.generator_indices
    label = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for x in range(G.order):
        if label[x] >= 0:
            continue
        cid = len(classes)
        label[x] = cid
        members = [x]
        stack = [x]
        while stack:
            y = stack.pop()
            for s in gens:
                z = int(t[t[inv[s], y], s])
                if label[z] < 0:
                    label[z] = cid
                    members.append(z)
                    stack.append(z)
        members.sort()
        classes.append(ConjugacyClass(x, len(members), int(G.element_orders[x]), members))
    classes.sort(key=lambda c: (c.order, c.representative))
    G._classes = classes
    return classes


# -- reflections ---------------------------------------------------------


def _image_vector(m: QuatMatrix):
    for j in range(m.cols):
        col = m.column(j)
        if not col.is_zero():
            return col
    return None


def reflections_and_root_lines(G: FiniteMatrixGroup, elements=None):
    """Reflections (rank(I - g) = 1) and their deduplicated root lines."""
    ident = QuatMatrix.identity(G.dim)
    idx = range(G.order) if elements is None else elements
    refl = []
    roots = LineSystem()
    for i in idx:
        g = G.elements[i]
        m = ident - g
        if m.is_zero():
            continue
        if quat_rank(m) == 1:
            refl.append(int(i))
            roots.add(_image_vector(m))
    return refl, roots


# -- irreducibility by identity testing ---------------------------------


def _random_vector(rng, d):
    while True:
        v = QuatVector([Quaternion(*(rng.randint(-9, 9) for _ in range(4))) for _ in range(d)])
        if not v.is_zero():
            return v


def random_integer_vectors(d, count, seed=PIT_SEED):
    """``count`` nonzero vectors in H^d with integer parts in [-9, 9]."""
    rng = random.Random(seed)
    return [_random_vector(rng, d) for _ in range(count)]


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    trials: int
    witness: object = None
    note: str = ""

    def __bool__(self):
        return self.irreducible


def is_irreducible(G: FiniteMatrixGroup, trials: int = 5, seed=PIT_SEED, elements=None):
    """Probabilistic irreducibility test via the (1,1)-design defect.

    A nonzero defect at any tested vector certifies reducibility; all-zero
    defects mean irreducible with high probability.
    """
    mats = G.elements if elements is None else [G.elements[i] for i in elements]
    for x in random_integer_vectors(G.dim, trials, seed):
        p = design_defect(G, 1, x, elements=mats)
        if p:
            return IrreducibilityVerdict(False, trials, x, "certain: nonzero defect")
    return IrreducibilityVerdict(
        True, trials, None, f"probabilistic: zero defect at {trials} random integer vectors"
    )


# -- Frobenius-Schur indicator --------------------------------------------


def fs_indicator(alpha, squares=None) -> int:
    """(1/|G|) sum_g 2 Re(alpha_{g^2}) for a map g -> alpha_g into unit quaternions.

    ``alpha`` lists alpha_g for every group element.  ``squares[i]`` is the
    index of g_i^2; without it alpha_g^2 is used in place of alpha_{g^2}.
    """
    alpha = list(alpha)
    total = ZERO
    for i, a in enumerate(alpha):
        sq = alpha[squares[i]] if squares is not None else a * a
        total = total + 2 * sq.real
    val = total / len(alpha)
    if not val.is_rational() or val.to_fraction() not in (-1, 0, 1):
        raise ValueError(f"indicator value {val} is not in {{-1, 0, 1}}: not an irreducible character")
    return int(val.to_fraction())


# -- permutation actions --------------------------------------------------


def cycle_notation(perm) -> str:
    """1-based cycle notation, e.g. '(123)(456)'; '()' for the identity."""
    n = len(perm)
    sep = "" if n <= 9 else ","
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(str(j + 1))
            j = int(perm[j])
        out.append("(" + sep.join(cyc) + ")")
    return "".join(out) or "()"


def permutation_parity(perm) -> int:
    """+1 for even, -1 for odd."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class PermutationAction:
    perms: np.ndarray
    kernel: list
    image_order: int

    def of(self, i):
        return self.perms[i]

    def fixed_points(self, i):
        p = self.perms[i]
        return int(np.sum(p == np.arange(len(p))))


def generator_permutation(g: QuatMatrix, lines: LineSystem):
    perm = []
    for v in lines:
        j = lines.index(g @ v)
        if j is None:
            raise ValueError("the group does not permute this line system")
        perm.append(j)
    return np.asarray(perm, dtype=np.int64)


def permutation_action(G: FiniteMatrixGroup, lines: LineSystem) -> PermutationAction:
    """Action of every element on ``lines`` (indexed in the system's order)."""
    gperm = [generator_permutation(g, lines) for g in G.generators]
    n = len(lines)
    perms = np.empty((G.order, n), dtype=np.int64)
    perms[0] = np.arange(n)
    for y in range(1, G.order):
        perms[y] = perms[G.parent[y]][gperm[G.via[y]]]
    kernel = [i for i in range(G.order) if (perms[i] == np.arange(n)).all()]
    image = len({p.tobytes() for p in perms})
    return PermutationAction(perms, kernel, image)


# -- subgroups ------------------------------------------------------------


def _bitset(idx, n):
    b = np.zeros(n, dtype=bool)
    b[idx] = True
    return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")


def _row_bitsets(mask):
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


@dataclass
class Subgroup:
    """A conjugacy class of subgroups, held through one representative."""

    order: int
    elements: np.ndarray = field(repr=False)
    generators: list
    class_size: int
    reducible: bool = False
    maximal_reducible: bool = False
    conjugates: list = field(repr=False, default_factory=list)
    normalizer_order: int = 0

    def matrices(self, G):
        return [G.elements[i] for i in self.elements]

    def generator_matrices(self, G):
        return [G.elements[i] for i in self.generators]


class _PitSums:
    """Shared exact data for fast reducibility tests of many subgroups.

    For fixed integer vectors x the values f(g) = |<x, g x>|^2 are tabulated
    once as integer numerators; a subgroup U is irreducible iff
    d * sum_{g in U} f(g) = |U| <x,x>^2 for every x (with high probability).
    """

    def __init__(self, G, trials, seed):
        self.d = G.dim
        self.rows = []
        for x in random_integer_vectors(G.dim, trials, seed):
            vals = [inner_product(x, g @ x).norm() for g in G.elements]
            den = math.lcm(*(v._d for v in vals))
            nums = [[c * (den // v._d) for c in v._c] for v in vals]
            big = max(abs(c) for r in nums for c in r) * G.order * self.d
            dtype = np.int64 if big < 2**62 else object
            target = (norm2(x) * norm2(x)).to_fraction() * den
            assert target.denominator == 1
            self.rows.append((np.array(nums, dtype=dtype), int(target)))

    def irreducible(self, idx):
        n = len(idx)
        for nums, target in self.rows:
            s = nums[idx].sum(axis=0)
            if int(s[0]) * self.d != n * target or any(int(c) for c in s[1:]):
                return False
        return True


def enumerate_subgroups(G: FiniteMatrixGroup, min_order: int = 1, trials: int = 3, seed=PIT_SEED):
    """All conjugacy classes of subgroups of G, tagged for reducibility.

    Every nontrivial subgroup is <M, g> for a maximal subgroup M and some g,
    so extending class representatives by one element at a time reaches
    every class (including perfect subgroups, which extension by cyclic
    subgroups of prime order cannot build from below).
    """
    n = G.order
    t, ct = G.table, G.conj_table
    known: dict[int, int] = {}
    reps: list[Subgroup] = []

    def register(idx, gens):
        key = _bitset(idx, n)
        if key in known:
            return
        mask = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(n), len(idx))
        mask[rows, ct[:, idx].ravel()] = True
        conj = _row_bitsets(mask)
        normalizer = [c for c in range(n) if conj[c] == key]
        distinct = sorted(set(conj))
        cid = len(reps)
        for b in distinct:
            known[b] = cid
        reps.append(Subgroup(len(idx), idx, list(gens), len(distinct), conjugates=distinct,
                             normalizer_order=len(normalizer)))
        reps[-1]._normalizer = np.asarray(normalizer)

    register(np.array([0]), [])
    k = 0
    while k < len(reps):
        U = reps[k]
        k += 1
        u = U.elements
        inside = np.zeros(n, dtype=bool)
        inside[u] = True
        visited = inside.copy()
        for g in range(n):
            if visited[g]:
                continue
            orbit = np.unique(ct[U._normalizer, g])
            left = np.unique(t[np.ix_(u, orbit)])
            visited[np.unique(t[np.ix_(left, u)])] = True
            gens = U.generators + [g]
            register(G.close_indices(gens), gens)

    reps = [s for s in reps if s.order >= min_order] if min_order > 1 else reps
    reps.sort(key=lambda s: (-s.order, s.class_size, s.generators))
    pit = _PitSums(G, trials, seed)
    for s in reps:
        s.reducible = not pit.irreducible(s.elements)
    red = [s for s in reps if s.reducible]
    for s in red:
        key = s.conjugates[0]
        s.maximal_reducible = not any(
            o.order > s.order and any(b & key == key for b in o.conjugates) for o in red
        )
    return reps


def reflection_pairs_generating(G: FiniteMatrixGroup, reflections=None):
    """Pairs of reflections (as index pairs) that generate all of G."""
    if reflections is None:
        reflections, _ = reflections_and_root_lines(G)
    out = []
    for a, b in combinations(reflections, 2):
        if len(G.close_indices([a, b])) == G.order:
            out.append((a, b))
    return out


# -- named-constant checks ------------------------------------------------


@dataclass
class ConstantCheck:
    name: str
    ok: bool
    detail: str = ""
    informational: bool = False


def verify_constants() -> list:
    """Re-derive the relations between the named matrices and vectors.

    Records flagged ``informational`` document a reference value that is
    known not to satisfy its relation; they do not count as failures.
    """
    from . import constants as C
    from .qlinalg import line_key

    out = []
    uinv = C.u.inverse()
    for j, (a, b) in enumerate(zip(C.BLICHFELDT_A, C.BLICHFELDT_B), start=1):
        out.append(ConstantCheck(f"b{j} = u^-1 a{j} u", uinv @ a @ C.u == b))
    out.append(ConstantCheck(
        "b5 reference form = u^-1 a5 u", uinv @ C.a5 @ C.u == C.B5_REFERENCE,
        "reference form diag(j, j); the relation gives diag(j, -j)", informational=True,
    ))
    AA = C.A.adjoint() @ C.A
    c = QuatMatrix.identity(2).scale(C.A_scalar)
    out.append(ConstantCheck("A*A = cI", AA == c, f"c = {C.A_scalar}"))
    Ainv = C.A.inverse()
    out.append(ConstantCheck("A U_a A^-1 closed form", C.A @ C.U_a @ Ainv == C.AUaAinv))
    out.append(ConstantCheck("A U_b A^-1 closed form", C.A @ C.U_b @ Ainv == C.AUbAinv))
    for j, (v, wj) in enumerate(zip(C.ET_LINES, C.NICE_LINES), start=1):
        out.append(ConstantCheck(f"A v{j} on line w{j}", line_key(C.A @ v) == line_key(wj)))
    for k, expected in ((3, 120), (4, 720), (5, 1440)):
        try:
            order = close_group(C.BLICHFELDT_A[:k], cap=2 * expected).order
        except GroupClosureError:
            order = None
        out.append(ConstantCheck(f"|<a1..a{k}>| = {expected}", order == expected, f"order {order}"))
    return out


# -- reports and files --------------------------------------------------


def group_report(G: FiniteMatrixGroup, lines: LineSystem | None = None):
    """JSON-ready summary: order, center, classes and reflections.

    ``fixed_lines`` per class counts lines of ``lines`` fixed by the class
    representative (by default the orbit of w for 2x2 groups).
    """
    from . import constants as C

    if lines is None and G.dim == 2:
        lines = orbit_lines(G, C.w)
    action = permutation_action(G, lines) if lines is not None else None
    classes = []
    for c in conjugacy_classes(G):
        rec = {"size": c.size, "order": c.order}
        rec["fixed_lines"] = action.fixed_points(c.representative) if action else None
        classes.append(rec)
    refl, roots = reflections_and_root_lines(G)
    orders = sorted({int(G.element_orders[i]) for i in refl})
    return {
        "name": G.name,
        "order": G.order,
        "center": [str(G.elements[i]) for i in G.center()],
        "classes": classes,
        "reflections": {"count": len(refl), "orders": orders, "root_lines": len(roots)},
    }


def save_generators(G: FiniteMatrixGroup, path):
    with open(path, "w") as fh:
        json.dump(G.to_json(), fh, indent=1)


def load_generators(path, cap=DEFAULT_CAP) -> FiniteMatrixGroup:
    with open(path) as fh:
        return FiniteMatrixGroup.from_json(json.load(fh), cap=cap)
