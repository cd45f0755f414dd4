"""Registry of reproduction checks run by ``quatlines verify-paper``.

Each check returns one or more :class:`CheckRecord` objects comparing an
expected value with a freshly computed one.  Checks share a lazily filled
:class:`Context` so groups and subgroup censuses are built once.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, asdict
from fractions import Fraction
from functools import cached_property

from . import constants as C
from .grouplib import (
    close_group,
    conjugacy_classes,
    cycle_notation,
    enumerate_subgroups,
    permutation_action,
    permutation_parity,
    reflection_pairs_generating,
    reflections_and_root_lines,
    verify_constants,
    random_integer_vectors,
    PIT_SEED,
)
from .linesys import (
    LineSystem,
    absolute_bound,
    angle_set,
    angle_shape,
    design_constant,
    design_defect,
    is_t_design,
    orbit_design_defect,
    orbit_lines,
    special_bound,
)
from .fixedlines import search_fixed_lines
from .quatalg import Quaternion
from .qlinalg import QuatMatrix, QuatVector, angle, inner_product, line_key, perp_vector
from .stabilizers import projective_stabilizer, restriction_characters

__all__ = ["CheckRecord", "Context", "CHECKS", "run_checks", "check_ids"]


@dataclass
class CheckRecord:
    name: str
    location: str
    expected: str
    computed: str
    passed: bool
    informational: bool = False

    def to_json(self):
        return asdict(self)


def _rec(name, location, expected, computed, passed=None, informational=False):
    if passed is None:
        passed = expected == computed
    return CheckRecord(name, location, str(expected), str(computed), bool(passed), informational)


def _angles(multiset):
    return {str(k): v for k, v in sorted(multiset.items(), key=lambda kv: float(kv[0]))}


class Context:
    """Shared, lazily computed objects for one verification run."""

    def __init__(self, seed=PIT_SEED, threads=1):
        self.seed = seed
        self.threads = threads
        self._groups = {}
        self._subs = {}

    def group(self, name):
        if name not in self._groups:
            self._groups[name] = close_group(C.GROUP_GENERATORS[name], name=name)
        return self._groups[name]

    def subgroups(self, name):
        if name not in self._subs:
            self._subs[name] = enumerate_subgroups(self.group(name), seed=self.seed)
        return self._subs[name]

    @cached_property
    def six(self):
        G = self.group("h720")
        words = [QuatMatrix.identity(2), C.b1, C.b1 @ C.b1, C.b2, C.b1 @ C.b2, C.b1 @ C.b1 @ C.b2]
        return orbit_lines(G, C.w, order_by=words)

    @cached_property
    def six_perp(self):
        G = self.group("h720")
        words = [QuatMatrix.identity(2), C.b1, C.b1 @ C.b1, C.b2, C.b1 @ C.b2, C.b1 @ C.b1 @ C.b2]
        return orbit_lines(G, C.w_perp, order_by=words)

    @cached_property
    def stab(self):
        G = self.group("h720")
        return projective_stabilizer(G, C.w), projective_stabilizer(G, C.w_perp)


# -- checks ---------------------------------------------------------------

CHECKS = {}


def check(cid):
    def deco(fn):
        CHECKS[cid] = fn
        return fn
    return deco


@check("constants")
def _constants(ctx):
    out = []
    for c in verify_constants():
        out.append(_rec(f"constants: {c.name}", "named constants", True, c.ok,
                        informational=c.informational))
    return out


_ORDERS = {"h24": 24, "h120": 120, "h720": 720, "h1440": 1440}


for _name, _order in _ORDERS.items():
    def _make(name=_name, order=_order):
        def fn(ctx):
            return [_rec(f"group.{name}.order", "group orders of the Blichfeldt chain", order, ctx.group(name).order)]
        return fn
    CHECKS[f"group.{_name}.order"] = _make()


@check("h720")
def _h720_structure(ctx):
    G = ctx.group("h720")
    refl, roots = reflections_and_root_lines(G)
    orders = sorted({int(G.element_orders[i]) for i in refl})
    classes = conjugacy_classes(G)
    center = sorted(str(G[i]) for i in G.center())
    minus = -QuatMatrix.identity(2)
    exp_center = sorted([str(QuatMatrix.identity(2)), str(minus)])
    sizes = tuple(c.size for c in classes)
    cls_orders = tuple(c.order for c in classes)
    three = close_group(C.THREE_REFLECTIONS).order
    pairs = reflection_pairs_generating(G, refl)
    return [
        _rec("h720.reflections", "reflections of H720", "40 of order [3]", f"{len(refl)} of order {orders}"),
        _rec("h720.root_lines", "root lines of H720", 20, len(roots)),
        _rec("h720.center", "centre of H720", exp_center, center),
        _rec("h720.class_sizes", "conjugacy classes of 2.A6", (1, 1, 40, 40, 90, 72, 72, 40, 40, 90, 90, 72, 72), sizes),
        _rec("h720.class_orders", "conjugacy classes of 2.A6", (1, 2, 3, 3, 4, 5, 5, 6, 6, 8, 8, 10, 10), cls_orders),
        _rec("h720.three_reflections", "generation by three reflections", 720, three),
        _rec("h720.no_reflection_pair", "no two reflections generate H720", 0, len(pairs)),
    ]


@check("six")
def _six(ctx):
    L = ctx.six
    a = angle_set(L)
    et = LineSystem(C.ET_LINES)
    eta = angle_set(et)
    AA = C.A.adjoint() @ C.A
    lines_ok = all(line_key(C.A @ v) == line_key(wj) for v, wj in zip(C.ET_LINES, C.NICE_LINES))
    return [
        _rec("six.orbit", "orbit of w under H720", "720 vectors, 6 lines, 120 per line",
             f"{L.n_vectors} vectors, {len(L)} lines, {'/'.join(map(str, sorted(set(L.counts))))} per line"),
        _rec("six.order", "lines ordered as w, b1 w, b1^2 w, b2 w, b1 b2 w, b1^2 b2 w", True,
             [line_key(v) for v in L] == [line_key(v) for v in C.NICE_LINES]),
        _rec("six.angles", "six equiangular lines", {"2/5": 5}, _angles(a.multiset),
             a.homogeneous and _angles(a.multiset) == {"2/5": 5}),
        _rec("six.et_angles", "Et-Taoui vectors", {"2/5": 5}, _angles(eta.multiset),
             eta.homogeneous and _angles(eta.multiset) == {"2/5": 5}),
        _rec("six.A_scalar", "A*A = cI", True, AA == QuatMatrix.identity(2).scale(C.A_scalar)),
        _rec("six.A_lines", "A maps v_j to w_j", True, lines_ok),
    ]


@check("perm")
def _perm(ctx):
    G = ctx.group("h720")
    L = ctx.six
    act = permutation_action(G, L)
    out = []
    for name, g, exp in (("b1", C.b1, "(123)(456)"), ("b2", C.b2, "(14)(36)"),
                         ("b3", C.b3, "(23)(45)"), ("b4", C.b4, "(13)(46)")):
        out.append(_rec(f"perm.{name}", "permutations of the six lines", exp, cycle_notation(act.of(G.index(g)))))
    even = all(permutation_parity(p) == 1 for p in act.perms)
    kernel_ok = sorted(act.kernel) == sorted(G.center())
    out.append(_rec("perm.image", "H720 acts as A6 on the six lines",
                    "order 360, all even, kernel {+-I}",
                    f"order {act.image_order}, {'all even' if even else 'not all even'}, "
                    f"kernel {'{+-I}' if kernel_ok else [str(G[i]) for i in act.kernel]}"))
    # H1440: odd permutation of the six crosses, swapping the two systems
    crosses = [(line_key(a), line_key(b)) for a, b in zip(C.NICE_LINES, C.NICE_LINES_PERP)]
    perp_ok = all(inner_product(a, b).is_zero() for a, b in zip(C.NICE_LINES, C.NICE_LINES_PERP))

    def cross_perm(g):
        perm, swaps = [], []
        for a, b in zip(C.NICE_LINES, C.NICE_LINES_PERP):
            ka = line_key(g @ a)
            j = next(n for n, c in enumerate(crosses) if ka in c)
            perm.append(j)
            swaps.append(ka == crosses[j][1])
        return perm, all(swaps)

    p5, swapped5 = cross_perm(C.b5)
    rw_ok = line_key(C.r @ C.w) == line_key(C.w_perp)
    pr, swappedr = cross_perm(C.r)
    out.append(_rec("perm.h1440_extra", "H1440 extra generator on the crosses",
                    "odd, swaps the two six-line systems",
                    f"{'odd' if permutation_parity(p5) == -1 else 'even'}, {'swaps' if swapped5 else 'does not swap'}",
                    perp_ok and permutation_parity(p5) == -1 and swapped5))
    out.append(_rec("perm.r_w", "reflection r maps w to the line of w_perp", True, rw_ok and swappedr and permutation_parity(pr) == -1))
    return out


@check("design")
def _designs(ctx):
    G720, G1440 = ctx.group("h720"), ctx.group("h1440")
    six = ctx.six
    twelve = six.union(ctx.six_perp)
    mub = LineSystem(C.MUB_VECTORS)
    fifteen = orbit_lines(G720, C.FIDUCIAL_15)
    twenty = orbit_lines(G720, C.FIDUCIAL_20)
    thirty_a = orbit_lines(G1440, C.FIDUCIAL_15)
    thirty_b = orbit_lines(G720, C.FIDUCIAL_30)
    thirty_b1440 = orbit_lines(G1440, C.FIDUCIAL_30)
    out = []
    for name, L, n, t, angles in (
        ("six", six, 6, 2, {"2/5": 5}),
        ("mub", mub, 10, 3, {"0": 1, "1/2": 8}),
        ("twelve", twelve, 12, 3, {"0": 1, "2/5": 5, "3/5": 5}),
        ("fifteen", fifteen, 15, 2, {"1/4": 6, "5/8": 8}),
        ("twenty", twenty, 20, 3, {"0": 1, "1/3": 9, "2/3": 9}),
        ("thirty_doubled", thirty_a, 30, 3, None),
        ("thirty_fiducial", thirty_b, 30, 3, {"0": 1, "1/4": 8, "1/2": 12, "3/4": 8}),
    ):
        a = angle_set(L)
        dc = is_t_design(L, t)
        got = _angles(a.multiset)
        ok = len(L) == n and dc.is_design and a.homogeneous and (angles is None or got == angles)
        out.append(_rec(f"design.{name}", f"{n} lines form a ({t},{t})-design",
                        f"{n} lines, angles {angles or 'any'}, defect 0",
                        f"{len(L)} lines, angles {got}, defect {dc.defect}", ok))
    out.append(_rec("design.six_orbit_form", "orbit form agrees with double sum",
                    is_t_design(six, 3).defect, orbit_design_defect(six, 3)))
    out.append(_rec("design.thirty_coincide", "the two 30-line systems coincide", True, thirty_a.same_lines(thirty_b)))
    out.append(_rec("design.thirty_fiducial_h1440", "the (sqrt2 i, 1+sqrt3) lines are an H1440 orbit",
                    True, thirty_b.same_lines(thirty_b1440)))
    consts = [design_constant(t, 2) for t in (1, 2, 3)]
    out.append(_rec("design.constants", "c_t for d = 2", [Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)], consts))
    return out


_BOUND_ROWS = (
    (6, [Fraction(2, 5)], 6, 6),
    (10, [0, Fraction(1, 2)], 10, 10),
    (12, [0, Fraction(2, 5), Fraction(3, 5)], 12, 30),
    (15, [Fraction(1, 4), Fraction(5, 8)], 15, 20),
    (20, [0, Fraction(1, 3), Fraction(2, 3)], 20, 30),
)


@check("bounds")
def _bounds(ctx):
    out = []
    for n, angles, nu, absb in _BOUND_ROWS:
        shape, _ = angle_shape(angles)
        got_nu = special_bound(angles, 2)
        got_abs = absolute_bound(shape, 2)
        out.append(_rec(f"bounds.{n}", "special and absolute bounds table",
                        f"nu={nu}, abs={absb}, n=nu", f"nu={got_nu}, abs={got_abs}, n={'nu' if got_nu == n else n}",
                        got_nu == nu and got_abs == absb and got_nu == n))
    return out


@check("pit")
def _pit(ctx):
    out = []
    xs = random_integer_vectors(2, 20, ctx.seed)
    for name, t in (("h24", 1), ("h720", 2), ("h1440", 3)):
        G = ctx.group(name)
        vals = [design_defect(G, t, x) for x in xs]
        nz = sum(1 for v in vals if v)
        out.append(_rec(f"pit.{name}.t{t}", f"every {name} orbit is a ({t},{t})-design", "0 nonzero of 20", f"{nz} nonzero of 20"))
    G = ctx.group("h720")
    nz = sum(1 for x in xs[:5] if design_defect(G, 3, x))
    out.append(_rec("pit.h720.t3", "H720 orbits are not all (3,3)-designs", "nonzero at some vector", f"{nz} nonzero of 5", nz > 0))
    return out


@check("stab")
def _stabilizer(ctx):
    G = ctx.group("h720")
    S, Sp = ctx.stab
    refl, _ = reflections_and_root_lines(G, S.indices)
    tau = C.tau
    chi, chip, distinct = restriction_characters(S, Sp)
    out = [
        _rec("stab.order", "stabilizer of w in H720", 120, S.order),
        _rec("stab.reflection_free", "the stabilizer has no reflections", 0, len(refl)),
        _rec("stab.hstar", "scalar image", "binary_icosahedral", str(S.hstar_class())),
        _rec("stab.faithful", "faithful action on the line", True, S.is_faithful()),
        _rec("stab.homomorphism", "alpha_gh = alpha_g alpha_h", True, S.is_homomorphism()),
        _rec("stab.chi_g2", "character on W at g2", 1 / tau, S.character(C.g2)),
        _rec("stab.chi_perp_g2", "character on W_perp at g2", -tau, Sp.character(C.g2)),
        _rec("stab.distinct", "non-isomorphic isotypic components", True, distinct),
        _rec("stab.fs", "Frobenius-Schur indicators", (-1, -1), (S.fs_indicator(), Sp.fs_indicator())),
        _rec("stab.orthogonal", "<w, w_perp> = 0", 0, inner_product(C.w, C.w_perp)),
        _rec("stab.generated_by_b3_g2", "stabilizer = <b3, g2>", True,
             {G[i].key for i in S.indices} == {g.key for g in close_group([C.b3, C.g2]).elements}),
        _rec("stab.alpha_g2", "reference [g2] diagonal", C.REFERENCE_G2_DIAG, (S.alpha(C.g2), Sp.alpha(C.g2))),
        _rec("stab.partner_orders", "orders of g with <b3, g> the whole stabilizer", [3, 5, 6, 10],
             _partner_orders(G, S), informational=True),
        _rec("stab.alpha_b3_reference", "reference [b3] diagonal (not unit)", C.REFERENCE_B3_DIAG,
             (S.alpha(C.b3), Sp.alpha(C.b3)), informational=True),
    ]
    return out


def _partner_orders(G, S):
    b3 = G.index(C.b3)
    return sorted({int(G.element_orders[i]) for i in S.indices
                   if len(G.close_indices([b3, i])) == S.order})


@check("perp")
def _perp(ctx):
    rng = random.Random(ctx.seed)

    def rv():
        while True:
            v = QuatVector([Quaternion(*(rng.randint(-3, 3) for _ in range(4))) for _ in range(2)])
            if not v.is_zero():
                return v

    bad = 0
    for _ in range(1000):
        v, u = rv(), rv()
        if angle(v, u) != angle(perp_vector(v), perp_vector(u)):
            bad += 1
    return [_rec("perp.angles", "angle(v,u) = angle(v_perp,u_perp)", "0 failures of 1000", f"{bad} failures of 1000")]


@check("census")
def _census(ctx):
    out = []
    subs = ctx.subgroups("h720")
    red = [s for s in subs if s.reducible]
    n17 = len([s for s in red if s.order > 3])
    mx = sorted((s.order for s in red if s.maximal_reducible), reverse=True)
    out.append(_rec("census.h720.reducible", "reducible subgroup classes of H720 of order > 3", 17, n17))
    out.append(_rec("census.h720.maximal", "maximal reducible subgroups of H720", [120, 48, 36], mx))
    subs = ctx.subgroups("h1440")
    mx = sorted((s.order for s in subs if s.reducible and s.maximal_reducible), reverse=True)
    out.append(_rec("census.h1440.maximal", "maximal reducible subgroups of H1440", [120, 72, 48, 48, 24], mx))
    return out


@check("fixed")
def _fixed(ctx):
    found = search_fixed_lines([C.b3, C.g2], seed=ctx.seed % 2**32, threads=ctx.threads)
    keys = sorted(line_key(c.exact).hex() for c in found if c.certified)
    want = sorted(line_key(v).hex() for v in (C.w, C.w_perp))
    none = search_fixed_lines([C.b1, C.b2], seed=ctx.seed % 2**32, threads=ctx.threads)
    return [
        _rec("fixed.stab_w", "fixed lines of <b3, g2>", "lines of w and w_perp, certified",
             f"{len(keys)} certified, {'matching' if keys == want else 'not matching'}", keys == want),
        _rec("fixed.h24", "H24 fixes no line", 0, sum(1 for c in none if c.certified)),
    ]


@check("sic")
def _sic(ctx):
    L = orbit_lines(ctx.group("h24"), C.e1)
    a = angle_set(L)
    same = L.same_lines(LineSystem(C.SIC_VECTORS))
    return [_rec("sic.h24", "C^2 SIC as an H24 orbit", "4 lines at 1/3, equal to the listed SIC",
                 f"{len(L)} lines at {[str(v) for v in a.values]}, {'equal' if same else 'different'}",
                 len(L) == 4 and [str(v) for v in a.values] == ["1/3"] and same)]


def check_ids():
    return list(CHECKS)


def _selected(cid, only):
    return not only or only == cid or only.startswith(cid + ".") or cid.startswith(only)


def run_checks(only=None, seed=PIT_SEED, threads=1):
    """Run the registry, or only the checks and records whose names start with ``only``."""
    ctx = Context(seed=seed, threads=threads)
    records = []
    for cid, fn in CHECKS.items():
        if not _selected(cid, only):
            continue
        recs = fn(ctx)
        if only and len(only) > len(cid):
            recs = [r for r in recs if r.name.startswith(only)]
        records.extend(recs)
    return records
