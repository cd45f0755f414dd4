"""Acceptance criteria, each computed directly from library calls.

Every test prints one ``PASS``/``FAIL`` line (visible with plain ``pytest``)
and then asserts.  Run as a script for the same lines without pytest.
"""
from __future__ import annotations

import random
from fractions import Fraction

from quatlines import constants as C
from quatlines.grouplib import (
    close_group,
    conjugacy_classes,
    cycle_notation,
    enumerate_subgroups,
    permutation_action,
    permutation_parity,
    random_integer_vectors,
    reflection_pairs_generating,
    reflections_and_root_lines,
)
from quatlines.fixedlines import search_fixed_lines
from quatlines.linesys import (
    LineSystem,
    absolute_bound,
    angle_set,
    angle_shape,
    design_constant,
    design_defect,
    is_t_design,
    orbit_lines,
    special_bound,
)
from quatlines.qlinalg import QuatMatrix, QuatVector, angle, inner_product, line_key, perp_vector
from quatlines.quatalg import Quaternion
from quatlines.stabilizers import projective_stabilizer, restriction_characters

_GROUPS = {}
I2 = QuatMatrix.identity(2)


def group(name):
    if name not in _GROUPS:
        _GROUPS[name] = close_group(C.GROUP_GENERATORS[name], name=name)
    return _GROUPS[name]


def six_lines():
    words = [I2, C.b1, C.b1 @ C.b1, C.b2, C.b1 @ C.b2, C.b1 @ C.b1 @ C.b2]
    return orbit_lines(group("h720"), C.w, order_by=words)


def report(label, failures, capsys=None):
    line = f"{'PASS' if not failures else 'FAIL'} {label}"
    if failures:
        line += ": " + "; ".join(failures)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert not failures, line


def want(failures, cond, msg):
    if not cond:
        failures.append(msg)


# 1 ------------------------------------------------------------------------

def test_01_group_orders(capsys):
    f = []
    for name, n in (("h24", 24), ("h120", 120), ("h720", 720), ("h1440", 1440)):
        got = group(name).order
        want(f, got == n, f"{name} has order {got}, expected {n}")
    report("1 group orders 24/120/720/1440", f, capsys)


# 2 ------------------------------------------------------------------------

def test_02_h720_structure(capsys):
    G = group("h720")
    f = []
    refl, roots = reflections_and_root_lines(G)
    want(f, len(refl) == 40, f"{len(refl)} reflections")
    want(f, {int(G.element_orders[i]) for i in refl} == {3}, "reflection orders not all 3")
    want(f, len(roots) == 20, f"{len(roots)} root lines")
    centre = {G[i].key for i in G.center()}
    want(f, centre == {I2.key, (-I2).key}, f"centre has {len(centre)} elements")
    cls = conjugacy_classes(G)
    want(f, [(c.size, c.order) for c in cls] == list(zip(
        (1, 1, 40, 40, 90, 72, 72, 40, 40, 90, 90, 72, 72),
        (1, 2, 3, 3, 4, 5, 5, 6, 6, 8, 8, 10, 10))), "class table differs")
    want(f, close_group([C.b1, C.b1b2, C.b3b4]).order == 720, "<b1, b1b2, b3b4> is not H720")
    pairs = reflection_pairs_generating(G, refl)
    want(f, not pairs, f"{len(pairs)} reflection pairs generate H720")
    report("2 H720: 40 order-3 reflections, 20 roots, centre +-I, 13 classes, 3 but not 2 reflections", f, capsys)


# 3 ------------------------------------------------------------------------

def test_03_six_equiangular_lines(capsys):
    L = six_lines()
    f = []
    want(f, L.n_vectors == 720 and len(L) == 6 and set(L.counts) == {120},
         f"{L.n_vectors} vectors in {len(L)} lines")
    a = angle_set(L)
    want(f, a.homogeneous and [str(v) for v in a.values] == ["2/5"],
         f"angles {[str(v) for v in a.values]}")
    et = angle_set(LineSystem(C.ET_LINES))
    want(f, [str(v) for v in et.values] == ["2/5"], f"explicit vectors at {[str(v) for v in et.values]}")
    want(f, C.A.adjoint() @ C.A == I2.scale(C.A_scalar), "A*A is not the stated multiple of I")
    want(f, all(line_key(C.A @ v) == line_key(u) for v, u in zip(C.ET_LINES, C.NICE_LINES)),
         "A does not carry v_j to w_j")
    report("3 six equiangular lines at 2/5; A*A = cI and A v_j ~ w_j", f, capsys)


# 4 ------------------------------------------------------------------------

def test_04_permutation_actions(capsys):
    G = group("h720")
    act = permutation_action(G, six_lines())
    f = []
    for name, g, exp in (("b1", C.b1, "(123)(456)"), ("b2", C.b2, "(14)(36)"),
                         ("b3", C.b3, "(23)(45)"), ("b4", C.b4, "(13)(46)")):
        got = cycle_notation(act.of(G.index(g)))
        want(f, got == exp, f"{name} gives {got}")
    want(f, act.image_order == 360, f"image order {act.image_order}")
    want(f, all(permutation_parity(p) == 1 for p in act.perms), "odd permutation in the image")
    want(f, sorted(act.kernel) == sorted(G.center()), "kernel is not +-I")

    crosses = [(line_key(a), line_key(b)) for a, b in zip(C.NICE_LINES, C.NICE_LINES_PERP)]

    def on_crosses(g):
        perm, swapped = [], True
        for a in C.NICE_LINES:
            k = line_key(g @ a)
            j = next(n for n, c in enumerate(crosses) if k in c)
            perm.append(j)
            swapped &= k == crosses[j][1]
        return perm, swapped

    p, sw = on_crosses(C.b5)
    want(f, permutation_parity(p) == -1 and sw, "b5 is not an odd swap")
    want(f, line_key(C.r @ C.w) == line_key(C.w_perp), "r w is not on the line of w_perp")
    report("4 b1..b4 cycles, image A6 with kernel +-I, extra generator odd and swapping", f, capsys)


# 5 ------------------------------------------------------------------------

def test_05_design_identities(capsys):
    G720, G1440 = group("h720"), group("h1440")
    six = six_lines()
    perp = orbit_lines(G720, C.w_perp)
    thirty_a = orbit_lines(G1440, C.FIDUCIAL_15)
    thirty_b = orbit_lines(G720, C.FIDUCIAL_30)
    f = []
    for label, L, n, t in (
        ("six", six, 6, 2),
        ("MUB", LineSystem(C.MUB_VECTORS), 10, 3),
        ("twelve", six.union(perp), 12, 3),
        ("fifteen", orbit_lines(G720, C.FIDUCIAL_15), 15, 2),
        ("twenty", orbit_lines(G720, C.FIDUCIAL_20), 20, 3),
        ("thirty (doubled fifteen)", thirty_a, 30, 3),
        ("thirty (fiducial)", thirty_b, 30, 3),
    ):
        d = is_t_design(L, t)
        want(f, len(L) == n and d.is_design, f"{label}: {len(L)} lines, defect {d.defect} at t={t}")
    want(f, thirty_a.same_lines(thirty_b), "the two 30-line systems are different line sets")
    cs = [design_constant(t, 2) for t in (1, 2, 3)]
    want(f, cs == [Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)], f"c_t = {cs}")
    report("5 exact design identities for 6/10/12/15/20/30 lines, coincidence of the 30s, c_t", f, capsys)


# 6 ------------------------------------------------------------------------

def test_06_bounds_table(capsys):
    F = Fraction
    rows = (
        (6, [F(2, 5)], 6),
        (10, [0, F(1, 2)], 10),
        (12, [0, F(2, 5), F(3, 5)], 30),
        (15, [F(1, 4), F(5, 8)], 20),
        (20, [0, F(1, 3), F(2, 3)], 30),
    )
    f = []
    for n, angles, ab in rows:
        nu = special_bound(angles, 2)
        got_ab = absolute_bound(angle_shape(angles)[0], 2)
        want(f, nu == n and got_ab == ab, f"row {n}: nu={nu}, absolute={got_ab}")
    report("6 special bounds 6/10/12/15/20 met with equality, absolute bounds 6/10/30/20/30", f, capsys)


# 7 ------------------------------------------------------------------------

def test_07_polynomial_identity_designs(capsys):
    xs = random_integer_vectors(2, 20)
    f = []
    for name, t in (("h24", 1), ("h720", 2), ("h1440", 3)):
        G = group(name)
        nz = [x for x in xs if design_defect(G, t, x)]
        want(f, not nz, f"{name} t={t}: {len(nz)} nonzero values")
    G = group("h720")
    want(f, any(design_defect(G, 3, x) for x in xs), "H720 t=3 vanishes at every tested vector")
    report("7 design polynomials vanish for H24/H720/H1440 at 20 vectors; H720 at t=3 does not", f, capsys)


# 8 ------------------------------------------------------------------------

def test_08_stabilizer_of_w(capsys):
    G = group("h720")
    S, Sp = projective_stabilizer(G, C.w), projective_stabilizer(G, C.w_perp)
    f = []
    want(f, S.order == 120, f"order {S.order}")
    refl, _ = reflections_and_root_lines(G, S.indices)
    want(f, not refl, f"{len(refl)} reflections")
    want(f, str(S.hstar_class()) == "binary_icosahedral", f"scalar image {S.hstar_class()}")
    want(f, S.is_faithful(), "scalar map not injective")
    want(f, S.character(C.g2) == 1 / C.tau, f"chi_W(g2) = {S.character(C.g2)}")
    want(f, Sp.character(C.g2) == -C.tau, f"chi_Wperp(g2) = {Sp.character(C.g2)}")
    want(f, (S.fs_indicator(), Sp.fs_indicator()) == (-1, -1), "indicators are not both -1")
    want(f, inner_product(C.w, C.w_perp).is_zero(), "w and w_perp not orthogonal")
    _, _, distinct = restriction_characters(S, Sp)
    want(f, distinct, "characters on the two lines agree")
    report("8 stabilizer of w: order 120, reflection-free, faithful 2I, characters 1/tau and -tau, FS -1", f, capsys)


# 9 ------------------------------------------------------------------------

def test_09_perp_preserves_angles(capsys):
    rng = random.Random(2024)

    def rv():
        while True:
            v = QuatVector([Quaternion(*(rng.randint(-4, 4) for _ in range(4))) for _ in range(2)])
            if not v.is_zero():
                return v

    bad = 0
    for _ in range(1000):
        v, u = rv(), rv()
        bad += angle(v, u) != angle(perp_vector(v), perp_vector(u))
    report("9 angle(v,u) = angle(perp v, perp u) for 1000 random pairs", [f"{bad} failures"] if bad else [], capsys)


# 10 -----------------------------------------------------------------------

def test_10_subgroup_census(capsys):
    f = []
    red = [s for s in enumerate_subgroups(group("h720")) if s.reducible]
    n = sum(1 for s in red if s.order > 3)
    mx = sorted((s.order for s in red if s.maximal_reducible), reverse=True)
    want(f, n == 17, f"H720 has {n} reducible classes of order > 3, expected 17")
    want(f, mx == [120, 48, 36], f"H720 maximal reducible orders {mx}")
    mx = sorted((s.order for s in enumerate_subgroups(group("h1440")) if s.reducible and s.maximal_reducible),
                reverse=True)
    want(f, mx == [120, 72, 48, 48, 24], f"H1440 maximal reducible orders {mx}, expected [120, 72, 48, 48, 24]")
    report("10 reducible subgroup census of H720 and H1440", f, capsys)


# 11 -----------------------------------------------------------------------

def test_11_fixed_line_pipeline(capsys):
    f = []
    found = search_fixed_lines([C.b3, C.g2])
    keys = sorted(line_key(c.exact) for c in found if c.certified)
    want(f, keys == sorted([line_key(C.w), line_key(C.w_perp)]), f"{len(keys)} certified lines, not w and w_perp")
    none = [c for c in search_fixed_lines(list(C.GROUP_GENERATORS["h24"])) if c.certified]
    want(f, not none, f"H24 certified {len(none)} lines")
    report("11 fixed-line search recovers the lines of w and w_perp exactly; none for H24", f, capsys)


# 12 -----------------------------------------------------------------------

def test_12_sic(capsys):
    L = orbit_lines(group("h24"), C.e1)
    a = angle_set(L)
    f = []
    want(f, len(L) == 4, f"{len(L)} lines")
    want(f, [str(v) for v in a.values] == ["1/3"], f"angles {[str(v) for v in a.values]}")
    report("12 H24 orbit of e1 is a SIC of 4 lines at 1/3", f, capsys)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
