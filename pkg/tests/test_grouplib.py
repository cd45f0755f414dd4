import itertools
import random

import pytest

from quatlines import constants as C
from quatlines.grouplib import (
    GroupClosureError,
    close_group,
    conjugacy_classes,
    cycle_notation,
    enumerate_subgroups,
    fs_indicator,
    is_irreducible,
    load_generators,
    permutation_parity,
    reflections_and_root_lines,
    save_generators,
)
from quatlines.numfield import sqrt
from quatlines.quatalg import QI, QJ, QK, QONE, Quaternion
from quatlines.qlinalg import QuatMatrix
from quatlines.stabilizers import close_quaternions


@pytest.fixture(scope="module")
def h24():
    return close_group(C.GROUP_GENERATORS["h24"], name="h24")


@pytest.fixture(scope="module")
def h120():
    return close_group(C.GROUP_GENERATORS["h120"], name="h120")


def test_cayley_table_matches_products(h24):
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randrange(24), rng.randrange(24)
        assert h24[int(h24.table[a, b])] == h24[a] @ h24[b]


def test_inverses_and_identity(h24):
    I = QuatMatrix.identity(2)
    assert h24[0] == I
    for n in range(h24.order):
        assert h24[n] @ h24[int(h24.inverses[n])] == I


def test_conjugation_table(h24):
    for c, x in itertools.product(range(0, 24, 5), range(24)):
        g = h24[int(h24.conj_table[c, x])]
        assert g == h24[int(h24.inverses[c])] @ h24[x] @ h24[c]


def test_sl23_classes(h24):
    # SL(2,3): class sizes 1, 1, 4, 4, 4, 4, 6
    cls = conjugacy_classes(h24)
    assert sorted(c.size for c in cls) == [1, 1, 4, 4, 4, 4, 6]
    assert sum(c.size for c in cls) == 24


def test_class_equation_h120(h120):
    cls = conjugacy_classes(h120)
    assert sum(c.size for c in cls) == 120
    assert all(120 % c.size == 0 for c in cls)


def test_closure_cap():
    # an infinite-order unitary: rotation with cos = 3/5
    q = (Quaternion(3) + QI * 4) / 5
    g = QuatMatrix([[q, 0], [0, QONE]])
    with pytest.raises(GroupClosureError):
        close_group([g], cap=500)


def test_rejects_non_unitary():
    g = QuatMatrix([[Quaternion(2), 0], [0, QONE]])
    with pytest.raises((GroupClosureError, ValueError)):
        close_group([g])


def test_reflection_count_is_conjugation_invariant(h120):
    refl, roots = reflections_and_root_lines(h120)
    u = QuatMatrix([[(QONE + QI) / sqrt(2), 0], [0, (-1 + QI + QJ + QK) / 2]])
    assert u.is_unitary()
    conj = close_group([u.adjoint() @ g @ u for g in C.GROUP_GENERATORS["h120"]])
    refl2, roots2 = reflections_and_root_lines(conj)
    assert conj.order == 120
    assert (len(refl2), len(roots2)) == (len(refl), len(roots))


def test_sl23_subgroup_census(h24):
    # classes of SL(2,3): 1, C2, C3, C4, C6, Q8, SL(2,3)
    subs = enumerate_subgroups(h24)
    assert sorted(s.order for s in subs) == [1, 2, 3, 4, 6, 8, 24]
    by_order = {s.order: s for s in subs}
    assert by_order[3].class_size == 4 and by_order[4].class_size == 3
    assert not by_order[24].reducible
    assert all(s.reducible for s in subs if s.order < 24)


def test_irreducibility(h24):
    assert is_irreducible(h24)
    diag = close_group([QuatMatrix([[QI, 0], [0, QJ]])])
    v = is_irreducible(diag)
    assert not v and v.witness is not None


def test_fs_indicator_on_quaternion_groups():
    for gens, expected in (
        ([QI, QJ], -1),                            # Q8
        ([(-1 + QI + QJ + QK) / 2, QI], -1),        # binary tetrahedral
        ([(QI - 1) / sqrt(2), (-1 + QI + QJ + QK) / 2], -1),  # binary octahedral
        ([QI], 0),                                  # cyclic of order 4
    ):
        grp = close_quaternions(gens)
        assert fs_indicator(grp) == expected


def test_fs_indicator_rejects_reducible():
    # the sign character of {+-1} counted twice gives 2
    with pytest.raises(ValueError):
        fs_indicator([QONE, -QONE])


def test_cycle_notation_and_parity():
    assert cycle_notation([1, 2, 0, 4, 5, 3]) == "(123)(456)"
    assert cycle_notation([0, 1, 2]) == "()"
    for perm in itertools.permutations(range(5)):
        inversions = sum(1 for i, j in itertools.combinations(range(5), 2) if perm[i] > perm[j])
        assert permutation_parity(list(perm)) == (-1) ** inversions


def test_save_and_load(tmp_path, h24):
    path = tmp_path / "g.json"
    save_generators(h24, path)
    again = load_generators(path)
    assert again.order == 24
    assert {g.key for g in again.elements} == {g.key for g in h24.elements}
