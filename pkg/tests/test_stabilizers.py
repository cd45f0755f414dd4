from collections import Counter

import pytest

from quatlines import constants as C
from quatlines.fixedlines import search_fixed_lines
from quatlines.grouplib import close_group
from quatlines.numfield import sqrt
from quatlines.parsing import parse_vector
from quatlines.quatalg import QI, QJ, QK
from quatlines.qlinalg import line_key
from quatlines.stabilizers import (
    HSTAR_PROFILES,
    classify_hstar,
    close_quaternions,
    projective_stabilizer,
    restriction_characters,
)

TAU = (1 + sqrt(5)) / 2
GENS = {
    "binary_tetrahedral": [(-1 + QI + QJ + QK) / 2, QI],
    "binary_octahedral": [(QI - 1) / sqrt(2), (-1 + QI + QJ + QK) / 2],
    "binary_icosahedral": [(TAU - QI / TAU - QJ) / 2, QI],
}


@pytest.fixture(scope="module")
def h720():
    return close_group(C.GROUP_GENERATORS["h720"], name="h720")


@pytest.mark.parametrize("kind", sorted(GENS))
def test_profiles_match_closed_groups(kind):
    grp = close_quaternions(GENS[kind])
    assert dict(Counter(q.order() for q in grp)) == HSTAR_PROFILES[kind]
    assert str(classify_hstar(grp)) == kind


def test_small_classes():
    assert str(classify_hstar(close_quaternions([QI, QJ]))) == "binary_dihedral(2)"
    assert str(classify_hstar(close_quaternions([(-1 + QI + QJ + QK) / 2]))) == "cyclic(3)"


def test_classify_rejects_non_group():
    with pytest.raises(ValueError):
        classify_hstar([QI])


def test_stabilizer_of_w(h720):
    S = projective_stabilizer(h720, C.w)
    assert S.order == 120
    assert S.is_homomorphism() and S.is_faithful()
    assert str(S.hstar_class()) == "binary_icosahedral"
    assert S.fs_indicator() == -1


def test_conjugate_stabilizer(h720):
    # G_{hv} = h G_v h^-1
    h = C.b1 @ C.b2
    S = projective_stabilizer(h720, C.w)
    T = projective_stabilizer(h720, h @ C.w)
    hinv = h.adjoint()
    assert {h720[i].key for i in T.indices} == {(h @ h720[i] @ hinv).key for i in S.indices}


def test_scalar_class_depends_on_line_only(h720):
    S = projective_stabilizer(h720, C.w)
    T = projective_stabilizer(h720, C.w * QJ)
    assert S.order == T.order
    assert str(S.hstar_class()) == str(T.hstar_class())
    assert [S.character(h720[i]) for i in S.indices] == [T.character(h720[i]) for i in T.indices]


def test_characters_on_complement(h720):
    S = projective_stabilizer(h720, C.w)
    Sp = projective_stabilizer(h720, C.w_perp)
    chi, chip, distinct = restriction_characters(S, Sp)
    assert distinct
    assert S.character(C.g2) == 1 / TAU and Sp.character(C.g2) == -TAU
    # the complement carries the Galois twist sqrt5 -> -sqrt5 of the character
    assert all(chip[i] == chi[i].conjugate(5) for i in chi)


def test_order_48_stabilizer_fixes_its_line(h720):
    v = parse_vector("(1, j)")
    S = projective_stabilizer(h720, v)
    assert S.order == 48
    assert str(S.hstar_class()) == "binary_octahedral"
    found = search_fixed_lines([h720[i] for i in S.generators()], restarts=60)
    keys = {line_key(c.exact) for c in found if c.certified}
    assert line_key(v) in keys


def test_zero_vector_rejected(h720):
    with pytest.raises(ValueError):
        projective_stabilizer(h720, C.w * 0)
