from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import beta

from quatlines import constants as C
from quatlines.grouplib import close_group
from quatlines.linesys import (
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
from quatlines.quatalg import Quaternion, QI, QJ
from quatlines.qlinalg import QuatVector, line_key


def float_vec(v):
    return np.array([[float(x) for x in q.parts] for q in v.entries()])


def hinner(a, b):
    # sum conj(a_j) b_j with a textbook Hamilton product
    out = np.zeros(4)
    for (a0, a1, a2, a3), (b0, b1, b2, b3) in zip(a, b):
        a1, a2, a3 = -a1, -a2, -a3
        out += [a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0]
    return out


def float_defect(lines, t):
    vs = [float_vec(v) for v in lines]
    n = len(vs)
    tot = 0.0
    for a in vs:
        for b in vs:
            ip = hinner(a, b)
            tot += (ip @ ip / (hinner(a, a)[0] * hinner(b, b)[0])) ** t
    d = vs[0].shape[0]
    ct = beta(2 + t, 2 * d - 2) / beta(2, 2 * d - 2)
    return tot / n - ct * n


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_design_constant_is_sphere_moment(t, d):
    # |<x,y>|^2 for uniform unit x in H^d is Beta(2, 2d-2)
    assert float(design_constant(t, d)) == pytest.approx(beta(2 + t, 2 * d - 2) / beta(2, 2 * d - 2))


@pytest.fixture(scope="module")
def h720():
    return close_group(C.GROUP_GENERATORS["h720"])


@pytest.fixture(scope="module")
def six(h720):
    return orbit_lines(h720, C.w)


def test_six_lines(six):
    assert len(six) == 6 and six.n_vectors == 720 and six.transitive
    a = angle_set(six)
    assert a.equiangular and a.values == [Fraction(2, 5)]


@pytest.mark.parametrize("t", [1, 2, 3])
def test_design_defect_matches_float_oracle(six, t):
    d = is_t_design(six, t)
    assert float(d.defect) == pytest.approx(float_defect(six, t), abs=1e-9)
    assert d.is_design == (t <= 2)


def test_orbit_form_equals_double_sum(six):
    for t in (1, 2, 3):
        assert orbit_design_defect(six, t) == is_t_design(six, t).defect


def test_mub_design():
    L = LineSystem(C.MUB_VECTORS)
    assert len(L) == 10
    assert is_t_design(L, 3).is_design and not is_t_design(L, 4).is_design


def test_orthonormal_basis_is_tight_frame():
    L = LineSystem([C.e1, C.e2])
    assert is_t_design(L, 1).is_design and not is_t_design(L, 2).is_design


@pytest.mark.parametrize("a", [Fraction(2, 5), Fraction(1, 3), Fraction(3, 7), Fraction(1, 4)])
def test_equiangular_special_bound_is_relative_bound(a):
    d = 2
    assert special_bound([a], d) == d * (1 - a) / (1 - d * a)


def test_bounds_table():
    assert special_bound([0, Fraction(1, 2)], 2) == 10
    assert special_bound([0, Fraction(1, 3), Fraction(2, 3)], 2) == 20
    assert absolute_bound("one", 2) == 6
    assert absolute_bound(angle_shape([Fraction(1, 4), Fraction(5, 8)])[0], 2) == 20


def test_angle_shape_rejects_bad_angles():
    with pytest.raises(ValueError):
        angle_shape([Fraction(1, 2), Fraction(3, 2)])


def test_pit_defect_zero_for_design_group(h720):
    x = QuatVector([Quaternion(1, 2, 0, -1), Quaternion(3, 0, 1, 1)])
    assert not design_defect(h720, 2, x)
    assert design_defect(h720, 3, x)


small = st.integers(-3, 3)
vec = st.tuples(*(small,) * 8).map(lambda t: QuatVector([Quaternion(*t[:4]), Quaternion(*t[4:])]))


@settings(max_examples=25, deadline=None)
@given(st.lists(vec, min_size=1, max_size=5))
def test_line_system_dedups_and_round_trips(vs):
    vs = [v for v in vs if not v.is_zero()]
    L = LineSystem(vs + [v * QI for v in vs] + [v * (QJ + 1) for v in vs])
    assert len(L) == len({line_key(v) for v in vs})
    again = LineSystem.from_json(L.to_json())
    assert again.same_lines(L)
