import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatlines.numfield import BASIS_RADICANDS, FieldElem, ONE, ZERO, field_approx, field_inv, sqrt

ROOT = {1: 1.0, **{r: math.sqrt(r) for r in BASIS_RADICANDS if r != 1}}

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
elems = st.dictionaries(st.sampled_from(BASIS_RADICANDS), coeff, max_size=8).map(FieldElem)


def approx(a):
    # independent float evaluation from the public coordinates
    return sum(float(c) * ROOT.get(r, math.sqrt(r)) for r, c in zip(BASIS_RADICANDS, a.coords))


def test_basis_order():
    assert tuple(BASIS_RADICANDS) == (1, 2, 3, 5, 6, 10, 15, 30)


def test_radical_products():
    assert sqrt(2) * sqrt(3) == sqrt(6)
    assert sqrt(6) * sqrt(10) == 2 * sqrt(15)
    assert sqrt(30) * sqrt(30) == 30
    assert sqrt(Fraction(3, 4)) == sqrt(3) / 2
    assert sqrt(12) == 2 * sqrt(3)


def test_sqrt_outside_field():
    with pytest.raises(ValueError):
        sqrt(7)
    with pytest.raises(ValueError):
        sqrt(-1)


def test_golden_ratio():
    tau = (1 + sqrt(5)) / 2
    assert tau * tau == tau + 1
    assert 1 / tau == tau - 1


@settings(max_examples=60, deadline=None)
@given(elems, elems)
def test_ring_ops_match_floats(a, b):
    assert math.isclose(approx(a + b), approx(a) + approx(b), abs_tol=1e-9)
    assert math.isclose(approx(a * b), approx(a) * approx(b), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(elems)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            field_inv(a)
        return
    assert a * field_inv(a) == ONE


@settings(max_examples=60, deadline=None)
@given(elems)
def test_sign_agrees_with_float(a):
    f = approx(a)
    if abs(f) > 1e-9:
        assert a.sign() == (1 if f > 0 else -1)
    if a.is_zero():
        assert a.sign() == 0


@settings(max_examples=40, deadline=None)
@given(elems)
def test_approx_interval_contains_value(a):
    lo, hi = field_approx(a, 40)
    assert lo <= hi and hi - lo <= Fraction(1, 2**40)
    f = approx(a)
    assert float(lo) - 1e-9 <= f <= float(hi) + 1e-9


@settings(max_examples=40, deadline=None)
@given(elems, elems)
def test_galois_conjugation_is_automorphism(a, b):
    for p in (2, 3, 5):
        assert (a * b).conjugate(p) == a.conjugate(p) * b.conjugate(p)
        assert (a + b).conjugate(p) == a.conjugate(p) + b.conjugate(p)


@settings(max_examples=40, deadline=None)
@given(elems)
def test_json_and_parse_round_trip(a):
    assert FieldElem.from_json(a.to_json()) == a
    assert FieldElem.parse(str(a)) == a


def test_equality_and_hash_with_rationals():
    assert FieldElem(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(FieldElem(3)) == hash(FieldElem({1: 3}))
    assert ZERO.is_zero() and not ONE.is_zero()
    assert (sqrt(2) - sqrt(2)).is_zero()
