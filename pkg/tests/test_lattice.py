from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logfano.lattice import DivisorClass, IntersectionLattice, LatticeError, SurfaceData, is_nef_against
from logfano.surfaces import BUILTIN, blowup_f1

coef = st.fractions(min_value=-6, max_value=6, max_denominator=6)
triples = st.tuples(coef, coef, coef)


def test_example_numbers():
    S = blowup_f1()
    L = S.lattice
    assert L.square(S.anticanonical) == 7
    assert L.intersect(S.anticanonical, S.boundary) == 2
    assert L.square(S.boundary) == 0
    for C in S.negative_curves:
        assert L.square(C) == -1
        assert L.intersect(S.canonical, C) == -1  # (-1)-curves


def test_adjunction_boundary_rational():
    # D is a smooth rational curve: D^2 + K.D = -2
    S = blowup_f1()
    L = S.lattice
    assert L.square(S.boundary) + L.intersect(S.canonical, S.boundary) == -2


def test_divisor_arithmetic():
    a = DivisorClass([1, F(1, 2), 0])
    b = DivisorClass(["1/2", 0, -1])
    assert a + b == DivisorClass([F(3, 2), F(1, 2), -1])
    assert 2 * a - a == a
    assert (a - a).is_zero()
    with pytest.raises(LatticeError):
        a + DivisorClass([1, 2])


@given(triples, triples, triples)
def test_form_is_symmetric_bilinear(a, b, c):
    L = blowup_f1().lattice
    a, b, c = DivisorClass(a), DivisorClass(b), DivisorClass(c)
    assert L.intersect(a, b) == L.intersect(b, a)
    assert L.intersect(a + b, c) == L.intersect(a, c) + L.intersect(b, c)
    assert L.intersect(a * 3, b) == 3 * L.intersect(a, b)


def test_asymmetric_gram_rejected():
    with pytest.raises(LatticeError, match="symmetric"):
        IntersectionLattice(("A", "B"), ((1, 2), (3, 0)))


def test_shape_mismatch_rejected():
    with pytest.raises(LatticeError):
        IntersectionLattice(("A", "B"), ((1, 0),))


def test_zero_boundary_rejected():
    L = IntersectionLattice(("H",), ((1,),))
    with pytest.raises(LatticeError, match="nonzero"):
        SurfaceData(L, (-3,), (0,))


def test_nonnegative_curve_rejected():
    L = IntersectionLattice(("H",), ((1,),))
    with pytest.raises(LatticeError):
        SurfaceData(L, (-3,), (1,), negative_curves=((1,),))


def test_nefness_against_curves():
    S = blowup_f1()
    assert is_nef_against(S, S.anticanonical)
    assert not is_nef_against(S, S.divisor_ray(F(3, 2)))


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_builtins_have_ample_anticanonical(name):
    S = BUILTIN[name]()
    L = S.lattice
    assert L.square(S.anticanonical) > 0
    assert all(L.intersect(S.anticanonical, C) > 0 for C in S.all_test_curves())
