"""Truncated h-series and the phi-localized coefficient ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starplane.errors import NonUnitLeadingTerm, NotDivisible
from starplane.localized import LocalizedFn
from starplane.poly import ONE, X, Y, Poly2
from starplane.series import HSeries

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)


def poly_series(order):
    polys = st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 2)), rationals, max_size=3
    ).map(Poly2)
    return st.lists(polys, min_size=order + 1, max_size=order + 1).map(
        lambda cs: HSeries(order, cs)
    )


def test_constant_and_shift():
    s = HSeries.constant(X, 2)
    assert s.coeffs == [X, Poly2.zero(), Poly2.zero()]
    assert s.shift(1).coeffs == [Poly2.zero(), X, Poly2.zero()]


def test_mul_truncates():
    s = HSeries(2, [ONE, X, Y])
    t = HSeries(2, [ONE, Y, Poly2.zero()])
    prod = s * t
    assert prod.order == 2
    assert prod.coeffs == [ONE, X + Y, X * Y + Y]


def test_invert_poly_series():
    s = HSeries(3, [Poly2.const(2), X, X * Y, Y])
    w = s.invert()
    assert (s * w).coeffs == [ONE] + [Poly2.zero()] * 3


def test_invert_needs_unit():
    s = HSeries(1, [X, ONE])
    with pytest.raises(NonUnitLeadingTerm):
        s.invert()


@given(poly_series(3), poly_series(3), poly_series(3))
@settings(max_examples=60, deadline=None)
def test_series_ring(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a


def test_localized_reduction():
    phi = X * Y
    v = LocalizedFn(X * Y * Y, 1, phi)  # (xy*y)/phi reduces to y
    assert v.power == 0 and v.num == Y
    assert LocalizedFn(Poly2.zero(), 3, phi).power == 0


def test_localized_arithmetic():
    phi = X * Y
    a = LocalizedFn.one_over_phi(phi)
    b = LocalizedFn(Y, 1, phi)  # y/(xy) (kept unreduced: xy does not divide y)
    assert a + a == LocalizedFn(Poly2.const(2), 1, phi)
    assert a * phi == LocalizedFn(1, 0, phi)
    assert (a - a).is_zero()
    assert b * X == LocalizedFn(1, 0, phi)


def test_localized_quotient_rule():
    phi = X * Y
    f = LocalizedFn.one_over_phi(phi)  # 1/(xy)
    # d/dy 1/(xy) = -1/(x y^2) = -x/(xy)^2
    assert f.dy() == LocalizedFn(-X, 2, phi)
    assert f.dx() == LocalizedFn(-Y, 2, phi)


def test_localized_inverse():
    phi = X + 1
    u = LocalizedFn(Poly2.const(Fraction(1, 3)), 2, phi)
    assert u * u.inverse() == LocalizedFn(1, 0, phi)
    with pytest.raises(NonUnitLeadingTerm):
        LocalizedFn(X, 0, phi).inverse()


def test_localized_as_poly():
    phi = X
    assert LocalizedFn(Y, 0, phi).as_poly() == Y
    with pytest.raises(NotDivisible):
        LocalizedFn(Y, 1, phi).as_poly()


def test_localized_series_invert():
    phi = X * Y
    one = LocalizedFn(1, 0, phi)
    s = HSeries(2, [one, LocalizedFn(X, 1, phi), LocalizedFn(Y, 1, phi)])
    w = s.invert()
    prod = s * w
    assert prod.coeffs[0] == one and not prod.coeffs[1] and not prod.coeffs[2]


def test_mixed_phi_rejected():
    a = LocalizedFn.one_over_phi(X)
    b = LocalizedFn.one_over_phi(Y)
    with pytest.raises(ValueError):
        a + b
