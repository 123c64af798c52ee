"""Star products as values: multiplication, gauge action, normalization."""

from fractions import Fraction
from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from starplane.diffop import BiDiffOp, DiffOp

from starplane.poly import ONE, X, Y, Poly2
from starplane.quantize import quantize
from starplane.series import HSeries
from starplane.star import (
    GaugeOp,
    StarProduct,
    assoc_defect,
    extract_poisson_p3,
    gauge_transform,
    is_associative,
    moyal_fixture,
    normalize,
    pointwise_product,
    spq_membership,
    star_mul,
    star_mul_series,
)

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.fractions(min_value=-8, max_value=8, max_denominator=4),
    max_size=3,
).map(Poly2)

def test_star_mul_first_orders():
    m = quantize(X * Y, 2)
    s = star_mul(m, X, Y)
    assert s.coeffs[0] == X * Y
    assert s.coeffs[1] == X * Y  # phi * dx(x) dy(y)
    # order 2 sees the K_2 table on (x, y): only the (1,1) slot acts
    assert s.coeffs[2] == X * Y * Fraction(1, 2)

def test_star_mul_series_is_bilinear_over_truncation():
    m = quantize(X, 2)
    F = HSeries(2, [X, Y, ONE])
    G = HSeries(2, [Y, Poly2.zero(), X])
    direct = star_mul_series(m, F, G)
    acc = HSeries.constant(Poly2.zero(), 2)
    for i, f in enumerate(F.coeffs):
        for j, g in enumerate(G.coeffs):
            if i + j <= 2:
                acc = acc + star_mul(m, f, g).truncate(2).shift(i + j)
    assert direct == acc

def test_moyal_fixture_is_associative_but_not_normalized():
    m = moyal_fixture(1, 4)
    assert is_associative(m)
    assert not spq_membership(m)
    # Weyl-symmetric first order: (fg_xy - f_x g_y ... ) check on x, y
    assert star_mul(m, X, Y).coeffs[1] == Poly2.const(Fraction(1, 2))
    assert star_mul(m, Y, X).coeffs[1] == Poly2.const(Fraction(-1, 2))

def test_assoc_defect_flags_broken_products():
    bad = StarProduct(2, {1: BiDiffOp({((1, 0), (0, 1)): X})})
    d = assoc_defect(bad)
    assert any(not op.is_zero() for op in d.values())
    assert not is_associative(bad)

def test_pointwise_product_is_associative():
    assert is_associative(pointwise_product(3))

def test_gauge_transform_preserves_associativity():
    m = moyal_fixture(1, 3)
    U = GaugeOp(3, {1: DiffOp({(1, 1): Poly2.const(Fraction(-1, 2))})})
    out = gauge_transform(m, U)
    assert is_associative(out)

def test_gauge_by_half_dxdy_normal_orders_moyal():
    # the Wick/Weyl transmutation: U = 1 - (h/2) dxdy turns the symmetric
    # product into the normal-ordered one with m_k = (1/k!) dx^k (x) dy^k
    m = moyal_fixture(1, 4)
    # U = exp(-(h/2) dxdy): U_k = (1/k!) (-1/2)^k dx^k dy^k
    orders = {
        k: DiffOp({(k, k): Poly2.const(Fraction(-1, 2) ** k / factorial(k))})
        for k in range(1, 5)
    }
    U = GaugeOp(4, orders)
    out = gauge_transform(m, U)
    for k in range(1, 5):
        assert out.order_op(k).terms == {((k, 0), (0, k)): Poly2.const(Fraction(1, factorial(k)))}

def test_gauge_inverse_composes_to_identity():
    U = GaugeOp(3, {1: DiffOp({(1, 1): X}), 2: DiffOp({(2, 0): Y})})
    V = U.inverse()
    m = quantize(X * Y, 3)
    assert gauge_transform(gauge_transform(m, U), V) == m

@given(small_polys, small_polys)
@settings(max_examples=25, deadline=None)
def test_gauge_transform_matches_pointwise_conjugation(f, g):
    m = quantize(X, 2)
    U = GaugeOp(2, {1: DiffOp({(1, 1): Y}), 2: DiffOp({(2, 1): X})})
    out = gauge_transform(m, U)
    V = U.inverse()
    # m'(f,g) = U^{-1} m(Uf, Ug) evaluated as h-series (independent oracle)
    Uf = U.apply_series(f).truncate(2)
    Ug = U.apply_series(g).truncate(2)
    conj = star_mul_series(m, Uf, Ug)
    expected = conj
    for k, op in V.orders.items():
        expected = expected + HSeries(2, [op.apply(c) for c in conj.coeffs]).shift(k)
    assert star_mul(out, f, g) == expected

def test_normalize_moyal():
    U, out = normalize(moyal_fixture(1, 4))
    assert U.order_op(1).terms == {(1, 1): Poly2.const(Fraction(-1, 2))}
    assert spq_membership(out)
    for k in range(1, 5):
        assert out.order_op(k).terms == {((k, 0), (0, k)): Poly2.const(Fraction(1, factorial(k)))}

def test_normalize_is_identity_on_pure_shape():
    m = quantize(X ** 2, 3)
    U, out = normalize(m)
    assert out == m
    assert all(not U.order_op(k) for k in range(1, 4))

def test_normalize_enforces_polar_conditions():
    U, _ = normalize(moyal_fixture(1, 3))
    for k in range(1, 4):
        op = U.order_op(k)
        assert op.apply(ONE).is_zero()
        assert op.apply(X).is_zero()
        assert op.apply(Y).is_zero()

def test_extract_poisson_p3():
    m = quantize(X * Y, 3)
    p = extract_poisson_p3(m)
    assert p.coeffs[0] == X * Y
    q = extract_poisson_p3(moyal_fixture(1, 2))
    assert q.coeffs[0] == ONE

def test_spq_membership():
    assert spq_membership(quantize(X, 2))
    assert not spq_membership(moyal_fixture(1, 2))
