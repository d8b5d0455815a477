from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpoly.exact import (
    DensePoly,
    GaussianRational,
    PolyMatrix,
    TruncatedSeries,
    geom_power,
    norm_sq,
    parse_rational,
    poly_from_roots,
    poly_matrix_charpoly,
    scalar_from_json,
    scalar_to_json,
    vanishing_order,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=20
)
gaussians = st.builds(GaussianRational, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == GaussianRational(0, 0)


@given(gaussians)
def test_gaussian_conjugation(a):
    assert a.conjugate().conjugate() == a
    n = norm_sq(a)
    assert n == a.re * a.re + a.im * a.im
    assert n >= 0


@given(gaussians, gaussians)
def test_gaussian_division(a, b):
    if norm_sq(b) == 0:
        with pytest.raises(ZeroDivisionError):
            a / b
    else:
        assert (a / b) * b == a


def test_gaussian_mixed_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert Fraction(1, 2) + i == GaussianRational(Fraction(1, 2), 1)


@given(rationals)
def test_scalar_json_roundtrip_rational(a):
    assert scalar_from_json(scalar_to_json(a)) == a


@given(gaussians)
def test_scalar_json_roundtrip_gaussian(a):
    back = scalar_from_json(scalar_to_json(a))
    assert back == a


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    assert parse_rational(5) == Fraction(5)
    with pytest.raises(ValueError):
        parse_rational(1.5)


# ---------------------------------------------------------------------------
# polynomials

coeff_lists = st.lists(rationals, min_size=0, max_size=6)


def P(cs):
    return DensePoly(cs, "z")


@given(coeff_lists, coeff_lists, coeff_lists)
def test_poly_ring_laws(a, b, c):
    pa, pb, pc = P(a), P(b), P(c)
    assert pa + pb == pb + pa
    assert pa * pb == pb * pa
    assert (pa + pb) * pc == pa * pc + pb * pc
    assert pa - pa == P([])


@given(coeff_lists, coeff_lists)
def test_poly_divmod(a, b):
    pa, pb = P(a), P(b)
    if pb.is_zero():
        with pytest.raises(ZeroDivisionError):
            pa.divmod(pb)
        return
    q, r = pa.divmod(pb)
    assert q * pb + r == pa
    assert r.is_zero() or r.degree < pb.degree


@given(coeff_lists, coeff_lists)
def test_poly_exact_div(a, b):
    pa, pb = P(a), P(b)
    if pb.is_zero():
        return
    prod = pa * pb
    assert prod.exact_div(pb) == pa


def test_poly_degree_and_eval():
    p = P([1, 0, 2])
    assert p.degree == 2
    assert p(3) == 1 + 2 * 9
    assert P([]).is_zero()
    assert P([0, 0]).is_zero()


def test_poly_derivative():
    p = P([5, 3, 0, 7])
    assert p.derivative() == P([3, 0, 21])
    assert P([4]).derivative().is_zero()


def test_poly_from_roots():
    p = poly_from_roots([1, 2])
    assert p == P([2, -3, 1])
    assert p(1) == 0 and p(2) == 0


@given(
    st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=4),
    st.integers(min_value=-5, max_value=5),
)
def test_vanishing_order_multiplicative(roots, a):
    p = poly_from_roots(roots)
    q = poly_from_roots(roots + [a])
    assert vanishing_order(q, a) == vanishing_order(p, a) + 1


def test_vanishing_order_zero_poly():
    assert vanishing_order(P([]), 3) == float("inf")
    assert vanishing_order(P([1]), 3) == 0


# ---------------------------------------------------------------------------
# truncated series

orders = st.integers(min_value=0, max_value=8)


@given(coeff_lists, coeff_lists, orders)
def test_series_mul_commutes(a, b, order):
    sa = TruncatedSeries(a, order)
    sb = TruncatedSeries(b, order)
    assert (sa * sb).coeffs == (sb * sa).coeffs


@given(st.integers(min_value=0, max_value=6), orders)
def test_geom_power_inverts_binomial(s, order):
    # (1-u)^s * 1/(1-u)^s == 1 through the truncation order
    one_minus_u = DensePoly([1, -1], "u")
    acc = TruncatedSeries.one(order)
    for _ in range(s):
        acc = acc * one_minus_u
    prod = acc * geom_power(s, order)
    assert prod.coeffs == TruncatedSeries.one(order).coeffs


@given(coeff_lists, st.integers(min_value=0, max_value=10), orders)
def test_series_shift(a, k, order):
    s = TruncatedSeries(a, order).shift(k)
    assert s.order == order
    assert s.coeffs[:min(k, order + 1)] == [0] * min(k, order + 1)


# ---------------------------------------------------------------------------
# polynomial matrices and the characteristic polynomial

def _charpoly_via_cofactors(m: PolyMatrix) -> list[DensePoly]:
    """Expand det(tI - M) by cofactors over DensePoly[z][t]; oracle only."""
    size = m.size
    # entries of tI - M as polynomials in t with DensePoly coefficients
    neg = [[m.rows[i][j] * Fraction(-1) for j in range(size)] for i in range(size)]

    def det(rows, cols):
        if len(rows) == 1:
            i, j = rows[0], cols[0]
            base = {0: neg[i][j]}
            if i == j:
                base[1] = DensePoly([1], m.var)
            return base
        out: dict = {}
        sign = 1
        for idx, j in enumerate(cols):
            sub = det(rows[1:], cols[:idx] + cols[idx + 1:])
            i = rows[0]
            ent = {0: neg[i][j]}
            if i == j:
                ent[1] = DensePoly([1], m.var)
            for d1, c1 in ent.items():
                for d2, c2 in sub.items():
                    term = c1 * c2 * Fraction(sign)
                    key = d1 + d2
                    out[key] = out.get(key, DensePoly([], m.var)) + term
            sign = -sign
        return out

    full = det(tuple(range(size)), tuple(range(size)))
    return [full.get(size - k, DensePoly([], m.var)) for k in range(1, size + 1)]


small_polys = st.lists(
    st.integers(min_value=-4, max_value=4), min_size=0, max_size=3
).map(lambda cs: DensePoly(cs, "z"))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda k: st.lists(
        st.lists(small_polys, min_size=k, max_size=k), min_size=k, max_size=k
    )
))
def test_charpoly_matches_cofactor_expansion(rows):
    m = PolyMatrix(rows, "z")
    assert poly_matrix_charpoly(m) == _charpoly_via_cofactors(m)


def test_charpoly_companion_fixture():
    z = DensePoly([0, 1], "z")
    zero = DensePoly([], "z")
    one = DensePoly([1], "z")
    m = PolyMatrix(
        [[zero, z, zero], [one, zero, z], [one, zero, zero]], "z"
    )
    c = poly_matrix_charpoly(m)
    assert c == [zero, z * Fraction(-1), DensePoly([0, 0, -1], "z")]


def test_poly_matrix_trace():
    z = DensePoly([0, 1], "z")
    m = PolyMatrix([[z, z], [z, z * z]], "z")
    assert m.trace() == z + z * z
