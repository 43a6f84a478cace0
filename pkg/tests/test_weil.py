from collections import Counter
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from weilss import _poly
from weilss._arith import euler_phi
from weilss.cyclotomic import cyclotomic_poly
from weilss.errors import InternalDisagreement, ZeroLeadingCoefficient
from weilss.weil import (
    all_roots_of_unity,
    is_supersingular,
    newton_polygon,
    numeric_corroboration,
    squared_scaled_charpoly,
)
from weilss.zeta import ArtinSchreier, FermatCurve, LPolynomial, ThreePointCover, l_polynomial

F = Fraction


def test_newton_examples():
    assert newton_polygon(LPolynomial((1, 0, 2), 2)).segments == ((F(1, 2), 2),)
    assert newton_polygon(LPolynomial((1, 1, 2), 2)).segments == ((F(0), 1), (F(1), 1))
    assert newton_polygon(LPolynomial((1,), 5)).segments == ()
    with pytest.raises(ZeroLeadingCoefficient):
        newton_polygon(LPolynomial((0, 1, 2), 2))


def test_newton_uses_q_units():
    # over F_4: L = 1 + 4T + 4T^2 lies on the line of slope 1/2 in v_4 units
    assert newton_polygon(LPolynomial((1, 4, 4), 4)).segments == ((F(1, 2), 2),)
    assert newton_polygon(LPolynomial((1, 1, 4), 4)).segments == ((F(0), 1), (F(1), 1))


def test_squared_scaled_examples():
    assert squared_scaled_charpoly(LPolynomial((1, 0, 2), 2)) == [1, 2, 1]  # (T + 1)^2
    assert squared_scaled_charpoly(LPolynomial((1,), 2)) == [1]
    assert squared_scaled_charpoly(LPolynomial((1, 1, 2), 2)) == [1, F(3, 2), 1]


def test_roots_of_unity_examples():
    r = all_roots_of_unity([1, 0, 1])
    assert r.ok and r.factors == ((4, 1),)
    r = all_roots_of_unity([1, 2, 1])
    assert r.ok and r.factors == ((2, 2),)
    r = all_roots_of_unity([-2, 1])
    assert not r.ok and "residual" in r.witness
    r = all_roots_of_unity([1, F(3, 2), 1])
    assert not r.ok and "non-integer" in r.witness


def test_verdict_examples():
    v = is_supersingular(LPolynomial((1, 0, 2), 2))
    assert v.supersingular and v.by_cyclotomic and v.by_newton and v.cyclo_factors == ((2, 2),)
    v = is_supersingular(LPolynomial((1, 1, 2), 2))
    assert not v.supersingular and v.failure_witness and v.slopes.slopes() == [0, 1]
    assert is_supersingular(LPolynomial((1,), 3)).supersingular
    js = is_supersingular(LPolynomial((1, 0, 2), 2)).to_json()
    assert js["slopes"] == [["1/2", 2]] and js["cyclo_factors"] == [[2, 2]]


def test_disagreement_is_raised():
    # not a Weil polynomial: alpha = +-3 sqrt 2 has slope 1/2 but alpha^2 / 2 = 9
    with pytest.raises(InternalDisagreement):
        is_supersingular(LPolynomial((1, 0, -18), 2))


@st.composite
def cyclotomic_products(draw):
    ms = draw(st.lists(st.integers(1, 40), min_size=0, max_size=5))
    poly = [1]
    for m in ms:
        poly = _poly.mul(poly, cyclotomic_poly(m).coeffs)
    return ms, poly


@given(cyclotomic_products())
def test_factorisation_recovers_cyclotomics(data):
    ms, poly = data
    r = all_roots_of_unity(poly)
    assert r.ok
    assert Counter(dict(r.factors)) == Counter(ms)
    more = _poly.mul(poly, [-3, 1])
    assert not all_roots_of_unity(more).ok


def test_conductor_bound_covers_phi():
    from weilss.weil import _conductors_up_to

    for d in range(1, 50):
        cands = set(_conductors_up_to(d))
        assert {m for m in range(1, 5000) if euler_phi(m) <= d} <= cands


@st.composite
def weil_polynomials(draw):
    """Products of genus-one factors 1 - aT + qT^2 with |a| <= 2 sqrt q."""
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 25]))
    factors = draw(st.lists(st.integers(-isqrt(4 * q), isqrt(4 * q)), min_size=0, max_size=4))
    coeffs = [1]
    for a in factors:
        coeffs = _poly.mul(coeffs, [1, -a, q])
    return LPolynomial(tuple(coeffs), q), factors


def _ordinary(a: int, q: int) -> bool:
    # the factor's polygon through (1, v_q(a)) is straight iff v_q(a) >= 1/2
    return (a * a) % q != 0


def test_partial_divisibility_is_not_enough():
    v = is_supersingular(LPolynomial((1, -2, 8), 8))
    assert not v.supersingular and v.slopes.segments == ((F(1, 3), 1), (F(2, 3), 1))


@given(weil_polynomials())
def test_verdict_on_random_weil_polynomials(data):
    L, factors = data
    v = is_supersingular(L)
    assert v.supersingular == (not any(_ordinary(a, L.q) for a in factors))
    assert numeric_corroboration(L, v)
    # slope symmetry s <-> 1 - s
    slopes = v.slopes.slopes()
    assert sorted(slopes) == sorted(1 - s for s in slopes)
    for m in (2, 3):
        assert is_supersingular(L.base_change(m)).supersingular == v.supersingular


FAMILY_L = [l_polynomial(C) for C in [
    ArtinSchreier(2, 2, 3), ArtinSchreier(2, 2, 7), ArtinSchreier(3, 3, 5), ArtinSchreier(2, 2, 15),
    FermatCurve(3, 2, 2), FermatCurve(7, 2), FermatCurve(4, 5), FermatCurve(5, 3),
    ThreePointCover(6, 1, 1, 7), ThreePointCover(13, 1, 3, 3), ThreePointCover(5, 1, 1, 11),
]]


@pytest.mark.parametrize("L", FAMILY_L, ids=lambda L: str(L.coeffs[:4]))
def test_polygon_invariants(L):
    P = newton_polygon(L)
    slopes = [s for s, _ in P.segments]
    assert slopes == sorted(set(slopes))
    assert P.length == L.degree
    assert all(0 <= s <= 1 for s in slopes)
    assert sorted(P.slopes()) == sorted(1 - s for s in P.slopes())
    # every point (i, v_q(a_i)) lies on or above the polygon
    p, r = L.p, 1
    while p**r != L.q:
        r += 1
    height, x = [F(0)], 0
    for s, n in P.segments:
        for _ in range(n):
            height.append(height[-1] + s)
    for i, a in enumerate(L.coeffs):
        if a:
            v = 0
            while a % p == 0:
                a //= p
                v += 1
            assert F(v, r) >= height[i]
    v = is_supersingular(L)
    assert numeric_corroboration(L, v)
    for m in (2, 3):
        assert is_supersingular(L.base_change(m)).supersingular == v.supersingular
