import itertools

import pytest

from weilss.cyclotomic import CyclotomicInt
from weilss.errors import FieldMismatch, FieldTooLarge
from weilss.exp_sums import AddChar, MultChar, gauss_sum, gauss_sum_lifted, jacobi_sum, standard_add_char
from weilss.finite_field import make_field

import oracles
from weilss._arith import divisors, lcm

SMALL_FIELDS = [(p, k) for p in (2, 3, 5, 7, 11, 13) for k in range(1, 9) if p**k <= 256] + [
    (p, 1) for p in (17, 19, 23, 29, 31, 37, 41, 43, 47, 53)
]
TOL = 1e-7


def close(a: complex, b: complex) -> bool:
    return abs(a - b) <= TOL * max(1.0, abs(b))


def test_gauss_examples():
    F3 = make_field(3, 1)
    psi = standard_add_char(F3)
    assert gauss_sum(MultChar(F3, 2, 0), psi) == -1
    assert gauss_sum(MultChar(F3, 2, 1), AddChar(F3, 0)) == 0
    g = gauss_sum(MultChar(F3, 2, 1), psi)
    assert g.m == 6
    z3 = CyclotomicInt(3, [0, 1])
    assert g == (z3 - z3 * z3).embed(6)
    assert g * g == -3


def test_jacobi_examples():
    F4 = make_field(2, 2)
    chi = MultChar(F4, 3, 1)
    J = jacobi_sum(chi, chi)
    assert abs(J.to_complex()) ** 2 == pytest.approx(4)
    assert (J * J.conjugate()) == 4
    F5 = make_field(5, 1)
    q = MultChar(F5, 2, 1)
    assert jacobi_sum(q, q) == -1
    # chi1 chi2 trivial, both nontrivial: -chi1(-1)
    F7 = make_field(7, 1)
    c = MultChar(F7, 3, 1)
    assert jacobi_sum(c, c.inverse()) == -c(F7.element(-1))
    assert jacobi_sum(MultChar(F7, 3, 0), MultChar(F7, 3, 0)) == F7.size - 2
    assert jacobi_sum(MultChar(F7, 3, 0), c) == -1


def test_lifted_examples():
    F3 = make_field(3, 1)
    chi, psi = MultChar(F3, 2, 1), standard_add_char(F3)
    g1 = gauss_sum(chi, psi)
    assert gauss_sum_lifted(chi, psi, 1) == g1
    g2 = gauss_sum_lifted(chi, psi, 2)
    assert g2 == -(g1 * g1) == 3
    assert abs(g2.to_complex()) ** 2 == pytest.approx(9)
    with pytest.raises(FieldTooLarge):
        gauss_sum_lifted(chi, psi, 40)


@pytest.mark.parametrize("pkr", [(2, 1, 3), (2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4), (7, 1, 2)])
def test_hasse_davenport(pkr):
    p, k, r = pkr
    F = make_field(p, k)
    psi = standard_add_char(F)
    for n in divisors(F.order)[1:]:
        for j in range(1, n):
            chi = MultChar(F, n, j)
            g1 = gauss_sum(chi, psi)
            assert -gauss_sum_lifted(chi, psi, r) == (-g1) ** r


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        gauss_sum(MultChar(make_field(5), 2, 1), standard_add_char(make_field(7)))
    with pytest.raises(FieldMismatch):
        jacobi_sum(MultChar(make_field(5), 2, 1), MultChar(make_field(7), 2, 1))


def test_mult_char_properties():
    F = make_field(3, 3)
    chi = MultChar(F, 13, 2)
    assert chi(F.one) == 1
    assert chi.exact_order == 13
    for a, b in itertools.islice(itertools.product(range(1, F.size), repeat=2), 0, None, 29):
        x, y = F.element(a), F.element(b)
        assert chi(F.mul(x, y)) == chi(x) * chi(y)
    assert MultChar(F, 26, 4).exact_order == 13
    with pytest.raises(ValueError):
        MultChar(F, 5, 1)


def test_add_char_properties():
    F = make_field(2, 4)
    psi = AddChar(F, F.element(7))
    assert not psi.is_trivial() and AddChar(F, 0).is_trivial()
    for a, b in itertools.islice(itertools.product(range(F.size), repeat=2), 0, None, 11):
        x, y = F.element(a), F.element(b)
        assert psi(F.add(x, y)) == psi(x) * psi(y)


def _all_characters(F):
    for n in divisors(F.order):
        for j in range(n):
            yield n, j


@pytest.mark.parametrize("pk", SMALL_FIELDS)
def test_gauss_matches_brute_force(pk):
    F = make_field(*pk)
    ref = oracles.from_ctx(F)
    shifts = sorted({0, 1, F.size - 1, F.size // 2})
    for n, j in _all_characters(F):
        chi = MultChar(F, n, j)
        for s in shifts:
            g = gauss_sum(chi, AddChar(F, s))
            assert g.m == lcm(n, F.p)
            assert close(g.to_complex(), oracles.gauss_sum(ref, n, j, s))


@pytest.mark.parametrize("pk", SMALL_FIELDS)
def test_jacobi_matches_brute_force(pk):
    F = make_field(*pk)
    ref = oracles.from_ctx(F)
    chars = [(n, j) for n, j in _all_characters(F) if n <= 16]
    for (n1, j1), (n2, j2) in itertools.islice(itertools.product(chars, repeat=2), 0, None, 3):
        J = jacobi_sum(MultChar(F, n1, j1), MultChar(F, n2, j2))
        assert close(J.to_complex(), oracles.jacobi_sum(ref, n1, j1, n2, j2))


@pytest.mark.parametrize("pk", [(3, 2), (2, 4), (13, 1), (5, 2), (2, 6), (7, 2), (3, 4)])
def test_gauss_identities_exact(pk):
    F = make_field(*pk)
    psi = standard_add_char(F)
    minus_one = F.neg(F.one)
    for n in divisors(F.order)[1:]:
        M = lcm(n, F.p)
        for j in range(1, n):
            chi = MultChar(F, n, j)
            g = gauss_sum(chi, psi)
            # |g|^2 = q exactly
            assert g * g.conjugate() == F.size
            # g(chi-bar) = chi(-1) conj(g(chi))
            assert gauss_sum(chi.inverse(), psi) == chi(minus_one).embed(M) * g.conjugate()


@pytest.mark.parametrize("pk", [(3, 2), (2, 4), (13, 1), (7, 2), (2, 6)])
def test_jacobi_gauss_factorisation(pk):
    F = make_field(*pk)
    psi = standard_add_char(F)
    for n in [d for d in divisors(F.order) if 1 < d <= 24]:
        M = lcm(n, F.p)
        for j1, j2 in itertools.product(range(1, n), repeat=2):
            if (j1 + j2) % n == 0:
                continue
            c1, c2 = MultChar(F, n, j1), MultChar(F, n, j2)
            J = jacobi_sum(c1, c2).embed(M)
            assert J * gauss_sum(c1 * c2, psi) == gauss_sum(c1, psi) * gauss_sum(c2, psi)
