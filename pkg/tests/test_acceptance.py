"""End-to-end acceptance checks.

Each test prints one ``PASS`` or ``FAIL`` line with its evidence before
asserting.  Exact arithmetic throughout; the only float comparisons are the
brute-force character sums, at relative tolerance ``SUM_TOL``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import reduce

import numpy as np
import pytest
import sympy

from weilss._arith import divisors, is_prime, prime_power
from weilss._poly import mul as poly_mul
from weilss.characters import check_sufficient, minus_one_power_condition
from weilss.cyclotomic import cyclotomic_poly
from weilss.errors import FieldTooLarge
from weilss.exp_sums import AddChar, MultChar, gauss_sum, jacobi_sum
from weilss.families import NOT_SUPERSINGULAR, character_data, l_polynomial_from_eigenvalues, predict
from weilss.finite_field import make_field
from weilss.harness import PointCountCache
from weilss.weil import all_roots_of_unity, is_supersingular, newton_polygon, squared_scaled_charpoly
from weilss.zeta import (
    ArtinSchreier,
    FermatCurve,
    LPolynomial,
    ThreePointCover,
    count_points,
    count_points_charsum,
    genus,
    l_polynomial,
    point_counts,
)

import oracles

POINT_CAP = 10**7
CHARSUM_FIELD_MAX = 2**16
BRUTE_FIELD_MAX = 256
SUM_TOL = 1e-7

CACHE = PointCountCache()


def report(ok: bool, label: str, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")


def _label(C) -> str:
    if isinstance(C, ArtinSchreier):
        return f"AS(p={C.p},n={C.n})"
    if isinstance(C, FermatCurve):
        return f"Fermat(n={C.n})/F_{C.q}"
    return f"TPC(n={C.n},a={C.a},b={C.b})/F_{C.q}"


def _compute(C, cap=POINT_CAP):
    L = l_polynomial(C, CACHE, point_cap=cap)
    return L, is_supersingular(L)


# -- sweeps, computed once per module ------------------------------------------

def artin_schreier_instances():
    out = []
    for p in (2, 3, 5, 7):
        n = 1
        while True:
            C = ArtinSchreier(p, p, n) if n % p else None
            if C is not None:
                if p ** genus(C) > POINT_CAP:
                    break
                out.append(C)
            n += 1
    return out


def fermat_instances():
    out = []
    for n in range(3, 13):
        for q in (2, 3, 4, 5, 7):
            p, r = prime_power(q)
            if n % p == 0:
                continue
            C = FermatCurve(n, p, r)
            if q ** genus(C) <= POINT_CAP:
                out.append(C)
    return out


NECESSITY_CANDIDATES = [
    ThreePointCover(3, 1, 1, 7),
    ThreePointCover(4, 1, 2, 5),
    ThreePointCover(6, 1, 1, 7),
    ThreePointCover(5, 1, 1, 11),
    ThreePointCover(7, 1, 2, 2),
    FermatCurve(7, 2),
    FermatCurve(4, 5),
    FermatCurve(3, 7),
]

ANCHOR_CURVES = [ArtinSchreier(2, 2, 3), FermatCurve(3, 2, 2)]
ORDINARY_CONTROL = LPolynomial((1, 1, 2), 2)


@pytest.fixture(scope="module")
def as_sweep():
    return [(C, *_compute(C), predict(C)) for C in artin_schreier_instances()]


@pytest.fixture(scope="module")
def fermat_sweep():
    return [(C, *_compute(C)) for C in fermat_instances()]


@pytest.fixture(scope="module")
def necessity_sweep():
    return [(C, *_compute(C)) for C in NECESSITY_CANDIDATES]


@pytest.fixture(scope="module")
def anchor_sweep():
    return [(C, *_compute(C)) for C in ANCHOR_CURVES]


def all_curves():
    return artin_schreier_instances() + fermat_instances() + NECESSITY_CANDIDATES + ANCHOR_CURVES


# -- the checks --------------------------------------------------------------------

def test_artin_schreier_sufficiency_sweep(as_sweep):
    covered = [(C, v) for C, L, v, pred in as_sweep if minus_one_power_condition(C.p, C.n) is not None]
    bad = [_label(C) for C, v in covered if not v.supersingular]
    ok = not bad and len(covered) > 0
    per_p = {p: max(C.n for C, *_ in as_sweep if C.p == p) for p in (2, 3, 5, 7)}
    report(ok, "artin-schreier sufficiency sweep",
           f"{len(as_sweep)} instances (largest n per p: {per_p}), {len(covered)} covered by the "
           f"p^s = -1 (mod n) condition, {len(bad)} not supersingular {bad}")
    assert ok


def test_artin_schreier_converse_evidence(as_sweep):
    rows = [(C, v) for C, L, v, pred in as_sweep if minus_one_power_condition(C.p, C.n) is None]
    ss = [_label(C) for C, v in rows if v.supersingular]
    # reported, not asserted: a supersingular row here is a counterexample to an open converse
    report(True, "artin-schreier converse evidence",
           f"{len(rows)} rows without a witness s, {len(ss)} supersingular {ss} (expected 0)")
    assert all(not pred.specialized_condition for C, L, v, pred in as_sweep
               if minus_one_power_condition(C.p, C.n) is None)


def test_fermat_biconditional(fermat_sweep):
    mismatches = []
    for C, L, v in fermat_sweep:
        s = minus_one_power_condition(C.q, C.n)
        if v.supersingular != (s is not None):
            mismatches.append(f"{_label(C)} verdict={'ss' if v.supersingular else 'not ss'} s={s}")
    ok = not mismatches
    report(ok, "fermat biconditional with q",
           f"{len(fermat_sweep)} instances, {len(mismatches)} mismatches {mismatches}")
    assert ok


def test_fermat_biconditional_in_characteristic(fermat_sweep):
    """The same sweep against the characteristic p in place of q."""
    mismatches = [
        _label(C) for C, L, v in fermat_sweep
        if v.supersingular != (minus_one_power_condition(C.p, C.n) is not None)
    ]
    ok = not mismatches
    report(ok, "fermat biconditional with p",
           f"{len(fermat_sweep)} instances, {len(mismatches)} mismatches {mismatches}")
    assert ok


def test_necessity_unit_root(necessity_sweep):
    verified, notes = [], []
    for C, L, v in necessity_sweep:
        G, F, chars = character_data(C)
        if C.r != 1 or check_sufficient(G, F, chars).holds:
            notes.append(f"{_label(C)} not eligible")
            continue
        units = sum(n for s, n in v.slopes.segments if s == 0)
        pred = predict(C).prediction
        if units > 0 and pred == NOT_SUPERSINGULAR and not v.supersingular:
            verified.append(f"{_label(C)} slope-0 length {units}")
        else:
            notes.append(f"{_label(C)} units={units} prediction={pred}")
    three_point = [x for x in verified if x.startswith("TPC")]
    ok = len(three_point) >= 3 and len(verified) == len(necessity_sweep)
    report(ok, "necessity: slope-0 segment when the orbit condition fails",
           f"{len(verified)} verified ({len(three_point)} three-point): {verified}; other: {notes}")
    assert ok


def test_anchor_values(anchor_sweep):
    (as23, L_as, v_as), (f34, L_f, v_f) = anchor_sweep
    F4 = oracles.from_ctx(make_field(2, 2))
    F2 = oracles.from_ctx(make_field(2, 1))
    v_ord = is_supersingular(ORDINARY_CONTROL)
    checks = {
        "AS N_1 = 3 (brute force)": count_points(as23, 1) == oracles.naive_count(as23, F2) == 3,
        "AS L = 1 + 2T^2": L_as.coeffs == (1, 0, 2),
        "AS supersingular": v_as.supersingular,
        "Fermat/F_4 N_1 = 9 (brute force)": count_points(f34, 1) == oracles.naive_count(f34, F4) == 9,
        "Fermat/F_4 L = 1 + 4T + 4T^2": L_f.coeffs == (1, 4, 4),
        "Fermat/F_4 supersingular": v_f.supersingular,
        "control not supersingular": not v_ord.supersingular,
        "control slopes {0, 1}": v_ord.slopes.slopes() == [Fraction(0), Fraction(1)],
    }
    failed = [k for k, good in checks.items() if not good]
    report(not failed, "anchor values", f"{len(checks) - len(failed)}/{len(checks)} hold; failed {failed}")
    assert not failed


def test_cross_test_agreement(as_sweep, fermat_sweep, necessity_sweep, anchor_sweep):
    polys = [row[1] for row in as_sweep + fermat_sweep + necessity_sweep + anchor_sweep] + [ORDINARY_CONTROL]
    disagreements = []
    for L in polys:
        by_newton = newton_polygon(L).is_pure(Fraction(L.weight, 2))
        by_cyclotomic = all_roots_of_unity(squared_scaled_charpoly(L)).ok
        if by_newton != by_cyclotomic:
            disagreements.append((L.coeffs, L.q))
    report(not disagreements, "cyclotomic and newton tests agree",
           f"{len(polys)} L-polynomials, {len(disagreements)} disagreements {disagreements}")
    assert not disagreements


def _brute_gauss(F: oracles.SmallField, shift: int) -> np.ndarray:
    """g(chi^i, psi_shift) for i = 0..Q-2, summed from the definition."""
    xs = range(1, F.size)
    logs = np.array([F.log[x] for x in xs])
    add = np.array([cmath.exp(2j * cmath.pi * F.trace(F.mul(shift, x)) / F.p) for x in xs])
    i = np.arange(F.size - 1)[:, None]
    return np.exp(2j * np.pi * i * logs[None, :] / (F.size - 1)) @ add


def _brute_jacobi(F: oracles.SmallField) -> np.ndarray:
    """J(chi^i, chi^j) for all i, j, from the definition."""
    xs = [x for x in range(F.size) if x not in (0, 1)]
    l1 = np.array([F.log[x] for x in xs])
    l2 = np.array([F.log[F.sub(1, x)] for x in xs])
    i = np.arange(F.size - 1)[:, None]
    A = np.exp(2j * np.pi * i * l1[None, :] / (F.size - 1))
    B = np.exp(2j * np.pi * i * l2[None, :] / (F.size - 1))
    return A @ B.T


def _close(a: complex, b: complex) -> bool:
    return abs(a - b) <= SUM_TOL * max(1.0, abs(b))


def _jacobi_pairs(Q1: int):
    if Q1 <= 32:
        return [(i, j) for i in range(Q1) for j in range(Q1)]
    js = sorted({1, 2, Q1 // 2, Q1 - 1, Q1 // 3})
    return [(i, j) for i in range(Q1) for j in js] + [(j, i) for i in range(Q1) for j in js]


def test_oracle_equivalence():
    # character-sum counts against the table counts
    charsum_rows = bad_charsum = 0
    for C in all_curves():
        k = 1
        while C.q**k <= CHARSUM_FIELD_MAX and k <= max(2 * genus(C), 1):
            charsum_rows += 1
            if count_points_charsum(C, k) != count_points(C, k, CACHE):
                bad_charsum += 1
            k += 1
    # Gauss and Jacobi sums against definition-level sums on every field with at most 256 elements
    fields = [(p, k) for p in range(2, BRUTE_FIELD_MAX + 1) if is_prime(p)
              for k in range(1, 9) if p**k <= BRUTE_FIELD_MAX]
    sums = bad_sums = 0
    for p, k in fields:
        ctx = make_field(p, k)
        F = oracles.from_ctx(ctx)
        Q1 = ctx.order
        for shift in sorted({1, F.gen, F.size - 1}):
            brute = _brute_gauss(F, shift)
            psi = AddChar(ctx, ctx.element(F.digits(shift)))
            for i in range(Q1):
                sums += 1
                if not _close(gauss_sum(MultChar(ctx, Q1, i), psi).to_complex(), brute[i]):
                    bad_sums += 1
        J = _brute_jacobi(F)
        for i, j in _jacobi_pairs(Q1):
            sums += 1
            if not _close(jacobi_sum(MultChar(ctx, Q1, i), MultChar(ctx, Q1, j)).to_complex(), J[i, j]):
                bad_sums += 1
    # closed-form eigenvalues against counted L-polynomials wherever both exist
    overlap = bad_eigen = outside = 0
    for C in all_curves():
        try:
            L_eig = l_polynomial_from_eigenvalues(C)
        except FieldTooLarge:
            outside += 1
            continue
        overlap += 1
        if L_eig.coeffs != l_polynomial(C, CACHE, point_cap=POINT_CAP).coeffs:
            bad_eigen += 1
    ok = bad_charsum == 0 and bad_sums == 0 and bad_eigen == 0
    report(ok, "oracle equivalence",
           f"charsum {charsum_rows} counts/{bad_charsum} bad; {len(fields)} fields, {sums} Gauss/Jacobi "
           f"sums/{bad_sums} bad; eigenvalues {overlap} instances/{bad_eigen} bad ({outside} beyond the field cap)")
    assert ok


def test_structural_invariants(as_sweep, fermat_sweep, necessity_sweep, anchor_sweep):
    failures = []
    rows = [row[:3] for row in as_sweep + fermat_sweep + necessity_sweep + anchor_sweep]
    for C, L, v in rows:
        g = genus(C)
        if not L.functional_equation_ok():
            failures.append(f"{_label(C)} functional equation")
        if g and not point_counts(C, g, CACHE).weil_bound_ok():
            failures.append(f"{_label(C)} Weil bound")
        slopes = sorted(v.slopes.slopes())
        if slopes != sorted(1 - s for s in slopes) or len(slopes) != 2 * g:
            failures.append(f"{_label(C)} slope symmetry")
        G, F, chars = character_data(C)
        if len(chars) != 2 * g:
            failures.append(f"{_label(C)} charset {len(chars)} != {2 * g}")
    T = sympy.Symbol("T")
    for m in range(1, 201):
        prod = reduce(poly_mul, (list(cyclotomic_poly(d).coeffs) for d in divisors(m)), [1])
        if prod != [-1] + [0] * (m - 1) + [1]:
            failures.append(f"product of Phi_d over d | {m}")
        if list(cyclotomic_poly(m).coeffs) != sympy.Poly(sympy.cyclotomic_poly(m, T), T).all_coeffs()[::-1]:
            failures.append(f"Phi_{m} differs from sympy")
    report(not failures, "structural invariants",
           f"{len(rows)} curves and m <= 200; {len(failures)} failures {failures[:10]}")
    assert not failures
