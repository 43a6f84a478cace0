"""Point counts and L-polynomials for the supported curve families.

Three families, all smooth projective models over F_q (q = p^r):

* ``ArtinSchreier(p, q_as, n)``: y^{q_as} - y = x^n over F_p, one point at
  infinity (gcd(n, p) = 1 makes the place at infinity totally ramified).
* ``FermatCurve(n, p, r)``: x^n + y^n + z^n = 0 in P^2, already smooth.
* ``ThreePointCover(n, a, b, p, r)``: y^n = x^a (1 - x)^b, branched over
  0, 1 and infinity; the rational points above a branch point with local
  exponent c are the w in F_Q with w^gcd(c, n) equal to the leading unit.

``count_points`` enumerates x over the field and uses the closed form of the
fibre size; ``count_points_charsum`` evaluates the same counts as sums of
Gauss or Jacobi sums.  The two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Protocol, Sequence, Union

import numpy as np

from . import _poly
from ._arith import is_prime, prime_power
from .errors import FieldTooLarge, NonIntegralLPolynomial
from .exp_sums import AddChar, MultChar, gauss_sum, jacobi_sum
from .finite_field import DEFAULT_FIELD_CAP, FieldCtx, make_field

DEFAULT_POINT_CAP = 10**7


class CountCache(Protocol):
    def get(self, key: str) -> Optional[int]: ...

    def put(self, key: str, value: int) -> None: ...


def _check_base(p: int, r: int, n: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("base field exponent must be >= 1")
    if n < 1 or n % p == 0:
        raise ValueError(f"n = {n} must be positive and prime to p = {p}")


@dataclass(frozen=True)
class ArtinSchreier:
    p: int
    q_as: int
    n: int

    family = "artin-schreier"

    def __post_init__(self):
        _check_base(self.p, 1, self.n)
        base, j = prime_power(self.q_as)
        if base != self.p:
            raise ValueError(f"q_as = {self.q_as} is not a power of p = {self.p}")

    @property
    def r(self) -> int:
        return 1

    @property
    def q(self) -> int:
        return self.p

    @property
    def as_exponent(self) -> int:
        return prime_power(self.q_as)[1]

    @property
    def params(self) -> str:
        return f"qas={self.q_as},n={self.n}"


@dataclass(frozen=True)
class FermatCurve:
    n: int
    p: int
    r: int = 1

    family = "fermat"

    def __post_init__(self):
        _check_base(self.p, self.r, self.n)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def params(self) -> str:
        return f"n={self.n}"


@dataclass(frozen=True)
class ThreePointCover:
    n: int
    a: int
    b: int
    p: int
    r: int = 1

    family = "three-point"

    def __post_init__(self):
        _check_base(self.p, self.r, self.n)
        n, a, b = self.n, self.a, self.b
        if not (0 < a < n and 0 < b < n):
            raise ValueError(f"exponents must satisfy 0 < a, b < n: {(a, b, n)}")
        if gcd(gcd(a, b), n) != 1:
            raise ValueError(f"gcd(n, a, b) = {gcd(gcd(a, b), n)} > 1: curve is reducible")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def params(self) -> str:
        return f"n={self.n},a={self.a},b={self.b}"


CurveInstance = Union[ArtinSchreier, FermatCurve, ThreePointCover]


def instance_label(C: CurveInstance) -> str:
    return f"{C.family}/p={C.p}/r={C.r}/{C.params}"


def cache_key(C: CurveInstance, k: int) -> str:
    return f"{C.family}/{C.p}/r={C.r},{C.params}/{k}"


def genus(C: CurveInstance) -> int:
    if isinstance(C, ArtinSchreier):
        return (C.q_as - 1) * (C.n - 1) // 2
    if isinstance(C, FermatCurve):
        return (C.n - 1) * (C.n - 2) // 2
    n, a, b = C.n, C.a, C.b
    twice = n + 2 - gcd(a, n) - gcd(b, n) - gcd(a + b, n)
    assert twice % 2 == 0
    return twice // 2


# -- brute-force counting ------------------------------------------------------

def _roots_of_unity_count(e: int, ctx: FieldCtx, sign: int = 1) -> int:
    """#{w in F_Q : w^e = sign} for sign = +-1."""
    d = gcd(e, ctx.order)
    if sign == 1 or ctx.p == 2:
        return d
    return d if (ctx.order // 2) % d == 0 else 0


def _count_artin_schreier(C: ArtinSchreier, ctx: FieldCtx) -> int:
    Q1 = ctx.order
    e = gcd(C.as_exponent, ctx.k)
    s = ctx.trace_powers
    c_exps = (np.arange(Q1, dtype=np.int64) * C.n) % Q1
    # y^{q_as} - y = c is solvable iff Tr_{Q/p^e}(c) = 0, i.e. Tr(lambda c) = 0
    # on the basis lambda = beta^l of F_{p^e}; fibres then have p^e points
    step = Q1 // (ctx.p**e - 1)
    in_image = np.ones(Q1, dtype=bool)
    for l in range(e):
        in_image &= s[(c_exps + l * step) % Q1] == 0
    affine_x = 1 + int(np.count_nonzero(in_image))
    return 1 + ctx.p**e * affine_x


def _count_fermat(C: FermatCurve, ctx: FieldCtx) -> int:
    Q1 = ctx.order
    d = gcd(C.n, Q1)
    log_minus_one = 0 if ctx.p == 2 else Q1 // 2
    roots_minus_one = d if log_minus_one % d == 0 else 0
    u = ctx.power_codes[(np.arange(Q1, dtype=np.int64) * C.n) % Q1]
    c = ctx.codes_affine(u, -1, ctx.p - 1)
    zero = c == 0
    logs = ctx.log_table[c[~zero]]
    chart = roots_minus_one + int(np.count_nonzero(zero)) + d * int(np.count_nonzero(logs % d == 0))
    return chart + roots_minus_one


def _branch_points(C: ThreePointCover, ctx: FieldCtx) -> int:
    n, a, b = C.n, C.a, C.b
    return (_roots_of_unity_count(gcd(a, n), ctx)
            + _roots_of_unity_count(gcd(b, n), ctx)
            + _roots_of_unity_count(gcd(a + b, n), ctx, -1 if b % 2 else 1))


def _count_three_point(C: ThreePointCover, ctx: FieldCtx) -> int:
    Q1 = ctx.order
    d = gcd(C.n, Q1)
    one_minus = ctx.codes_affine(ctx.power_codes, -1, 1)
    keep = one_minus != 0
    i = np.arange(Q1, dtype=np.int64)[keep]
    l1 = ctx.log_table[one_minus[keep]].astype(np.int64)
    on_curve = (C.a * i + C.b * l1) % d == 0
    return d * int(np.count_nonzero(on_curve)) + _branch_points(C, ctx)


def extension_field(C: CurveInstance, k: int, cap: int = DEFAULT_FIELD_CAP) -> FieldCtx:
    return make_field(C.p, C.r * k, cap)


def count_points(C: CurveInstance, k: int, cache: Optional[CountCache] = None,
                 field_cap: int = DEFAULT_FIELD_CAP) -> int:
    """Points of the smooth projective model over F_{q^k}."""
    key = cache_key(C, k)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    ctx = extension_field(C, k, field_cap)
    if isinstance(C, ArtinSchreier):
        N = _count_artin_schreier(C, ctx)
    elif isinstance(C, FermatCurve):
        N = _count_fermat(C, ctx)
    else:
        N = _count_three_point(C, ctx)
    if cache is not None:
        cache.put(key, N)
    return N


# -- character-sum counting ---------------------------------------------------

def count_points_charsum(C: CurveInstance, k: int, field_cap: int = DEFAULT_FIELD_CAP) -> int:
    ctx = extension_field(C, k, field_cap)
    Q, Q1 = ctx.size, ctx.order
    d = gcd(C.n, Q1)
    if isinstance(C, ArtinSchreier):
        e = gcd(C.as_exponent, ctx.k)
        step = Q1 // (ctx.p**e - 1)
        terms = []
        for t in range(ctx.p**e - 1):
            psi = AddChar(ctx, ctx.element(int(ctx.power_codes[t * step])))
            terms.extend(gauss_sum(MultChar(ctx, d, j), psi) for j in range(1, d))
        return Q + 1 + _rational_sum(terms)
    if isinstance(C, FermatCurve):
        if d == 1:
            return Q + 1
        lm1 = 0 if ctx.p == 2 else Q1 // 2
        terms = []
        for a in range(1, d):
            for b in range(1, d):
                if (a + b) % d:
                    sign = MultChar(ctx, d, a + b)(ctx.element(ctx.p - 1))
                    terms.append(sign * jacobi_sum(MultChar(ctx, d, a), MultChar(ctx, d, b)))
        return Q + 1 + _rational_sum(terms)
    terms = [jacobi_sum(MultChar(ctx, d, j * C.a), MultChar(ctx, d, j * C.b)) for j in range(1, d)]
    return Q - 2 + _branch_points(C, ctx) + _rational_sum(terms)


def _rational_sum(terms) -> int:
    if not terms:
        return 0
    acc = terms[0]
    for t in terms[1:]:
        acc = acc + t
    return acc.rational_value()


# -- L-polynomials --------------------------------------------------------------

@dataclass(frozen=True)
class PointCounts:
    counts: tuple[int, ...]  # N_1, ..., N_B
    q: int
    genus: int

    def weil_bound_ok(self) -> bool:
        """|N_k - (q^k + 1)| <= 2 g q^{k/2}, checked in integers."""
        for k, N in enumerate(self.counts, start=1):
            dev = N - self.q**k - 1
            if dev * dev > 4 * self.genus**2 * self.q**k:
                return False
        return True


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple[int, ...]  # a_0 = 1, ..., a_{2g}
    q: int
    weight: int = 1

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def genus(self) -> int:
        return self.degree // 2

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    def functional_equation_ok(self) -> bool:
        g, a = self.genus, self.coeffs
        if self.degree != 2 * g:
            return False
        return all(a[2 * g - i] == self.q ** (g - i) * a[i] for i in range(g + 1))

    def frobenius_power_sums(self, upto: int) -> list[int]:
        """sum alpha_i^k for k = 1..upto over the reciprocal roots alpha_i."""
        return [int(s) for s in _poly.power_sums(self.coeffs, upto)]

    def point_counts(self, upto: int) -> list[int]:
        """N_k = q^k + 1 - sum alpha_i^k, the counts predicted by this L."""
        return [self.q**k + 1 - s for k, s in enumerate(self.frobenius_power_sums(upto), start=1)]

    def reciprocal_roots(self) -> np.ndarray:
        """Numeric Frobenius eigenvalues, squarefree parts solved separately."""
        import sympy

        if self.degree == 0:
            return np.zeros(0, dtype=complex)
        T = sympy.Symbol("T")
        rev = sympy.Poly(list(self.coeffs), T)  # coefficients of T^{2g} L(1/T), leading first
        roots = []
        for factor, mult in rev.sqf_list()[1]:
            rts = np.roots([float(c) for c in factor.all_coeffs()])
            roots.extend(list(rts) * mult)
        return np.array(roots)

    def riemann_hypothesis_ok(self, rel_tol: float = 1e-6) -> bool:
        rts = self.reciprocal_roots()
        target = self.q ** (self.weight / 2)
        return bool(np.all(np.abs(np.abs(rts) / target - 1.0) <= rel_tol))

    def base_change(self, m: int) -> "LPolynomial":
        """L-polynomial over F_{q^m}: reciprocal roots alpha_i^m."""
        sums = _poly.power_sums(self.coeffs, m * self.degree)
        new = _poly.from_power_sums(sums[m - 1 :: m], self.degree)
        return LPolynomial(tuple(_to_int(c) for c in new), self.q**m, self.weight)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "q": self.q, "weight": self.weight}


def _to_int(c: Fraction) -> int:
    if Fraction(c).denominator != 1:
        raise NonIntegralLPolynomial(f"coefficient {c} is not an integer")
    return int(c)


def point_counts(C: CurveInstance, upto: int, cache: Optional[CountCache] = None,
                 field_cap: int = DEFAULT_FIELD_CAP) -> PointCounts:
    counts = tuple(count_points(C, k, cache, field_cap) for k in range(1, upto + 1))
    return PointCounts(counts, C.q, genus(C))


def l_polynomial_from_counts(counts: Sequence[int], q: int, g: int) -> LPolynomial:
    """Newton's identities on N_1..N_g, completed by the functional equation."""
    if g == 0:
        return LPolynomial((1,), q)
    if len(counts) < g:
        raise ValueError(f"need {g} counts, got {len(counts)}")
    sums = [q**k + 1 - counts[k - 1] for k in range(1, g + 1)]
    low = [_to_int(c) for c in _poly.from_power_sums(sums, g)]
    coeffs = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    return LPolynomial(tuple(coeffs), q)


def l_polynomial(C: CurveInstance, cache: Optional[CountCache] = None,
                 point_cap: int = DEFAULT_POINT_CAP, field_cap: int = DEFAULT_FIELD_CAP) -> LPolynomial:
    g = genus(C)
    if g == 0:
        return LPolynomial((1,), C.q)
    if C.q**g > point_cap:
        raise FieldTooLarge(f"q^g = {C.q}^{g} exceeds the point-count cap {point_cap}")
    pc = point_counts(C, g, cache, field_cap)
    if not pc.weil_bound_ok():
        raise NonIntegralLPolynomial(f"Weil bound violated by counts {pc.counts} of {instance_label(C)}")
    return l_polynomial_from_counts(pc.counts, C.q, g)


def round_trip_mismatches(C: CurveInstance, L: LPolynomial, max_field: int,
                          cache: Optional[CountCache] = None) -> list[tuple[int, int, int]]:
    """(k, counted, predicted) for every k <= 2g with q^k <= max_field that disagree."""
    upto = 0
    while upto < max(L.degree, 1) and C.q ** (upto + 1) <= max_field:
        upto += 1
    predicted = L.point_counts(upto)
    bad = []
    for k in range(1, upto + 1):
        N = count_points(C, k, cache)
        if N != predicted[k - 1]:
            bad.append((k, N, predicted[k - 1]))
    return bad
