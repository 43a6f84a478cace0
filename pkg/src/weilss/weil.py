"""Two independent supersingularity tests for an L-polynomial.

(A) Cyclotomic: the Frobenius eigenvalues alpha satisfy alpha = q^{w/2} zeta
    exactly when every alpha^2 / q^w is a root of unity.  The monic polynomial
    with those roots is built exactly by root squaring and then factored by
    trial division with the Phi_m of degree at most its own degree.
(B) Newton polygon: all p-adic slopes equal w/2, measured in v_q units.

The two must agree (Kronecker); a disagreement is raised, never returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import _poly
from ._arith import euler_phi, lcm, prime_power
from .cyclotomic import cyclotomic_poly
from .errors import InternalDisagreement, ZeroLeadingCoefficient
from .zeta import LPolynomial


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple[tuple[Fraction, int], ...]  # (slope, horizontal length)

    @property
    def length(self) -> int:
        return sum(n for _, n in self.segments)

    def slopes(self) -> list[Fraction]:
        """Slope multiset, one entry per unit of horizontal length."""
        return [s for s, n in self.segments for _ in range(n)]

    def is_pure(self, slope: Fraction) -> bool:
        return all(s == slope for s, _ in self.segments)

    def to_json(self) -> list:
        return [[_frac(s), n] for s, n in self.segments]


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _valuation(a: int, p: int) -> int:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def newton_polygon(L: LPolynomial, p: Optional[int] = None) -> NewtonPolygon:
    """Lower convex hull of (i, v_q(a_i)) over the nonzero coefficients."""
    base, r = prime_power(L.q)
    if p is not None and p != base:
        raise ValueError(f"p = {p} is not the characteristic of q = {L.q}")
    if not L.coeffs or L.coeffs[0] == 0:
        raise ZeroLeadingCoefficient("constant term of the L-polynomial vanishes")
    pts = [(i, Fraction(_valuation(a, base), r)) for i, a in enumerate(L.coeffs) if a]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless the turn is strictly counter-clockwise
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = tuple(
        (Fraction(y2 - y1) / (x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(segs)


def squared_scaled_charpoly(L: LPolynomial) -> list[Fraction]:
    """Monic polynomial (ascending coefficients) whose roots are alpha_i^2 / q^w."""
    D = L.degree
    if D == 0:
        return [Fraction(1)]
    c = list(reversed(L.coeffs))  # T^D L(1/T), roots alpha_i
    c_neg = [x if i % 2 == 0 else -x for i, x in enumerate(c)]
    prod = _poly.mul(c, c_neg)
    sign = -1 if D % 2 else 1
    qw = L.q**L.weight
    return [Fraction(sign * prod[2 * j] * qw**j, qw**D) for j in range(D + 1)]


@lru_cache(maxsize=None)
def _conductors_up_to(degree: int) -> tuple[int, ...]:
    # phi(m) >= sqrt(m / 2), so m <= 2 degree^2 covers every phi(m) <= degree
    return tuple(m for m in range(1, 2 * degree * degree + 3) if euler_phi(m) <= degree)


@dataclass(frozen=True)
class CyclotomicFactorization:
    ok: bool
    factors: tuple[tuple[int, int], ...] = ()
    witness: Optional[str] = None


def all_roots_of_unity(S: Sequence[Fraction]) -> CyclotomicFactorization:
    """Decide whether a monic rational polynomial is a product of cyclotomics."""
    S = [Fraction(x) for x in S]
    if S[-1] != 1:
        raise ValueError("polynomial must be monic")
    for j, x in enumerate(S):
        if x.denominator != 1:
            return CyclotomicFactorization(False, (), f"non-integer coefficient of T^{j}: {_frac(x)}")
    rest = [int(x) for x in S]
    factors = []
    for m in _conductors_up_to(len(rest) - 1):
        if len(rest) == 1:
            break
        phi = cyclotomic_poly(m).coeffs
        if len(phi) > len(rest):
            continue
        e = 0
        while len(rest) >= len(phi):
            quo, rem = _poly.divmod_monic(rest, phi)
            if rem:
                break
            rest, e = quo, e + 1
        if e:
            factors.append((m, e))
    if len(rest) > 1:
        return CyclotomicFactorization(False, tuple(factors), f"residual non-cyclotomic factor {rest}")
    return CyclotomicFactorization(True, tuple(factors))


@dataclass
class Verdict:
    supersingular: bool
    by_cyclotomic: bool
    by_newton: bool
    slopes: NewtonPolygon
    cyclo_factors: Optional[tuple[tuple[int, int], ...]] = None
    failure_witness: Optional[str] = None
    l_polynomial: Optional[LPolynomial] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "supersingular": self.supersingular,
            "by_cyclotomic": self.by_cyclotomic,
            "by_newton": self.by_newton,
            "slopes": self.slopes.to_json(),
            "cyclo_factors": None if self.cyclo_factors is None else [list(f) for f in self.cyclo_factors],
            "failure_witness": self.failure_witness,
        }


def is_supersingular(L: LPolynomial) -> Verdict:
    np_ = newton_polygon(L)
    target = Fraction(L.weight, 2)
    by_newton = np_.is_pure(target)
    fac = all_roots_of_unity(squared_scaled_charpoly(L))
    if fac.ok != by_newton:
        raise InternalDisagreement(
            f"cyclotomic test says {fac.ok}, Newton polygon says {by_newton} for {L.coeffs} (q={L.q})"
        )
    witness = None
    if not by_newton:
        bad = next(s for s, _ in np_.segments if s != target)
        witness = f"slope {_frac(bad)} != {_frac(target)}; {fac.witness}"
    return Verdict(by_newton, fac.ok, by_newton, np_, fac.factors if fac.ok else None, witness, L)


def numeric_roots(S: Sequence[Fraction]) -> np.ndarray:
    """Numeric roots, squarefree parts solved separately (repeated roots are common)."""
    import sympy

    if len(S) <= 1:
        return np.zeros(0, dtype=complex)
    T = sympy.Symbol("T")
    poly = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in reversed(S)], T)
    out = []
    for f, mult in poly.sqf_list()[1]:
        out.extend(list(np.roots([float(c) for c in f.all_coeffs()])) * mult)
    return np.array(out)


def numeric_corroboration(L: LPolynomial, verdict: Verdict, tol: float = 1e-6) -> bool:
    """Float check of the exact verdict.

    Every root of the squared-scaled polynomial has modulus 1 for any genuine
    L-polynomial; supersingularity means they are moreover roots of unity of
    the orders found in the factorisation.
    """
    roots = numeric_roots(squared_scaled_charpoly(L))
    if not np.all(np.abs(np.abs(roots) - 1) <= tol):
        return False
    if verdict.supersingular:
        M = 1
        for m, _ in verdict.cyclo_factors or ():
            M = lcm(M, m)
        return bool(np.all(np.abs(roots**M - 1) <= tol * max(M, 1)))
    orders = _conductors_up_to(max(L.degree, 1))
    angles = np.angle(roots) / (2 * np.pi)
    # a root is a root of unity of admissible order iff its angle is k/m for such m
    def near_root_of_unity(a: float) -> bool:
        return any(abs(a * m - round(a * m)) <= tol * m for m in orders)

    return not all(near_root_of_unity(a) for a in angles)
