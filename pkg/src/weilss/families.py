"""Character data, criterion predictions and exact eigenvalues per curve family.

Character sets are the classical H^1 decompositions:

* Artin-Schreier y^q - y = x^n over F_p: G = F_q x mu_n, pairs (psi, chi) with
  both nontrivial.  sigma_p acts by psi_b -> psi_{b^(1/p)} and chi -> chi^p.
* Fermat x^n + y^n = 1: G = mu_n^2, exponent pairs (a, b) with a, b, a + b all
  nonzero mod n, Frobenius multiplying both by q.
* Three-point cover y^n = x^a (1 - x)^b: G = mu_n, exponents j with ja, jb and
  j(a + b) nonzero mod n.

Each set has 2g elements; :func:`character_data` enforces that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from ._arith import lcm
from .characters import (
    CriterionReport,
    FrobeniusAction,
    GroupCharacter,
    GroupSpec,
    check_necessary,
    check_sufficient,
    minus_one_power_condition,
)
from .cyclotomic import CyclotomicInt
from .errors import NoClosedForm, NonIntegralLPolynomial, UnsupportedFamily
from .exp_sums import AddChar, MultChar, gauss_sum, jacobi_sum
from .finite_field import DEFAULT_FIELD_CAP, make_field
from .zeta import ArtinSchreier, CurveInstance, FermatCurve, LPolynomial, ThreePointCover, genus

SUPERSINGULAR = "supersingular"
NOT_SUPERSINGULAR = "not-supersingular"
INAPPLICABLE = "inapplicable"


def _artin_schreier_frobenius(C: ArtinSchreier) -> FrobeniusAction:
    j = C.as_exponent
    add = make_field(C.p, j)
    # column l holds the coordinates of (t^l)^(p^(j-1)) = (t^l)^(1/p)
    cols = []
    for l in range(j):
        basis = add.element([0] * l + [1])
        img = add.pow(basis, C.p ** (j - 1)).coeffs
        cols.append(list(img) + [0] * (j - len(img)))
    block = [[cols[l][i] for l in range(j)] for i in range(j)]
    return FrobeniusAction.block_diagonal([block, [[C.p % C.n if C.n > 1 else 0]]])


def character_data(C: CurveInstance) -> tuple[GroupSpec, FrobeniusAction, list[GroupCharacter]]:
    if isinstance(C, ArtinSchreier):
        j = C.as_exponent
        G = GroupSpec((C.p,) * j + (C.n,))
        F = _artin_schreier_frobenius(C)
        chars = [
            GroupCharacter(b + (e,))
            for b in itertools.product(range(C.p), repeat=j)
            if any(b)
            for e in range(1, C.n)
        ]
    elif isinstance(C, FermatCurve):
        n, q = C.n, C.q
        G = GroupSpec((n, n))
        F = FrobeniusAction.multipliers([q % n, q % n] if n > 1 else [0, 0])
        chars = [
            GroupCharacter((a, b))
            for a in range(1, n)
            for b in range(1, n)
            if (a + b) % n
        ]
    elif isinstance(C, ThreePointCover):
        n, a, b = C.n, C.a, C.b
        G = GroupSpec((n,))
        F = FrobeniusAction.multipliers([C.q % n])
        chars = [
            GroupCharacter((j,))
            for j in range(1, n)
            if (j * a) % n and (j * b) % n and (j * (a + b)) % n
        ]
    else:
        raise UnsupportedFamily(f"no character data for {type(C).__name__}")
    g = genus(C)
    if len(chars) != 2 * g:
        raise UnsupportedFamily(f"character set of size {len(chars)} but 2g = {2 * g} for {C}")
    return G, F, chars


@dataclass
class Prediction:
    """Criterion-side verdict for one curve, with which theorem produced it."""

    prediction: str
    witness_s: Optional[int]
    sufficient: CriterionReport
    necessary: Optional[CriterionReport] = None
    necessity_applicable: bool = False
    specialized_condition: Optional[bool] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "prediction": self.prediction,
            "witness_s": self.witness_s,
            "specialized_condition": self.specialized_condition,
            "necessity_applicable": self.necessity_applicable,
            "sufficient": self.sufficient.to_json(),
            "necessary": None if self.necessary is None else self.necessary.to_json(),
            "notes": self.notes,
        }


def _chars_conductor(G: GroupSpec, chars) -> int:
    m = 1
    for chi in chars:
        for e, n in zip(chi.exponents, G.factor_orders):
            m = lcm(m, n // gcd(e, n))
    return m


def predict(C: CurveInstance) -> Prediction:
    G, F, chars = character_data(C)
    if isinstance(C, ArtinSchreier):
        s = minus_one_power_condition(C.p, C.n)
        raw = check_sufficient(G, F, chars)
        notes = ["orbit check on the full F_q x mu_n is reported only; the mu_n condition decides"]
        return Prediction(
            SUPERSINGULAR if s is not None else INAPPLICABLE,
            s,
            raw,
            specialized_condition=s is not None,
            notes=notes,
        )
    if not chars:
        suff = check_sufficient(G, F, chars)
        return Prediction(SUPERSINGULAR, None, suff, notes=["genus 0: vacuously supersingular"])
    suff = check_sufficient(G, F, chars)
    s = minus_one_power_condition(C.q, _chars_conductor(G, chars))
    spec_cond = minus_one_power_condition(C.q, C.n) is not None if isinstance(C, FermatCurve) else None
    if suff.holds:
        return Prediction(SUPERSINGULAR, s, suff, specialized_condition=spec_cond)
    applicable = C.r == 1 and G.order % C.p != 0
    if applicable:
        nec = check_necessary(G, F, chars)
        verdict = NOT_SUPERSINGULAR if nec.holds else INAPPLICABLE
        return Prediction(verdict, None, suff, nec, True, spec_cond)
    return Prediction(INAPPLICABLE, None, suff, specialized_condition=spec_cond,
                      notes=["necessity needs the variety over the prime field"])


@dataclass(frozen=True)
class EigenOrbit:
    """A Frobenius orbit of characters of length f; sigma^f acts on it by mu."""

    orbit: tuple[GroupCharacter, ...]
    mu: CyclotomicInt

    @property
    def length(self) -> int:
        return len(self.orbit)


def _orbits(G: GroupSpec, F: FrobeniusAction, chars) -> list[tuple[GroupCharacter, ...]]:
    return check_sufficient(G, F, chars).orbits


def eigenvalues_exact(C: CurveInstance, field_cap: int = DEFAULT_FIELD_CAP) -> list[EigenOrbit]:
    """Gauss-sum (Artin-Schreier, q = p) or Jacobi-sum eigenvalues on each orbit."""
    G, F, chars = character_data(C)
    out = []
    if isinstance(C, ArtinSchreier):
        if C.q_as != C.p:
            raise NoClosedForm("no closed eigenvalue formula for Artin-Schreier curves with q > p")
        M = lcm(C.n, C.p)
        for orb in _orbits(G, F, chars):
            b, e = orb[0].exponents
            f = len(orb)
            d = gcd(e, C.n)
            ctx = make_field(C.p, f, cap=field_cap)
            g = gauss_sum(MultChar(ctx, C.n // d, e // d), AddChar(ctx, b))
            out.append(EigenOrbit(orb, (-g).embed(M)))
        return out
    for orb in _orbits(G, F, chars):
        f = len(orb)
        ctx = make_field(C.p, C.r * f, cap=field_cap)
        if isinstance(C, FermatCurve):
            a, b = orb[0].exponents
            d = gcd(gcd(a, b), C.n)
            n1, a1, b1 = C.n // d, a // d, b // d
            sign = MultChar(ctx, n1, a1 + b1)(ctx.neg(ctx.one))
            mu = -(sign * jacobi_sum(MultChar(ctx, n1, a1), MultChar(ctx, n1, b1)))
        else:
            (j,) = orb[0].exponents
            d = gcd(j, C.n)
            n1, j1 = C.n // d, j // d
            mu = -jacobi_sum(MultChar(ctx, n1, j1 * C.a), MultChar(ctx, n1, j1 * C.b))
        out.append(EigenOrbit(orb, mu.embed(C.n)))
    return out


def l_polynomial_from_eigenvalues(C: CurveInstance, field_cap: int = DEFAULT_FIELD_CAP) -> LPolynomial:
    """prod over orbits of (1 - mu T^f), which must have rational integer coefficients."""
    orbits = eigenvalues_exact(C, field_cap)
    m = orbits[0].mu.m if orbits else 1
    poly = [CyclotomicInt.from_int(m, 1)]
    for eo in orbits:
        f = eo.length
        new = poly + [CyclotomicInt.from_int(m, 0)] * f
        for i, c in enumerate(poly):
            new[i + f] = new[i + f] - eo.mu * c
        poly = new
    coeffs = []
    for c in poly:
        if not c.is_rational():
            raise NonIntegralLPolynomial(f"eigenvalue product has irrational coefficient {c!r}")
        coeffs.append(c.rational_value())
    return LPolynomial(tuple(coeffs), C.q)
