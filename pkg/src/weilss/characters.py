"""Characters of finite abelian groups and the Frobenius orbit criteria.

G is presented as Z/n_1 x ... x Z/n_t and a character is its exponent tuple
(e_1, ..., e_t), evaluating to prod zeta_{n_i}^{e_i g_i}.  A Frobenius action
is an integer matrix acting on exponent tuples.  The action on characters is
taken as chi -> chi o sigma; its inverse chi -> chi o sigma^{-1} generates the
same cyclic group, so every orbit (and both criteria) is unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence

from ._arith import multiplicative_order
from .errors import InvalidAction, NotCoprime

ENUMERATION_LIMIT = 100_000


@dataclass(frozen=True)
class GroupSpec:
    factor_orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factor_orders", tuple(int(n) for n in self.factor_orders))
        if any(n < 1 for n in self.factor_orders):
            raise ValueError(f"factor orders must be >= 1: {self.factor_orders}")

    @property
    def order(self) -> int:
        return prod(self.factor_orders)

    def character(self, exponents: Sequence[int]) -> "GroupCharacter":
        if len(exponents) != len(self.factor_orders):
            raise ValueError(f"character {tuple(exponents)} does not match {self.factor_orders}")
        return GroupCharacter(tuple(int(e) % n for e, n in zip(exponents, self.factor_orders)))

    def characters(self) -> Iterator["GroupCharacter"]:
        for exps in itertools.product(*(range(n) for n in self.factor_orders)):
            yield GroupCharacter(exps)

    def trivial(self) -> "GroupCharacter":
        return GroupCharacter((0,) * len(self.factor_orders))

    def inverse(self, chi: "GroupCharacter") -> "GroupCharacter":
        return GroupCharacter(tuple(-e % n for e, n in zip(chi.exponents, self.factor_orders)))


@dataclass(frozen=True, order=True)
class GroupCharacter:
    exponents: tuple[int, ...]

    def __iter__(self):
        return iter(self.exponents)


@dataclass(frozen=True)
class FrobeniusAction:
    """Matrix on exponent tuples: chi'_i = sum_l matrix[i][l] * chi_l mod n_i."""

    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def multipliers(cls, ms: Sequence[int]) -> "FrobeniusAction":
        t = len(ms)
        return cls(tuple(tuple(int(ms[i]) if i == j else 0 for j in range(t)) for i in range(t)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence[Sequence[Sequence[int]]]) -> "FrobeniusAction":
        size = sum(len(b) for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b:
                rows.append(tuple([0] * off + [int(x) for x in r] + [0] * (size - off - len(r))))
            off += len(b)
        return cls(tuple(rows))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.matrix) for j, x in enumerate(r) if i != j)

    def apply(self, G: GroupSpec, chi: GroupCharacter) -> GroupCharacter:
        ns = G.factor_orders
        return GroupCharacter(tuple(
            sum(a * e for a, e in zip(row, chi.exponents)) % ns[i] for i, row in enumerate(self.matrix)
        ))

    def validate(self, G: GroupSpec) -> None:
        ns = G.factor_orders
        t = len(ns)
        if len(self.matrix) != t or any(len(r) != t for r in self.matrix):
            raise InvalidAction(f"matrix shape does not match {t} factors")
        for i, row in enumerate(self.matrix):
            for j, a in enumerate(row):
                if (a * ns[j]) % ns[i]:
                    raise InvalidAction(f"entry ({i},{j})={a} is not a map Z/{ns[j]} -> Z/{ns[i]}")
        if G.order <= ENUMERATION_LIMIT:
            image = {self.apply(G, chi) for chi in G.characters()}
            if len(image) != G.order:
                raise InvalidAction("induced map on characters is not a bijection")
        elif self.is_diagonal():
            for i, n in enumerate(ns):
                if gcd(self.matrix[i][i], n) != 1:
                    raise InvalidAction(f"multiplier {self.matrix[i][i]} not a unit mod {n}")
        else:
            raise InvalidAction("group too large to validate a non-diagonal action")


@dataclass
class CriterionReport:
    """Outcome of an orbit criterion.

    For ``criterion == "sufficient"`` ``holds`` means every listed character has
    its inverse in its own orbit and ``violating_orbit`` is the first orbit that
    does not.  For ``"necessary"`` ``holds`` means some orbit lacks the inverse;
    that orbit is then ``violating_orbit`` (it violates self-duality).
    """

    holds: bool
    orbits: list[tuple[GroupCharacter, ...]]
    violating_orbit: Optional[tuple[GroupCharacter, ...]] = None
    criterion: str = "sufficient"

    def to_json(self) -> dict:
        enc = lambda orb: [list(c.exponents) for c in orb]  # noqa: E731
        return {
            "criterion": self.criterion,
            "holds": self.holds,
            "orbits": [enc(o) for o in self.orbits],
            "violating_orbit": None if self.violating_orbit is None else enc(self.violating_orbit),
        }


def frobenius_orbit(G: GroupSpec, F: FrobeniusAction, chi: GroupCharacter) -> list[GroupCharacter]:
    chi = G.character(chi.exponents)
    orbit = [chi]
    x = F.apply(G, chi)
    while x != chi:
        orbit.append(x)
        if len(orbit) > G.order:
            raise InvalidAction("Frobenius orbit does not close; action is not invertible")
        x = F.apply(G, x)
    return orbit


def _orbits(G: GroupSpec, F: FrobeniusAction, chars: Iterable[GroupCharacter]):
    F.validate(G)
    seen: dict[GroupCharacter, int] = {}
    orbits: list[tuple[GroupCharacter, ...]] = []
    per_char = []
    for chi in chars:
        chi = G.character(chi.exponents)
        if chi not in seen:
            orb = tuple(frobenius_orbit(G, F, chi))
            for x in orb:
                seen[x] = len(orbits)
            orbits.append(orb)
        per_char.append((chi, orbits[seen[chi]]))
    return orbits, per_char


def _self_dual(G: GroupSpec, chi: GroupCharacter, orbit: tuple[GroupCharacter, ...]) -> bool:
    return G.inverse(chi) in orbit


def check_sufficient(G: GroupSpec, F: FrobeniusAction, chars: Iterable[GroupCharacter]) -> CriterionReport:
    """Every chi in ``chars`` has chi^{-1} in its Frobenius orbit."""
    orbits, per_char = _orbits(G, F, chars)
    for chi, orb in per_char:
        if not _self_dual(G, chi, orb):
            return CriterionReport(False, orbits, orb, "sufficient")
    return CriterionReport(True, orbits, None, "sufficient")


def check_necessary(G: GroupSpec, F: FrobeniusAction, chars: Iterable[GroupCharacter]) -> CriterionReport:
    """Some chi in ``chars`` has chi^{-1} outside its orbit (predicts non-supersingular).

    Applicability (q = p, weight one, p not dividing |G|) is the caller's job.
    """
    orbits, per_char = _orbits(G, F, chars)
    for chi, orb in per_char:
        if not _self_dual(G, chi, orb):
            return CriterionReport(True, orbits, orb, "necessary")
    return CriterionReport(False, orbits, None, "necessary")


def minus_one_power_condition(q: int, n: int) -> Optional[int]:
    """Smallest s >= 1 with q^s = -1 (mod n), or None if -1 is not a power of q."""
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    if n <= 2:
        return 1
    x = 1
    for s in range(1, multiplicative_order(q, n) + 1):
        x = x * q % n
        if x == n - 1:
            return s
    return None


def cyclic_group(n: int) -> GroupSpec:
    return GroupSpec((n,))


def power_map(n: int, q: int) -> FrobeniusAction:
    """g -> g^q on mu_n."""
    return FrobeniusAction.multipliers([q % n if n > 1 else 0])


def nontrivial_characters(G: GroupSpec) -> list[GroupCharacter]:
    triv = G.trivial()
    return [c for c in G.characters() if c != triv]
