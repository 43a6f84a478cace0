"""Gauss and Jacobi sums over F_{p^k}, exactly, in Z[zeta_m].

Each sum is evaluated as a histogram: every term is a root of unity zeta_m^e,
so counting the exponents e over the field and reducing the count vector
modulo Phi_m gives the exact value.  Characters are evaluated through the
field's discrete-log tables (x = g^i), which is what bounds the field size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from ._arith import lcm
from .cyclotomic import CyclotomicInt, zeta_power
from .errors import FieldMismatch
from .finite_field import ElemLike, ExtFieldElem, FieldCtx, embed_element, make_field, subfield_embedding


@dataclass(frozen=True)
class MultChar:
    """chi(g^i) = zeta_order^(index * i) for the context generator g."""

    ctx: FieldCtx
    order: int
    index: int = 1

    def __post_init__(self):
        if self.order < 1 or self.ctx.order % self.order:
            raise ValueError(f"character order {self.order} does not divide {self.ctx.order}")
        object.__setattr__(self, "index", self.index % self.order)

    @property
    def exact_order(self) -> int:
        return self.order // gcd(self.index, self.order)

    def is_trivial(self) -> bool:
        return self.index == 0

    def __mul__(self, other: "MultChar") -> "MultChar":
        self.ctx.check_same(other.ctx)
        m = lcm(self.order, other.order)
        return MultChar(self.ctx, m, self.index * (m // self.order) + other.index * (m // other.order))

    def inverse(self) -> "MultChar":
        return MultChar(self.ctx, self.order, -self.index)

    def __call__(self, x: ElemLike) -> CyclotomicInt:
        x = self.ctx.element(x)
        if x.is_zero():
            return CyclotomicInt.from_int(self.order, 1 if self.is_trivial() else 0)
        return zeta_power(self.order, self.index * self.ctx.dlog(x))

    def exponents(self, logs: np.ndarray) -> np.ndarray:
        """Exponent of zeta_order at the elements with the given discrete logs."""
        return (self.index * np.asarray(logs, dtype=np.int64)) % self.order


@dataclass(frozen=True)
class AddChar:
    """psi_a(x) = zeta_p^Tr(a x)."""

    ctx: FieldCtx
    shift: ExtFieldElem

    def __post_init__(self):
        object.__setattr__(self, "shift", self.ctx.element(self.shift))

    def is_trivial(self) -> bool:
        return self.shift.is_zero()

    def __call__(self, x: ElemLike) -> CyclotomicInt:
        x = self.ctx.element(x)
        return zeta_power(self.ctx.p, self.ctx.trace(self.ctx.mul(self.shift, x)))

    def traces_on_powers(self) -> np.ndarray:
        """Tr(a g^i) for 0 <= i < p^k - 1."""
        ctx = self.ctx
        if self.is_trivial():
            return np.zeros(ctx.order, dtype=np.int64)
        code = ctx.code(self.shift)
        shift = 0 if code == 1 else ctx.dlog(self.shift)
        return np.roll(ctx.trace_powers.astype(np.int64), -shift)


def standard_add_char(ctx: FieldCtx) -> AddChar:
    return AddChar(ctx, ctx.one)


def gauss_sum(chi: MultChar, psi: AddChar) -> CyclotomicInt:
    """g(chi, psi) = sum over x != 0 of chi(x) psi(x), at conductor lcm(order, p)."""
    chi.ctx.check_same(psi.ctx)
    ctx = chi.ctx
    m = lcm(chi.order, ctx.p)
    logs = np.arange(ctx.order, dtype=np.int64)
    exps = chi.exponents(logs) * (m // chi.order) + psi.traces_on_powers() * (m // ctx.p)
    counts = np.bincount(exps % m, minlength=m)
    return CyclotomicInt.from_exponent_counts(m, counts)


def jacobi_sum(chi1: MultChar, chi2: MultChar) -> CyclotomicInt:
    """J(chi1, chi2) = sum over x not in {0, 1} of chi1(x) chi2(1 - x).

    Degenerate inputs are not special-cased; the sum itself gives the classical
    values (q - 2 for two trivial characters, -1 for exactly one trivial,
    -chi1(-1) when chi1 chi2 is trivial).
    """
    chi1.ctx.check_same(chi2.ctx)
    ctx = chi1.ctx
    m = lcm(chi1.order, chi2.order)
    one_minus = ctx.codes_affine(ctx.power_codes, -1, 1)
    keep = one_minus != 0
    logs_x = np.arange(ctx.order, dtype=np.int64)[keep]
    logs_y = ctx.log_table[one_minus[keep]].astype(np.int64)
    exps = chi1.exponents(logs_x) * (m // chi1.order) + chi2.exponents(logs_y) * (m // chi2.order)
    counts = np.bincount(exps % m, minlength=m)
    return CyclotomicInt.from_exponent_counts(m, counts)


def lift_characters(chi: MultChar, psi: AddChar, r: int) -> tuple[MultChar, AddChar]:
    """chi o Norm and psi o Trace on the degree-r extension of their field."""
    ctx = chi.ctx
    ctx.check_same(psi.ctx)
    if r == 1:
        return chi, psi
    big = make_field(ctx.p, ctx.k * r)
    root = subfield_embedding(ctx, big)
    # iota(g) = G^(u M) with M = (Q^r - 1)/(Q - 1); Norm(G) = G^M = iota(g^(1/u))
    M = big.order // ctx.order
    log_img = big.dlog(embed_element(ctx.generator, ctx, big, root))
    if log_img % M:
        raise FieldMismatch("embedded generator does not lie in the subfield")
    u_inv = pow(log_img // M, -1, ctx.order) if ctx.order > 1 else 0
    lifted_chi = MultChar(big, chi.order, chi.index * u_inv)
    lifted_psi = AddChar(big, embed_element(psi.shift, ctx, big, root))
    return lifted_chi, lifted_psi


def gauss_sum_lifted(chi: MultChar, psi: AddChar, r: int) -> CyclotomicInt:
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    return gauss_sum(*lift_characters(chi, psi, r))
