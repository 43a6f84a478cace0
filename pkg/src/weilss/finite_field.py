"""Arithmetic in F_p and F_{p^k}.

Elements are plain values (:class:`ExtFieldElem`, a coefficient tuple in the
basis 1, t, ..., t^{k-1}); every operation takes its :class:`FieldCtx`
explicitly.  Each element also has an integer *code* ``sum c_i p^i`` which is
what the vectorised tables index by.

The tables (``power_codes``, ``log_table``, ``trace_powers``) cover the whole
multiplicative group and are built by a block bilinear product: writing
``j = B*a + b``, the coefficients of ``g^j = g^{Ba} g^b`` are bilinear in the
coefficient vectors of ``g^{Ba}`` and ``g^b``, so one matrix product per output
coordinate produces all of them at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterable, Sequence, Union

import numpy as np

from ._arith import is_prime, prime_factors
from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime, ZeroArgument

DEFAULT_FIELD_CAP = 2**24

_CHUNK = 1 << 21


@dataclass(frozen=True)
class ExtFieldElem:
    """Coefficients (low degree first, trailing zeros stripped)."""

    coeffs: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return not self.coeffs


ElemLike = Union[ExtFieldElem, int, Sequence[int]]


# -- polynomials over F_p as low-first lists ----------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            off = i - df
            for j in range(df):
                a[off + j] = (a[off + j] - c * f[j]) % p
        a[i] = 0
    return _trim([x % p for x in a[:df]])


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [c * inv % p for c in b]
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test for a monic ``f``: gcd(T^{p^i} - T, f) = 1 for i <= deg/2."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(k // 2):
        h = _ppowmod(h, p, f, p)
        if len(_pgcd(list(f), _psub(h, [0, 1], p), p)) > 1:
            return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``k`` scanning lower coefficients by code."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_{p^k} with a fixed modulus and generator.

    Immutable after construction; table properties are computed on first use
    and never change afterwards, so instances can be shared freely.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int], generator: ExtFieldElem):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.generator = generator
        self.size = p**k
        self.order = self.size - 1

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- conversions ----------------------------------------------------------

    def element(self, x: ElemLike) -> ExtFieldElem:
        if isinstance(x, ExtFieldElem):
            return x
        if isinstance(x, (int, np.integer)):
            # out-of-range integers are read as constants mod p
            x = int(x)
            if not 0 <= x < self.size:
                x %= self.p
            return ExtFieldElem(tuple(_trim([(x // self.p**i) % self.p for i in range(self.k)])))
        coeffs = [int(c) % self.p for c in x]
        return ExtFieldElem(tuple(_pmod(coeffs, self.modulus, self.p)))

    def code(self, x: ExtFieldElem) -> int:
        return sum(c * self.p**i for i, c in enumerate(x.coeffs))

    def elements(self) -> Iterable[ExtFieldElem]:
        return (self.element(c) for c in range(self.size))

    @property
    def zero(self) -> ExtFieldElem:
        return ExtFieldElem(())

    @property
    def one(self) -> ExtFieldElem:
        return ExtFieldElem((1,))

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem:
        n = max(len(a.coeffs), len(b.coeffs))
        ac = a.coeffs + (0,) * (n - len(a.coeffs))
        bc = b.coeffs + (0,) * (n - len(b.coeffs))
        return ExtFieldElem(tuple(_trim([(x + y) % self.p for x, y in zip(ac, bc)])))

    def neg(self, a: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(tuple((-c) % self.p for c in a.coeffs))

    def sub(self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem:
        return self.add(a, self.neg(b))

    def mul(self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(tuple(_pmod(_pmul(a.coeffs, b.coeffs, self.p), self.modulus, self.p)))

    def pow(self, a: ExtFieldElem, e: int) -> ExtFieldElem:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a.is_zero():
            return self.one if e == 0 else self.zero
        return ExtFieldElem(tuple(_ppowmod(list(a.coeffs), e % self.order, self.modulus, self.p)))

    def inv(self, a: ExtFieldElem) -> ExtFieldElem:
        if a.is_zero():
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.order - 1)

    def frobenius(self, a: ExtFieldElem) -> ExtFieldElem:
        return self.pow(a, self.p)

    def trace(self, a: ExtFieldElem) -> int:
        """Absolute trace to F_p, returned as a residue."""
        total = self.zero
        y = a
        for _ in range(self.k):
            total = self.add(total, y)
            y = self.frobenius(y)
        assert len(total.coeffs) <= 1, "trace left the prime field"
        return total.coeffs[0] if total.coeffs else 0

    def element_order(self, a: ExtFieldElem) -> int:
        if a.is_zero():
            raise ZeroArgument("zero has no multiplicative order")
        n = self.order
        for q in prime_factors(self.order):
            while n % q == 0 and self.pow(a, n // q) == self.one:
                n //= q
        return n

    def dlog(self, a: ElemLike) -> int:
        a = self.element(a)
        if a.is_zero():
            raise ZeroArgument("discrete log of zero")
        return int(self.log_table[self.code(a)])

    # -- vectorised tables ----------------------------------------------------

    @cached_property
    def _reduction(self) -> np.ndarray:
        """Row s holds the coefficients of t^s mod the modulus, s < 2k - 1."""
        rows = np.zeros((2 * self.k - 1, self.k), dtype=np.int64)
        t = self.element([0, 1])
        x = self.one
        for s in range(2 * self.k - 1):
            rows[s, : len(x.coeffs)] = x.coeffs
            x = self.mul(x, t)
        return rows

    @cached_property
    def _blocks(self) -> tuple[np.ndarray, np.ndarray, int]:
        """Coefficient rows of g^{B a} and g^b with ``B ~ sqrt(order)``."""
        B = isqrt(self.order - 1) + 1 if self.order > 1 else 1
        nb = -(-self.order // B)
        g = self.generator

        def rows(step: ExtFieldElem, count: int) -> np.ndarray:
            out = np.zeros((count, self.k), dtype=np.float64)
            x = self.one
            for i in range(count):
                out[i, : len(x.coeffs)] = x.coeffs
                x = self.mul(x, step)
            return out

        return rows(self.pow(g, B), nb), rows(g, B), B

    def _bilinear(self, hankel: np.ndarray) -> np.ndarray:
        """All values of the bilinear form ``(x, y) -> x H y^T mod p`` over g^j."""
        A, G, B = self._blocks
        left = A @ hankel
        out = np.empty(A.shape[0] * B, dtype=np.int64)
        step = max(1, _CHUNK // B)
        for lo in range(0, A.shape[0], step):
            block = left[lo : lo + step] @ G.T
            out[lo * B : (lo + block.shape[0]) * B] = np.rint(block).astype(np.int64).ravel() % self.p
        return out[: self.order]

    def _hankel(self, values: np.ndarray) -> np.ndarray:
        idx = np.add.outer(np.arange(self.k), np.arange(self.k))
        return values[idx].astype(np.float64)

    @cached_property
    def power_codes(self) -> np.ndarray:
        """``power_codes[j]`` is the code of g^j for 0 <= j < p^k - 1."""
        codes = np.zeros(self.order, dtype=np.int64)
        for m in range(self.k):
            codes += self._bilinear(self._hankel(self._reduction[:, m])) * self.p**m
        return codes.astype(np.int32 if self.size < 2**31 else np.int64)

    @cached_property
    def log_table(self) -> np.ndarray:
        """``log_table[code]`` is the discrete log, -1 at zero."""
        table = np.full(self.size, -1, dtype=np.int32)
        table[self.power_codes] = np.arange(self.order, dtype=np.int32)
        return table

    @cached_property
    def trace_powers(self) -> np.ndarray:
        """``trace_powers[j] = Tr(g^j)`` as residues in 0..p-1."""
        taus = np.array([self.trace(ExtFieldElem(tuple(int(c) for c in _trim(list(row)))))
                         for row in self._reduction], dtype=np.int64)
        return self._bilinear(self._hankel(taus)).astype(np.int16 if self.p < 2**15 else np.int32)

    def codes_digits(self, codes: np.ndarray) -> list[np.ndarray]:
        codes = np.asarray(codes, dtype=np.int64)
        return [(codes // self.p**i) % self.p for i in range(self.k)]

    def codes_affine(self, codes: np.ndarray, sign: int, const: ElemLike) -> np.ndarray:
        """Codes of ``sign * x + const`` for every code x (sign is +1 or -1)."""
        const = self.element(const)
        if self.p == 2:
            return np.asarray(codes, dtype=np.int64) ^ self.code(const)
        cdig = list(const.coeffs) + [0] * (self.k - len(const.coeffs))
        out = np.zeros(np.shape(codes), dtype=np.int64)
        for i, d in enumerate(self.codes_digits(codes)):
            out += ((sign * d + cdig[i]) % self.p) * self.p**i
        return out

    def check_same(self, other: "FieldCtx") -> None:
        if other is not self and (other.p, other.k) != (self.p, self.k):
            raise FieldMismatch(f"{self!r} vs {other!r}")


@lru_cache(maxsize=None)
def _build(p: int, k: int) -> FieldCtx:
    modulus = first_irreducible(p, k)
    probe = FieldCtx(p, k, modulus, ExtFieldElem((1,)))
    for code in range(1, probe.size):
        cand = probe.element(code)
        if probe.element_order(cand) == probe.order:
            return FieldCtx(p, k, modulus, cand)
    raise AssertionError("no generator found")  # pragma: no cover


def make_field(p: int, k: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FieldCtx:
    """Deterministic context for F_{p^k}; the same object is returned per (p, k)."""
    if not is_prime(p):
        raise NotPrime(p)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > cap:
        raise FieldTooLarge(f"p^k = {p}^{k} exceeds the cap {cap}")
    return _build(p, k)


def subfield_embedding(small: FieldCtx, big: FieldCtx) -> ExtFieldElem:
    """Image in ``big`` of the generator t of ``small`` (a root of its modulus).

    Scans the subfield of ``big``, so it is meant for desk-size fields.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")
    if small.k == 1:
        return big.element([-small.modulus[0] % small.p])
    step = big.order // small.order
    h = big.pow(big.generator, step)
    y = big.one
    for _ in range(small.order):
        acc = big.zero
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, y), big.element(c))
        if acc.is_zero():
            return y
        y = big.mul(y, h)
    raise AssertionError("modulus has no root in the extension")  # pragma: no cover


def embed_element(x: ExtFieldElem, small: FieldCtx, big: FieldCtx, root: ExtFieldElem) -> ExtFieldElem:
    acc = big.zero
    for c in reversed(x.coeffs):
        acc = big.add(big.mul(acc, root), big.element(c))
    return acc
