"""Exact arithmetic in Z[zeta_m] and cyclotomic polynomials.

A :class:`CyclotomicInt` stores its remainder modulo Phi_m, so two elements are
equal exactly when their coefficient tuples are equal.  Conductors never mix
implicitly: lift with :meth:`CyclotomicInt.embed` first.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from . import _poly
from ._arith import divisors, euler_phi, mobius, prime_factors
from .errors import ConductorMismatch, NotAMultiple, NotAUnit

MAX_CONDUCTOR = 100_000


@dataclass(frozen=True)
class CycloPoly:
    m: int
    coeffs: tuple[int, ...]  # ascending, monic

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


_memo: dict[int, tuple[int, ...]] = {}
_memo_lock = threading.Lock()


def _phi_squarefree(r: int) -> tuple[int, ...]:
    """Phi_r for squarefree r > 1 as prod_{d | r} (1 - T^d)^mu(r/d), truncated at degree phi(r).

    Multiplications run first; each later division leaves Phi_r times the
    remaining (1 - T^d) factors, so intermediate coefficients stay small.
    """
    deg = euler_phi(r)
    ser = np.zeros(deg + 1, dtype=object)
    ser[0] = 1
    up = [d for d in divisors(r) if mobius(r // d) == 1 and d <= deg]
    down = [d for d in divisors(r) if mobius(r // d) == -1 and d <= deg]
    for d in up:
        ser[d:] = ser[d:] - ser[:-d]
    for d in down:
        # times 1 / (1 - T^d): running sums along each residue class mod d
        for j in range(d):
            ser[j::d] = np.cumsum(ser[j::d])
    return tuple(int(c) for c in ser)


def cyclotomic_poly(m: int) -> CycloPoly:
    """Phi_m, via Phi_m(T) = Phi_r(T^(m/r)) with r the squarefree kernel of m."""
    if not 1 <= m <= MAX_CONDUCTOR:
        raise ValueError(f"conductor {m} outside [1, {MAX_CONDUCTOR}]")
    cached = _memo.get(m)
    if cached is None:
        r = _radical(m)
        base = (-1, 1) if r == 1 else _phi_squarefree(r)
        s = m // r
        spread = [0] * ((len(base) - 1) * s + 1)
        spread[::s] = base
        cached = tuple(spread)
        with _memo_lock:
            _memo.setdefault(m, cached)
    return CycloPoly(m, cached)


_TABLE_LIMIT = 1 << 20  # largest m * phi(m) served by a dense reduction table
_INT64_SAFE = 2**50


def _radical(m: int) -> int:
    out = 1
    for p in prime_factors(m):
        out *= p
    return out


def _reduce_spread(vec: np.ndarray, primes: Sequence[int], s: int) -> np.ndarray:
    """Remainder of vec (length r s, r = prod primes) modulo Phi_r(T^s).

    With p the last prime and r' = r / p, Phi_r(T^s) divides Phi_r'(T^(s p)),
    so reduce modulo that first and finish with phi(r') steps of long
    division by Phi_r(T^s).
    """
    if not primes:
        return vec
    p, rest = primes[-1], primes[:-1]
    r = p
    for q in rest:
        r *= q
    v = _reduce_spread(vec, rest, s * p)
    phi = np.array(cyclotomic_poly(r).coeffs, dtype=vec.dtype)
    nz = np.nonzero(phi)[0]
    d = len(phi) - 1
    C = v.reshape(-1, s)  # row i holds exponents i s .. i s + s - 1
    for i in range(C.shape[0] - 1, d - 1, -1):
        top = C[i].copy()
        if top.any():
            C[i - d + nz] -= np.outer(phi[nz], top)
    out = C[:d].reshape(-1)
    if out.dtype != object and np.abs(out).max(initial=0) >= _INT64_SAFE:
        raise OverflowError("int64 reduction left the safe range")
    return out


def _reduce(m: int, vec) -> list[int]:
    """Remainder modulo Phi_m of sum vec[e] T^e, for any length of ``vec``."""
    vec = np.asarray(vec)
    for dtype in (np.int64, object):
        if dtype is np.int64 and (vec.dtype == object or np.abs(vec).max(initial=0) >= 2**31):
            continue
        folded = np.zeros(m, dtype=dtype)
        for start in range(0, len(vec), m):
            chunk = vec[start : start + m].astype(dtype)
            folded[: len(chunk)] += chunk
        try:
            out = _reduce_spread(folded, prime_factors(m), m // _radical(m))
        except OverflowError:
            continue
        return out.tolist() if dtype is np.int64 else [int(v) for v in out]
    raise AssertionError("object reduction cannot overflow")


@lru_cache(maxsize=512)
def _zeta_table(m: int) -> np.ndarray:
    """Row e is the canonical form of zeta_m^e, 0 <= e < m."""
    phi = cyclotomic_poly(m).coeffs
    d = len(phi) - 1
    table = np.zeros((m, d), dtype=np.int64)
    row = [1] + [0] * (d - 1)
    for e in range(m):
        table[e] = row
        top = row[-1]
        row = [0] + row[:-1]
        if top:
            row = [r - top * phi[i] for i, r in enumerate(row)]
    return table


class CyclotomicInt:
    """An element of Z[zeta_m] in canonical form (``len(coeffs) == phi(m)``)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[int]):
        d = euler_phi(m)
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > d:
            coeffs = _reduce(m, np.array(coeffs, dtype=object))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", tuple(coeffs) + (0,) * (d - len(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicInt is immutable")

    @classmethod
    def _canonical(cls, m: int, coeffs: list[int]) -> "CyclotomicInt":
        """Wrap an already reduced list of Python ints of length phi(m)."""
        self = object.__new__(cls)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        return self

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_int(cls, m: int, c: int) -> "CyclotomicInt":
        return cls(m, [c])

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Sequence[int]) -> "CyclotomicInt":
        """``sum_e counts[e] * zeta_m^e`` for a length-m count vector."""
        counts = np.asarray(counts)
        if m * euler_phi(m) > _TABLE_LIMIT:
            return cls._canonical(m, _reduce(m, counts))
        if counts.dtype != object and np.abs(counts).max(initial=0) < 2**40:
            vec = counts.astype(np.int64) @ _zeta_table(m)
            return cls._canonical(m, vec.tolist())
        table = _zeta_table(m)
        acc = [0] * table.shape[1]
        for e, c in enumerate(counts):
            if c:
                for i, t in enumerate(table[e]):
                    acc[i] += int(c) * int(t)
        return cls(m, acc)

    # -- ring structure -------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            if other.m != self.m:
                raise ConductorMismatch(f"conductors {self.m} and {other.m}")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt.from_int(self.m, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt(self.m, [int(other) * a for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.m, _poly.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CyclotomicInt":
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = CyclotomicInt.from_int(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.coeffs == CyclotomicInt.from_int(self.m, int(other)).coeffs
        if isinstance(other, CyclotomicInt):
            return self.m == other.m and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt(m={self.m}, coeffs={list(self.coeffs)})"

    # -- maps -----------------------------------------------------------------

    def _substitute(self, m_out: int, scale: int) -> "CyclotomicInt":
        """Image under zeta_m^i -> zeta_{m_out}^{i*scale}."""
        counts = [0] * m_out
        for i, c in enumerate(self.coeffs):
            if c:
                counts[i * scale % m_out] += c
        return CyclotomicInt.from_exponent_counts(m_out, np.array(counts, dtype=object))

    def embed(self, m_out: int) -> "CyclotomicInt":
        if m_out % self.m:
            raise NotAMultiple(f"{m_out} is not a multiple of {self.m}")
        if m_out == self.m:
            return self
        return self._substitute(m_out, m_out // self.m)

    def galois_conjugate(self, u: int) -> "CyclotomicInt":
        if gcd(u, self.m) != 1:
            raise NotAUnit(f"{u} is not a unit modulo {self.m}")
        return self._substitute(self.m, u % self.m)

    def conjugate(self) -> "CyclotomicInt":
        """Complex conjugation, i.e. the Galois element -1."""
        return self.galois_conjugate(-1)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self, root: int = 1) -> complex:
        """Numeric value at the primitive root exp(2 pi i root / m)."""
        powers = np.exp(2j * np.pi * ((root * np.arange(len(self.coeffs))) % self.m) / self.m)
        return complex(np.array(self.coeffs, dtype=np.float64) @ powers)


@lru_cache(maxsize=4096)
def zeta_power(m: int, e: int) -> CyclotomicInt:
    e %= m
    if m * euler_phi(m) > _TABLE_LIMIT:
        unit = np.zeros(m, dtype=np.int64)
        unit[e] = 1
        return CyclotomicInt(m, _reduce(m, unit))
    return CyclotomicInt(m, [int(v) for v in _zeta_table(m)[e]])


def common_conductor(values: Sequence[CyclotomicInt]) -> int:
    m = 1
    for v in values:
        m = m * v.m // gcd(m, v.m)
    return m


