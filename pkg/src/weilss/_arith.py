"""Small integer helpers (desk-scale trial division is enough everywhere)."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` as ``((prime, exponent), ...)``."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> list[int]:
    return [q for q, _ in factorize(n)]


def euler_phi(n: int) -> int:
    result = n
    for q in prime_factors(n):
        result -= result // q
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in (Z/n)^*; ``n == 1`` gives 1."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    a %= n
    x, s = a, 1
    while x != 1:
        x = x * a % n
        s += 1
    return s


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q = p**r`` into ``(p, r)``."""
    fac = factorize(q)
    if q < 2 or len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    return fac[0]
