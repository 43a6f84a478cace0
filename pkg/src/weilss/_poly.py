"""Dense polynomials with exact coefficients, ascending order (list index = degree)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def mul(a: Sequence[Number], b: Sequence[Number]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return trim(out)


def add(a: Sequence[Number], b: Sequence[Number]) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def divmod_monic(a: Sequence[Number], b: Sequence[Number]) -> tuple[list, list]:
    """Quotient and remainder of ``a`` by the monic polynomial ``b``."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], trim(rem)
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    return trim(quo), trim(rem[:db])


def evaluate(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power_sums(coeffs: Sequence[Number], count: int) -> list[Fraction]:
    """Power sums P_1..P_count of the reciprocal roots of ``1 + c_1 T + c_2 T^2 + ...``.

    Newton's identities read ``P_k = -k c_k - sum_{j<k} c_j P_{k-j}``.
    """
    if coeffs[0] != 1:
        raise ValueError("constant term must be 1")
    c = list(coeffs)
    out: list = []
    for k in range(1, count + 1):
        ck = c[k] if k < len(c) else 0
        s = -k * ck
        for j in range(1, k):
            if j < len(c) and c[j]:
                s -= c[j] * out[k - j - 1]
        out.append(s)
    return out


def from_power_sums(sums: Sequence[Number], degree: int) -> list[Fraction]:
    """Coefficients ``1, c_1, .., c_degree`` of ``prod (1 - a_i T)`` from power sums."""
    c: list = [Fraction(1)]
    for k in range(1, degree + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            s += Fraction(sums[j - 1]) * c[k - j]
        c.append(-s / k)
    return c
