"""Exact generators for the sequence families the identities are built from.

Generators take a length ``N`` and return the prefix ``s_0 .. s_{N-1}`` as a
:class:`~bintransform.core.Sequence`.  Single-term accessors exist where an
identity needs negative indices (Fibonacci, Lucas) or a two-index table
(Stirling numbers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Sequence, _frac

__all__ = [
    "StirlingTable",
    "stirling_table",
    "stirling2",
    "harmonic",
    "generalized_harmonic",
    "skew_harmonic",
    "fibonacci",
    "lucas",
    "fibonacci_at",
    "lucas_at",
    "power_sum",
    "multiple_harmonic_sum",
    "laguerre",
    "geometric",
    "index_powers",
    "binomial_column",
    "power_expansion",
]


def _check_length(N: int) -> None:
    if N < 1:
        raise ValueError(f"length must be at least 1, got {N}")


@dataclass(frozen=True)
class StirlingTable:
    """Rows ``S(p, 0..p)`` of Stirling numbers of the second kind, ``p <= p_max``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def p_max(self) -> int:
        return len(self.rows) - 1

    def __call__(self, p: int, n: int) -> int:
        if p < 0 or n < 0:
            raise ValueError(f"S({p}, {n}) needs non-negative arguments")
        if p > self.p_max:
            raise IndexError(f"table holds p <= {self.p_max}, asked for p = {p}")
        if n > p:
            return 0
        return self.rows[p][n]


@lru_cache(maxsize=None)
def stirling_table(p_max: int) -> StirlingTable:
    # S(p, n) = n S(p-1, n) + S(p-1, n-1)
    rows = [(1,)]
    for p in range(1, p_max + 1):
        prev = rows[-1]
        row = [0] * (p + 1)
        for n in range(1, p + 1):
            left = prev[n] if n < p else 0
            row[n] = n * left + prev[n - 1]
        rows.append(tuple(row))
    return StirlingTable(tuple(rows))


def stirling2(p: int, n: int) -> int:
    if p < 0 or n < 0:
        raise ValueError(f"S({p}, {n}) needs non-negative arguments")
    if n > p:
        return 0
    # Round the table size up so nearby queries share one cached table.
    return stirling_table(max(16, 1 << (p.bit_length())))(p, n)


def harmonic(N: int) -> Sequence:
    return generalized_harmonic(N, 1)


def generalized_harmonic(N: int, r: int) -> Sequence:
    """``H_n^(r) = sum_{k<=n} 1/k**r`` with ``H_0^(r) = 0``."""
    _check_length(N)
    if r < 1:
        raise ValueError(f"order must be positive, got {r}")
    out = [Fraction(0)]
    for k in range(1, N):
        out.append(out[-1] + Fraction(1, k**r))
    return Sequence(tuple(out))


def skew_harmonic(N: int) -> Sequence:
    """``1 - 1/2 + 1/3 - ... + (-1)**(n-1)/n``."""
    _check_length(N)
    out = [Fraction(0)]
    for k in range(1, N):
        out.append(out[-1] + Fraction(1 if k & 1 else -1, k))
    return Sequence(tuple(out))


def _linear_recurrence(first: int, second: int, N: int) -> Sequence:
    _check_length(N)
    out = [first, second][:N]
    while len(out) < N:
        out.append(out[-1] + out[-2])
    return Sequence(tuple(out))


def fibonacci(N: int) -> Sequence:
    return _linear_recurrence(0, 1, N)


def lucas(N: int) -> Sequence:
    return _linear_recurrence(2, 1, N)


def _recurrence_at(first: int, second: int, n: int) -> int:
    a, b = first, second  # (s_0, s_1)
    if n >= 0:
        for _ in range(n):
            a, b = b, a + b
        return a
    for _ in range(-n):
        a, b = b - a, a  # step back: s_{i-1} = s_{i+1} - s_i
    return a


def fibonacci_at(n: int) -> int:
    """``F_n`` for any integer ``n``, extended backwards by ``F_{n-2} = F_n - F_{n-1}``."""
    return _recurrence_at(0, 1, n)


def lucas_at(n: int) -> int:
    return _recurrence_at(2, 1, n)


def power_sum(N: int, q: int) -> Sequence:
    """``sigma_n(q) = 1**q + ... + n**q`` with ``sigma_0(q) = 0``."""
    _check_length(N)
    if q < 0:
        raise ValueError(f"exponent must be non-negative, got {q}")
    out = [0]
    for k in range(1, N):
        out.append(out[-1] + k**q)
    return Sequence(tuple(out))


def multiple_harmonic_sum(N: int, m: int) -> Sequence:
    """Sum of ``1/(k_1 ... k_m)`` over ``1 <= k_1 <= ... <= k_m <= n``.

    Built with ``d(m, n) = sum_{k=1}^n d(m-1, k)/k`` and ``d(0, n) = 1``.
    """
    _check_length(N)
    if m < 1:
        raise ValueError(f"depth must be positive, got {m}")
    prev = [Fraction(1)] * N
    for _ in range(m):
        cur = [Fraction(0)]
        for k in range(1, N):
            cur.append(cur[-1] + prev[k] / k)
        prev = cur
    return Sequence(tuple(prev))


def laguerre(N: int, x) -> Sequence:
    """``L_0(x) .. L_{N-1}(x)`` from ``(n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}``."""
    _check_length(N)
    x = _frac(x)
    out = [Fraction(1), 1 - x][:N]
    for n in range(1, N - 1):
        out.append(((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1))
    return Sequence(tuple(out))


def geometric(N: int, x) -> Sequence:
    _check_length(N)
    x = _frac(x)
    out = [Fraction(1)]
    for _ in range(1, N):
        out.append(out[-1] * x)
    return Sequence(tuple(out))


def index_powers(N: int, p: int) -> Sequence:
    """``k**p`` for ``k < N``; ``0**0 == 1``."""
    _check_length(N)
    if p < 0:
        raise ValueError(f"exponent must be non-negative, got {p}")
    return Sequence(tuple(k**p for k in range(N)))


def binomial_column(N: int, p: int) -> Sequence:
    """``C(p, k)`` for ``k < N``."""
    _check_length(N)
    if p < 0:
        raise ValueError(f"p must be non-negative, got {p}")
    return Sequence(tuple(math.comb(p, k) for k in range(N)))


def power_expansion(p: int, n: int, x) -> Fraction:
    """``(x d/dx)**p (1+x)**n = sum_j C(n,j) S(p,j) j! x**j (1+x)**(n-j)``.

    The sum runs over ``j <= min(p, n)``; other terms vanish.
    """
    x = _frac(x)
    return sum(
        (math.comb(n, j) * stirling2(p, j) * math.factorial(j) * x**j * (1 + x) ** (n - j)
         for j in range(min(p, n) + 1)),
        Fraction(0),
    )
