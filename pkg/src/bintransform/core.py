"""Exact binomial transforms and the ``n∇`` operator calculus.

Every scalar is a :class:`fractions.Fraction` (Python ``int`` values are
accepted anywhere and promoted).  Sequences are finite prefixes; all
operations here are triangular, so a prefix of length ``N`` maps to a prefix
of length ``N`` with nothing lost.

Sign convention: the signed transform uses the factor ``(-1)**(k-1)``, i.e.
``+1`` for odd ``k`` and ``-1`` for even ``k``.  With that factor the
transform is its own inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

__all__ = [
    "DomainError",
    "PreconditionError",
    "Sequence",
    "OperatorPolynomial",
    "binomial",
    "sign",
    "binomial_transform",
    "unsigned_binomial_transform",
    "inverse_unsigned_binomial_transform",
    "backward_difference",
    "n_nabla",
    "n_nabla_pow",
    "apply_operator_polynomial",
    "multiply_by_index_pow",
    "shifted_transform_rhs",
    "divided_transform",
    "average_transform",
    "parse_rational",
    "format_rational",
]


class DomainError(ValueError):
    """An index or parameter falls outside where a value is defined."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class PreconditionError(ValueError):
    """Input data violates an operation's precondition (e.g. ``b_0 != 0``)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Sequence:
    """Finite prefix ``s_0 .. s_{N-1}`` with entries defined from ``valid_from``.

    Entries below ``valid_from`` are stored as zero placeholders and cannot be
    read through indexing.
    """

    values: tuple[Fraction, ...]
    valid_from: int = 0

    def __post_init__(self):
        vals = tuple(_frac(v) for v in self.values)
        if not vals:
            raise DomainError("a sequence needs at least one term")
        if self.valid_from < 0:
            raise DomainError(f"valid_from must be non-negative, got {self.valid_from}")
        if self.valid_from >= len(vals):
            raise DomainError(
                f"valid_from={self.valid_from} leaves no defined terms in a "
                f"sequence of length {len(vals)}",
                index=self.valid_from,
            )
        vals = (Fraction(0),) * self.valid_from + vals[self.valid_from:]
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable, valid_from: int = 0) -> "Sequence":
        return cls(tuple(values), valid_from)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if not isinstance(n, int):
            raise TypeError("sequence indices must be integers")
        if n < 0 or n >= len(self.values):
            raise IndexError(f"index {n} outside prefix of length {len(self.values)}")
        if n < self.valid_from:
            raise DomainError(
                f"term {n} is undefined (sequence valid from {self.valid_from})", index=n
            )
        return self.values[n]

    def defined(self) -> list[Fraction]:
        """Terms from ``valid_from`` onwards."""
        return list(self.values[self.valid_from:])

    def prefix(self, length: int) -> "Sequence":
        return Sequence(self.values[:length], self.valid_from)

    def __iter__(self):
        raise TypeError(
            "iterate over .defined() or .values explicitly; placeholders are not data"
        )


@dataclass(frozen=True)
class OperatorPolynomial:
    """``g(t) = sum_j coefficients[j] * t**j``; trailing zeros allowed."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(_frac(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("an operator polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree_bound(self) -> int:
        """Highest ``j`` with a non-zero coefficient (0 for the zero polynomial)."""
        for j in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[j]:
                return j
        return 0

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def binomial(n: int, k: int) -> int:
    """``C(n, k)`` for non-negative integers, zero when ``k > n``."""
    if n < 0 or k < 0:
        raise DomainError(f"binomial({n}, {k}) needs non-negative arguments")
    return math.comb(n, k)


def sign(k: int) -> int:
    """The factor ``(-1)**(k-1)``."""
    return 1 if k & 1 else -1


def _require_full(s: Sequence, name: str) -> None:
    if s.valid_from != 0:
        raise DomainError(f"{name} needs a sequence defined from index 0")


def binomial_transform(a: Sequence) -> Sequence:
    """``b_n = sum_k C(n,k) (-1)**(k-1) a_k``.  Self-inverse."""
    _require_full(a, "binomial_transform")
    vals = a.values
    out = []
    for n in range(len(vals)):
        acc = Fraction(0)
        for k in range(n + 1):
            c = math.comb(n, k)
            acc += c * vals[k] if k & 1 else -c * vals[k]
        out.append(acc)
    return Sequence(tuple(out))


def unsigned_binomial_transform(a: Sequence) -> Sequence:
    _require_full(a, "unsigned_binomial_transform")
    vals = a.values
    return Sequence(
        tuple(sum((math.comb(n, k) * vals[k] for k in range(n + 1)), Fraction(0))
              for n in range(len(vals)))
    )


def inverse_unsigned_binomial_transform(b: Sequence) -> Sequence:
    """``a_n = sum_k C(n,k) (-1)**(n-k) b_k``."""
    _require_full(b, "inverse_unsigned_binomial_transform")
    vals = b.values
    out = []
    for n in range(len(vals)):
        acc = Fraction(0)
        for k in range(n + 1):
            term = math.comb(n, k) * vals[k]
            acc += term if (n - k) % 2 == 0 else -term
        out.append(acc)
    return Sequence(tuple(out))


def _shifted_start(s: Sequence, shift: int) -> int:
    start = s.valid_from + shift
    if start >= len(s):
        raise DomainError(
            f"result would be valid from {start} but the prefix has only "
            f"{len(s)} terms",
            index=start,
        )
    return start


def backward_difference(s: Sequence) -> Sequence:
    start = _shifted_start(s, 1)
    v = s.values
    out = [Fraction(0)] * start + [v[n] - v[n - 1] for n in range(start, len(v))]
    return Sequence(tuple(out), start)


def n_nabla(s: Sequence) -> Sequence:
    """``n (s_n - s_{n-1})``."""
    start = _shifted_start(s, 1)
    v = s.values
    out = [Fraction(0)] * start + [n * (v[n] - v[n - 1]) for n in range(start, len(v))]
    return Sequence(tuple(out), start)


def n_nabla_pow(s: Sequence, p: int) -> Sequence:
    """``p``-fold composition of :func:`n_nabla`; ``p = 0`` is the identity."""
    if p < 0:
        raise ValueError(f"power must be non-negative, got {p}")
    _shifted_start(s, p)
    for _ in range(p):
        s = n_nabla(s)
    return s


def apply_operator_polynomial(g: OperatorPolynomial, s: Sequence) -> Sequence:
    """``g(n∇) s = sum_j g_j (n∇)^j s`` with ``(n∇)^0`` the identity."""
    deg = g.degree_bound
    start = _shifted_start(s, deg)
    out = [Fraction(0)] * len(s)
    term = s
    for j in range(deg + 1):
        if j:
            term = n_nabla(term)
        c = g.coefficients[j]
        if c:
            tv = term.values
            for n in range(start, len(s)):
                out[n] += c * tv[n]
    return Sequence(tuple(out), start)


def multiply_by_index_pow(a: Sequence, p: int) -> Sequence:
    """``k**p a_k`` (with ``0**0 == 1``)."""
    if p < 0:
        raise ValueError(f"power must be non-negative, got {p}")
    v = a.values
    return Sequence(tuple(k**p * v[k] for k in range(len(v))), a.valid_from)


def shifted_transform_rhs(b: Sequence, lam) -> Sequence:
    """``(n + lam) b_n - n b_{n-1}``, i.e. ``(n∇ + lam) b``."""
    lam = _frac(lam)
    start = _shifted_start(b, 1)
    v = b.values
    out = [Fraction(0)] * start + [
        (n + lam) * v[n] - n * v[n - 1] for n in range(start, len(v))
    ]
    return Sequence(tuple(out), start)


def divided_transform(b: Sequence, lam) -> Sequence:
    """Transform of ``a_k / (k + lam)`` given the transform ``b`` of ``a``.

    Requires ``a_0 = 0`` (equivalently ``b_0 = 0``).  The weighted partial sum

        c_n = n! sum_{m=1}^n b_m / (m! (lam+m)(lam+m+1)...(lam+n))

    is evaluated through ``(n + lam) c_n = n c_{n-1} + b_n``, ``c_0 = 0``.
    Raises :class:`DomainError` at the first ``n`` with ``lam + n == 0``;
    shorten ``b`` to ``b.prefix(n)`` to get the usable part.
    """
    lam = _frac(lam)
    if b.valid_from > 1:
        raise DomainError(
            f"divided_transform reads b_1 but b is valid only from {b.valid_from}",
            index=1,
        )
    if b.valid_from == 0 and b.values[0] != 0:
        raise PreconditionError(f"divided_transform needs b_0 = 0, got {b.values[0]}")
    v = b.values
    if len(v) == 1:
        raise DomainError("divided_transform needs at least the terms b_0, b_1", index=1)
    out = [Fraction(0)]
    c = Fraction(0)
    for n in range(1, len(v)):
        if lam + n == 0:
            raise DomainError(f"lambda = {lam} makes the weights undefined at n = {n}", index=n)
        c = (n * c + v[n]) / (lam + n)
        out.append(c)
    return Sequence(tuple(out), 1)


def average_transform(b: Sequence) -> Sequence:
    """Running mean ``(b_0 + ... + b_n) / (n + 1)``: transform of ``a_k/(k+1)``."""
    _require_full(b, "average_transform")
    out = []
    acc = Fraction(0)
    for n, x in enumerate(b.values):
        acc += x
        out.append(acc / (n + 1))
    return Sequence(tuple(out))


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]digits[/digits]`` strictly; no decimals or whitespace inside."""
    t = text.strip()
    num, slash, den = t.partition("/")
    body = num[1:] if num[:1] in "+-" else num
    if not body.isdigit() or not body.isascii():
        raise ValueError(f"not a rational literal: {text!r}")
    if slash:
        if not den.isdigit() or not den.isascii() or int(den) == 0:
            raise ValueError(f"not a rational literal: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(x) -> str:
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
