"""Registry of binomial-transform identities as executable exact checks.

Each :class:`IdentitySpec` pairs a left-hand side evaluated by direct
summation with a closed-form right-hand side.  The only rows whose left side
goes through the operator code are the ones *about* the operator
(``nnabla_xn_rule``, ``nnabla_inv_n``), since there the operator is the
object under test.

Three printed closed forms do not survive exact evaluation: ``h2_pair_k2``
and ``h2_pair_k3`` are registered in the form obtained by applying ``n∇`` to
the previous row, ``nnabla_xn_rule`` with ``x`` and ``1 - x`` swapped on the
right; in each case the printed expression is kept on the spec as
``printed_rhs`` so the discrepancy stays checkable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .core import Sequence, format_rational, n_nabla_pow, parse_rational, sign
from .sequences import (
    fibonacci_at,
    generalized_harmonic,
    geometric,
    laguerre,
    lucas_at,
    multiple_harmonic_sum,
    power_expansion,
    skew_harmonic,
    stirling2,
)

Params = Mapping[str, object]
Term = Callable[[int, Params], Fraction]

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
CORRECTED_NOTE = "paper-typo: corrected form"

# Machine-readable null token.
NULL = "_"

LAMBDA_GRID = tuple(Fraction(v) for v in ("1", "2", "3", "4", "1/2", "-1/2"))
X_GRID = tuple(Fraction(v) for v in ("1/2", "2", "-3", "-1"))


class RegistryError(Exception):
    pass


class DuplicateIdentityError(RegistryError):
    pass


class UnknownIdentityError(RegistryError, LookupError):
    def __init__(self, identity_id: str, available: Iterable[str] = ()):
        self.identity_id = identity_id
        self.available = sorted(available)
        super().__init__(f"unknown identity {identity_id!r}")


class ParameterError(RegistryError, ValueError):
    """Missing or unknown parameter name (a usage error, not a constraint)."""


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # "integer" | "rational"
    grid: tuple
    minimum: int | None = None


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    description: str
    lhs: Term
    rhs: Term
    params: tuple[Param, ...] = ()
    valid_from: Callable[[Params], int] | int = 1
    constraint: Callable[[Params], str | None] | None = None
    anchor: str = ""
    note: str = ""
    printed_rhs: Term | None = None

    def first_n(self, params: Params) -> int:
        vf = self.valid_from
        return vf(params) if callable(vf) else vf

    def grid(self) -> list[dict]:
        names = [p.name for p in self.params]
        return [dict(zip(names, combo))
                for combo in itertools.product(*(p.grid for p in self.params))]


@dataclass(frozen=True)
class Counterexample:
    n: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class VerificationReport:
    identity_id: str
    params: dict
    n_min: int
    n_max: int
    status: str
    counterexample: Counterexample | None = None
    reason: str = ""
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_record(self) -> str:
        """One tab-separated ``key=value`` line; rationals as ``p/q``."""
        ce = self.counterexample
        fields = [
            ("id", self.identity_id),
            ("params", format_params(self.params) or NULL),
            ("n_min", str(self.n_min)),
            ("n_max", str(self.n_max)),
            ("status", self.status),
            ("counterexample.n", str(ce.n) if ce else NULL),
            ("counterexample.lhs", format_rational(ce.lhs) if ce else NULL),
            ("counterexample.rhs", format_rational(ce.rhs) if ce else NULL),
            ("reason", self.reason or NULL),
            ("note", self.note or NULL),
        ]
        return "\t".join(f"{k}={v}" for k, v in fields)

    @classmethod
    def from_record(cls, line: str) -> "VerificationReport":
        raw = dict(part.split("=", 1) for part in line.rstrip("\n").split("\t"))
        get = lambda key: None if raw[key] == NULL else raw[key]  # noqa: E731
        ce = None
        if get("counterexample.n") is not None:
            ce = Counterexample(
                int(raw["counterexample.n"]),
                parse_rational(raw["counterexample.lhs"]),
                parse_rational(raw["counterexample.rhs"]),
            )
        return cls(
            identity_id=raw["id"],
            params=parse_params(get("params") or ""),
            n_min=int(raw["n_min"]),
            n_max=int(raw["n_max"]),
            status=raw["status"],
            counterexample=ce,
            reason=get("reason") or "",
            note=get("note") or "",
        )


def format_params(params: Params) -> str:
    return ",".join(f"{k}={format_rational(v)}" for k, v in sorted(params.items()))


def parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, text.split(",")):
        name, _, value = item.partition("=")
        out[name] = parse_rational(value)
    return out


class Registry:
    def __init__(self, specs: Iterable[IdentitySpec] = ()):
        self._specs: dict[str, IdentitySpec] = {}
        for spec in specs:
            self.register(spec)

    def register(self, spec: IdentitySpec) -> None:
        if spec.id in self._specs:
            raise DuplicateIdentityError(f"identity {spec.id!r} already registered")
        self._specs[spec.id] = spec

    def lookup(self, identity_id: str) -> IdentitySpec:
        try:
            return self._specs[identity_id]
        except KeyError:
            raise UnknownIdentityError(identity_id, self._specs) from None

    def ids(self) -> list[str]:
        return sorted(self._specs)

    def __len__(self) -> int:
        return len(self._specs)

    def __contains__(self, identity_id: str) -> bool:
        return identity_id in self._specs

    def __iter__(self):
        return (self._specs[i] for i in self.ids())


# --- summation helpers -----------------------------------------------------

def signed_sum(n: int, term: Callable[[int], object], start: int = 0) -> Fraction:
    """``sum_{k=start}^n C(n,k) (-1)**(k-1) term(k)``."""
    return sum((math.comb(n, k) * sign(k) * term(k) for k in range(start, n + 1)),
               Fraction(0))


def alternating_sum(n: int, term: Callable[[int], object], start: int = 0) -> Fraction:
    """``sum_{k=start}^n C(n,k) (-1)**k term(k)``."""
    return -signed_sum(n, term, start)


def plain_sum(n: int, term: Callable[[int], object], start: int = 0) -> Fraction:
    """``sum_{k=start}^n C(n,k) term(k)``."""
    return sum((math.comb(n, k) * term(k) for k in range(start, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def _harm(n: int, r: int = 1) -> Fraction:
    return generalized_harmonic(n + 1, r).values[n]


@lru_cache(maxsize=None)
def _skew(n: int) -> Fraction:
    return skew_harmonic(n + 1).values[n]


@lru_cache(maxsize=None)
def _lag(n: int, x: Fraction) -> Fraction:
    return laguerre(n + 1, x).values[n]


@lru_cache(maxsize=None)
def _mhs(n: int, m: int) -> Fraction:
    return multiple_harmonic_sum(n + 1, m).values[n]


def _pair(k: int) -> Fraction:
    return _harm(k) ** 2 + _harm(k, 2)


def _rising(lam: Fraction, lo: int, hi: int) -> Fraction:
    """``(lam+lo)(lam+lo+1)...(lam+hi)``; empty product is 1."""
    out = Fraction(1)
    for j in range(lo, hi + 1):
        out *= lam + j
    return out


def _not_negative_integer(name: str, allow_zero: bool = True):
    def check(params: Params) -> str | None:
        v = Fraction(params[name])
        if v.denominator == 1 and (v < 0 or (v == 0 and not allow_zero)):
            return f"{name} = {format_rational(v)} is a forbidden value"
        return None
    return check


def _one_of(name: str, allowed: Iterable) -> Callable[[Params], str | None]:
    allowed = tuple(Fraction(a) for a in allowed)

    def check(params: Params) -> str | None:
        if Fraction(params[name]) not in allowed:
            return f"{name} must be one of {', '.join(map(format_rational, allowed))}"
        return None
    return check


def _p(name: str, grid: Iterable, minimum: int | None = None) -> Param:
    return Param(name, "integer", tuple(grid), minimum)


def _q(name: str, grid: Iterable) -> Param:
    return Param(name, "rational", tuple(Fraction(g) for g in grid))


# --- builtin rows ----------------------------------------------------------

def _xn_rule(n: int, p: int, y: Fraction) -> Fraction:
    """``sum_j C(n,j) S(p,j) j! (-1)^j y^j (1-y)^(n-j)``."""
    return sum((math.comb(n, j) * stirling2(p, j) * math.factorial(j)
                * (-1) ** j * y ** j * (1 - y) ** (n - j)
                for j in range(min(p, n) + 1)), Fraction(0))


def _stirling_rows() -> list[IdentitySpec]:
    P = (_p("p", range(1, 11), minimum=1),)
    PX = (_p("p", range(1, 5), minimum=0), _q("x", X_GRID))
    return [
        IdentitySpec(
            "stirling_rep",
            "sum C(n,k)(-1)^(k-1) k^p = (-1)^(n-1) n! S(p,n)",
            lambda n, a: signed_sum(n, lambda k: k ** a["p"]),
            lambda n, a: sign(n) * math.factorial(n) * stirling2(a["p"], n),
            P, anchor="Stirling numbers as transforms of powers",
        ),
        IdentitySpec(
            "unsigned_power_expansion",
            "sum C(n,k) k^p x^k = sum_j C(n,j) S(p,j) j! x^j (1+x)^(n-j)",
            lambda n, a: plain_sum(n, lambda k: k ** a["p"] * a["x"] ** k),
            lambda n, a: power_expansion(a["p"], n, a["x"]),
            PX, anchor="(x d/dx)^p (1+x)^n expansion",
        ),
        IdentitySpec(
            "nnabla_xn_rule",
            "(n nabla)^p x^n = sum_j C(n,j) S(p,j) j! (-1)^j (1-x)^j x^(n-j), n >= p",
            lambda n, a: n_nabla_pow(geometric(n + 1, a["x"]), a["p"])[n],
            lambda n, a: _xn_rule(n, a["p"], 1 - a["x"]),
            PX, valid_from=lambda a: max(a["p"], 1),
            anchor="operator n nabla acting on geometric sequences",
            note=f"{CORRECTED_NOTE}; printed with x^j (1-x)^(n-j), which holds for "
                 "(n nabla)^p (1-x)^n",
            printed_rhs=lambda n, a: _xn_rule(n, a["p"], a["x"]),
        ),
        IdentitySpec(
            "stirling_power",
            "sum C(n,k) k! S(q,k) = n^q",
            lambda n, a: plain_sum(n, lambda k: math.factorial(k) * stirling2(a["q"], k)),
            lambda n, a: Fraction(n) ** a["q"],
            (_p("q", range(1, 8), minimum=1),),
            anchor="inverted Stirling representation",
        ),
        IdentitySpec(
            "sigma_truncate",
            "sum C(n,k)(-1)^(k-1) sigma_k(q) = (-1)^(n-1) (n-1)! S(q+1,n); zero for n > q+1",
            lambda n, a: signed_sum(n, lambda k: sum(j ** a["q"] for j in range(1, k + 1))),
            lambda n, a: sign(n) * math.factorial(n - 1) * stirling2(a["q"] + 1, n),
            (_p("q", range(0, 7), minimum=0),),
            anchor="transform of power sums truncates",
        ),
        IdentitySpec(
            "stirling_avg",
            "sum C(n,k) k! S(q,k)/(k+1) = sigma_n(q)/(n+1)",
            lambda n, a: plain_sum(
                n, lambda k: Fraction(math.factorial(k) * stirling2(a["q"], k), k + 1), 1),
            lambda n, a: Fraction(sum(j ** a["q"] for j in range(1, n + 1)), n + 1),
            (_p("q", range(1, 7), minimum=1),),
            anchor="averaging applied to the inverted Stirling representation",
        ),
    ]


def _harmonic_rows() -> list[IdentitySpec]:
    H = _harm
    rows = [
        IdentitySpec("harmonic_bt", "T(1/k) = H_n",
                     lambda n, a: signed_sum(n, lambda k: Fraction(1, k), 1),
                     lambda n, a: H(n), anchor="harmonic numbers"),
        IdentitySpec("inv_harmonic", "T(H_k) = 1/n",
                     lambda n, a: signed_sum(n, H),
                     lambda n, a: Fraction(1, n), anchor="harmonic numbers"),
        IdentitySpec("inv_harmonic_k", "T(k H_k) = -1/(n-1), n >= 2",
                     lambda n, a: signed_sum(n, lambda k: k * H(k)),
                     lambda n, a: Fraction(-1, n - 1), valid_from=2,
                     anchor="harmonic numbers times powers of k"),
        IdentitySpec("inv_harmonic_k2", "T(k^2 H_k) = n/((n-1)(n-2)), n >= 3",
                     lambda n, a: signed_sum(n, lambda k: k * k * H(k)),
                     lambda n, a: Fraction(n, (n - 1) * (n - 2)), valid_from=3,
                     anchor="harmonic numbers times powers of k"),
        IdentitySpec("harmonic_recip_sq", "T(1/k^2) = sum_{k<=n} H_k/k",
                     lambda n, a: signed_sum(n, lambda k: Fraction(1, k * k), 1),
                     lambda n, a: sum((H(k) / k for k in range(1, n + 1)), Fraction(0)),
                     anchor="harmonic numbers"),
        IdentitySpec("harmonic_quotient_sum", "sum_{k<=n} H_k/k = (H_n^2 + H_n^(2))/2",
                     lambda n, a: sum((H(k) / k for k in range(1, n + 1)), Fraction(0)),
                     lambda n, a: _pair(n) / 2, anchor="harmonic numbers"),
        IdentitySpec("h2_pair_inv", "T(H_k^2 + H_k^(2)) = 2/n^2",
                     lambda n, a: signed_sum(n, _pair),
                     lambda n, a: Fraction(2, n * n), anchor="harmonic squares"),
        IdentitySpec("h_pair_over_k", "T((H_k^2 + H_k^(2))/k) = 2 H_n^(3)",
                     lambda n, a: signed_sum(n, lambda k: _pair(k) / k, 1),
                     lambda n, a: 2 * H(n, 3), anchor="harmonic squares",
                     note="printed with H_n inside the k-sum; read as H_k"),
        IdentitySpec("h3_inv", "T(H_k^(3)) = (H_n^2 + H_n^(2))/(2n)",
                     lambda n, a: signed_sum(n, lambda k: H(k, 3)),
                     lambda n, a: _pair(n) / (2 * n), anchor="harmonic squares",
                     note="printed with H_n^(3) inside the k-sum; read as H_k^(3)"),
        IdentitySpec("h2_pair_k", "T(k(H_k^2 + H_k^(2))) = 2(1-2n)/(n(n-1)^2), n >= 2",
                     lambda n, a: signed_sum(n, lambda k: k * _pair(k)),
                     lambda n, a: Fraction(2 * (1 - 2 * n), n * (n - 1) ** 2),
                     valid_from=2, anchor="harmonic squares",
                     note="printed with H_n inside the k-sum; read as H_k"),
        IdentitySpec(
            "h2_pair_k2",
            "T(k^2(H_k^2 + H_k^(2))) = 2(4n^2-9n+4)/((n-1)^2(n-2)^2), n >= 3",
            lambda n, a: signed_sum(n, lambda k: k * k * _pair(k)),
            lambda n, a: Fraction(2 * (4 * n * n - 9 * n + 4), (n - 1) ** 2 * (n - 2) ** 2),
            valid_from=3, anchor="harmonic squares",
            note=f"{CORRECTED_NOTE}; printed 4/((n-1)(n-2))",
            printed_rhs=lambda n, a: Fraction(4, (n - 1) * (n - 2)),
        ),
        IdentitySpec(
            "h2_pair_k3",
            "T(k^3(H_k^2 + H_k^(2))) = -2n(8n^3-39n^2+54n-19)/((n-1)(n-2)(n-3))^2, n >= 4",
            lambda n, a: signed_sum(n, lambda k: k ** 3 * _pair(k)),
            lambda n, a: Fraction(-2 * n * (8 * n ** 3 - 39 * n * n + 54 * n - 19),
                                  ((n - 1) * (n - 2) * (n - 3)) ** 2),
            valid_from=4, anchor="harmonic squares",
            note=f"{CORRECTED_NOTE}; printed 8n(n-2)/((n-1)(n-3))",
            printed_rhs=lambda n, a: Fraction(8 * n * (n - 2), (n - 1) * (n - 3)),
        ),
        IdentitySpec("h_over_k", "T(H_k/k) = H_n^(2)",
                     lambda n, a: signed_sum(n, lambda k: H(k) / k, 1),
                     lambda n, a: H(n, 2), anchor="harmonic numbers"),
        IdentitySpec("h2_inv", "T(H_k^(2)) = H_n/n",
                     lambda n, a: signed_sum(n, lambda k: H(k, 2)),
                     lambda n, a: H(n) / n, anchor="second-order harmonic numbers"),
        IdentitySpec("h2_k", "T(k H_k^(2)) = (1 - H_n)/(n-1), n >= 2",
                     lambda n, a: signed_sum(n, lambda k: k * H(k, 2)),
                     lambda n, a: (1 - H(n)) / (n - 1), valid_from=2,
                     anchor="second-order harmonic numbers"),
        IdentitySpec("h2_k2", "T(k^2 H_k^(2)) = (1 - 2n + n H_n)/((n-1)(n-2)), n >= 3",
                     lambda n, a: signed_sum(n, lambda k: k * k * H(k, 2)),
                     lambda n, a: (1 - 2 * n + n * H(n)) / ((n - 1) * (n - 2)),
                     valid_from=3, anchor="second-order harmonic numbers"),
        IdentitySpec("h_squared", "T(H_k^2) = 2/n^2 - H_n/n",
                     lambda n, a: signed_sum(n, lambda k: H(k) ** 2),
                     lambda n, a: Fraction(2, n * n) - H(n) / n,
                     anchor="harmonic squares"),
        IdentitySpec("h_squared_k", "T(k H_k^2) = H_n/(n-1) + (2-3n-n^2)/(n(n-1)^2), n >= 2",
                     lambda n, a: signed_sum(n, lambda k: k * H(k) ** 2),
                     lambda n, a: H(n) / (n - 1) + Fraction(2 - 3 * n - n * n,
                                                            n * (n - 1) ** 2),
                     valid_from=2, anchor="harmonic squares"),
        IdentitySpec("dilcher", "T(1/k^m) = sum over 1<=k_1<=...<=k_m<=n of 1/(k_1...k_m)",
                     lambda n, a: signed_sum(n, lambda k: Fraction(1, k ** a["m"]), 1),
                     lambda n, a: _mhs(n, a["m"]),
                     (_p("m", range(1, 6), minimum=1),),
                     anchor="multiple harmonic sums"),
        IdentitySpec(
            "harmonic_kp",
            "T(H_k k^p) = (-1)^(n-1) n! S(p,n) H_n + sum_{k<n} (-1)^k k! S(p,k)/(n-k)",
            lambda n, a: signed_sum(n, lambda k: H(k) * k ** a["p"], 1),
            lambda n, a: (sign(n) * math.factorial(n) * stirling2(a["p"], n) * H(n)
                          + sum((Fraction((-1) ** k * math.factorial(k) * stirling2(a["p"], k),
                                          n - k) for k in range(1, n)), Fraction(0))),
            (_p("p", range(1, 5), minimum=1),),
            anchor="harmonic numbers times powers of k",
        ),
        IdentitySpec(
            "nnabla_inv_n",
            "(n nabla)^p (1/n) = sum_{k<n} (-1)^k k! S(p,k)/(n-k), n > p",
            lambda n, a: n_nabla_pow(
                Sequence((0,) + tuple(Fraction(1, j) for j in range(1, n + 1)), 1),
                a["p"])[n],
            lambda n, a: sum((Fraction((-1) ** k * math.factorial(k) * stirling2(a["p"], k),
                                       n - k) for k in range(1, n)), Fraction(0)),
            (_p("p", range(1, 5), minimum=1),),
            valid_from=lambda a: a["p"] + 1,
            anchor="operator n nabla acting on 1/n",
        ),
    ]
    lam = (_q("lambda", LAMBDA_GRID),)
    rows += [
        IdentitySpec(
            "harmonic_lambda",
            "T(H_k/(k+lambda)) = sum_m (m+1)...n / ((lambda+m)...(lambda+n) m)",
            lambda n, a: signed_sum(n, lambda k: H(k) / (k + a["lambda"]), 1),
            lambda n, a: sum((Fraction(math.factorial(n), math.factorial(m))
                              / (_rising(a["lambda"], m, n) * m)
                              for m in range(1, n + 1)), Fraction(0)),
            lam, constraint=_not_negative_integer("lambda"),
            anchor="harmonic numbers divided by k + lambda",
        ),
        IdentitySpec(
            "harmonic_lambda_closed",
            "closed forms of T(H_k/(k+lambda)) for lambda = 1, 2, 3, 4",
            lambda n, a: signed_sum(n, lambda k: H(k) / (k + a["lambda"]), 1),
            lambda n, a: _harmonic_lambda_closed(n, int(a["lambda"])),
            (_q("lambda", (1, 2, 3, 4)),),
            constraint=_one_of("lambda", (1, 2, 3, 4)),
            anchor="harmonic numbers divided by k + lambda",
        ),
    ]
    return rows


def _harmonic_lambda_closed(n: int, lam: int) -> Fraction:
    h = _harm(n)
    if lam == 1:
        return h / (n + 1)
    if lam == 2:
        return (h + n) / ((n + 1) * (n + 2))
    if lam == 3:
        return (n * n + 7 * n + 4 * h) / (2 * (n + 1) * (n + 2) * (n + 3))
    if lam == 4:
        return ((2 * n ** 3 + 21 * n * n + 85 * n + 36 * h)
                / (6 * (n + 1) * (n + 2) * (n + 3) * (n + 4)))
    raise ValueError(f"no closed form for lambda = {lam}")


def _geometric_rows() -> list[IdentitySpec]:
    X = (_q("x", X_GRID),)
    return [
        IdentitySpec("geometric_bt", "T(x^k) = -(1-x)^n",
                     lambda n, a: signed_sum(n, lambda k: a["x"] ** k),
                     lambda n, a: -(1 - a["x"]) ** n, X, anchor="geometric sequences"),
        IdentitySpec("geometric_inv", "T(1 - (1-x)^k) = x^n",
                     lambda n, a: signed_sum(n, lambda k: 1 - (1 - a["x"]) ** k, 1),
                     lambda n, a: a["x"] ** n, X, anchor="geometric sequences"),
        IdentitySpec("geometric_over_k", "T((1 - (1-x)^k)/k) = sum_{k<=n} x^k/k",
                     lambda n, a: signed_sum(n, lambda k: (1 - (1 - a["x"]) ** k) / k, 1),
                     lambda n, a: sum((a["x"] ** k / k for k in range(1, n + 1)), Fraction(0)),
                     X, anchor="geometric sequences"),
        IdentitySpec("skew_pow2", "T((1 - 2^k)/k) = -H_n^-",
                     lambda n, a: signed_sum(n, lambda k: Fraction(1 - 2 ** k, k), 1),
                     lambda n, a: -_skew(n), anchor="skew-harmonic numbers"),
        IdentitySpec("skew_inv", "T(H_k^-) = (2^n - 1)/n",
                     lambda n, a: signed_sum(n, _skew),
                     lambda n, a: Fraction(2 ** n - 1, n), anchor="skew-harmonic numbers"),
        IdentitySpec("skew_k", "T(k H_k^-) = 2^(n-1)(n-2)/(n-1) + 1/(n-1), n >= 2",
                     lambda n, a: signed_sum(n, lambda k: k * _skew(k)),
                     lambda n, a: Fraction(2 ** (n - 1) * (n - 2) + 1, n - 1),
                     valid_from=2, anchor="skew-harmonic numbers"),
        IdentitySpec("skew_over_k", "T(H_k^-/k) = sum_{k<=n} 2^k/k^2 - H_n^(2)",
                     lambda n, a: signed_sum(n, lambda k: _skew(k) / k, 1),
                     lambda n, a: sum((Fraction(2 ** k, k * k) for k in range(1, n + 1)),
                                      Fraction(0)) - _harm(n, 2),
                     anchor="skew-harmonic numbers"),
        IdentitySpec("skew_over_k1", "T(H_k^-/(k+1)) = (sum_{k<=n} 2^k/k - H_n)/(n+1)",
                     lambda n, a: signed_sum(n, lambda k: _skew(k) / (k + 1), 1),
                     lambda n, a: (sum((Fraction(2 ** k, k) for k in range(1, n + 1)),
                                       Fraction(0)) - _harm(n)) / (n + 1),
                     anchor="skew-harmonic numbers"),
    ]


def _fibonacci_rows() -> list[IdentitySpec]:
    F, L = fibonacci_at, lucas_at
    fib = "Fibonacci and Lucas numbers"
    return [
        IdentitySpec("fib_self", "T(F_k) = F_n",
                     lambda n, a: signed_sum(n, F), lambda n, a: Fraction(F(n)), anchor=fib),
        IdentitySpec("fib_k", "T(k F_k) = n F_(n-2)",
                     lambda n, a: signed_sum(n, lambda k: k * F(k)),
                     lambda n, a: Fraction(n * F(n - 2)), anchor=fib),
        IdentitySpec("fib_k2", "T(k^2 F_k) = n^2 F_(n-4) + n F_(n-3)",
                     lambda n, a: signed_sum(n, lambda k: k * k * F(k)),
                     lambda n, a: Fraction(n * n * F(n - 4) + n * F(n - 3)), anchor=fib),
        IdentitySpec("fib_unsigned", "sum C(n,k) F_k = F_(2n)",
                     lambda n, a: plain_sum(n, F), lambda n, a: Fraction(F(2 * n)), anchor=fib),
        IdentitySpec("fib_unsigned_k", "sum C(n,k) k F_k = n F_(2n-1)",
                     lambda n, a: plain_sum(n, lambda k: k * F(k)),
                     lambda n, a: Fraction(n * F(2 * n - 1)), anchor=fib),
        IdentitySpec("fib_unsigned_k2", "sum C(n,k) k^2 F_k = n^2 F_(2n-2) + n F_(2n-3)",
                     lambda n, a: plain_sum(n, lambda k: k * k * F(k)),
                     lambda n, a: Fraction(n * n * F(2 * n - 2) + n * F(2 * n - 3)),
                     anchor=fib),
        IdentitySpec("lucas_signed", "sum C(n,k) (-1)^k L_k = L_n",
                     lambda n, a: alternating_sum(n, L), lambda n, a: Fraction(L(n)),
                     anchor=fib),
        IdentitySpec("lucas_unsigned", "sum C(n,k) L_k = L_(2n)",
                     lambda n, a: plain_sum(n, L), lambda n, a: Fraction(L(2 * n)), anchor=fib),
        IdentitySpec("fib_avg", "T(F_k/(k+1)) = (F_(n+2) - 1)/(n+1)",
                     lambda n, a: signed_sum(n, lambda k: Fraction(F(k), k + 1)),
                     lambda n, a: Fraction(F(n + 2) - 1, n + 1), anchor=fib),
        IdentitySpec("lucas_avg", "sum C(n,k) (-1)^k L_k/(k+1) = (L_(n+2) - 1)/(n+1)",
                     lambda n, a: alternating_sum(n, lambda k: Fraction(L(k), k + 1)),
                     lambda n, a: Fraction(L(n + 2) - 1, n + 1), anchor=fib),
        IdentitySpec("fib_index_difference", "T(k (F_k - F_(k-1))) = n F_n",
                     lambda n, a: signed_sum(n, lambda k: k * (F(k) - F(k - 1)), 1),
                     lambda n, a: Fraction(n * F(n)),
                     anchor="multiplying the backward difference by k"),
    ]


def _rational_weight_rows() -> list[IdentitySpec]:
    lam = (_q("lambda", LAMBDA_GRID),)
    return [
        IdentitySpec(
            "reciprocal_shift",
            "sum C(n,k) (-1)^k/(k+lambda) = n!/(lambda(lambda+1)...(lambda+n))",
            lambda n, a: alternating_sum(n, lambda k: 1 / (k + a["lambda"])),
            lambda n, a: math.factorial(n) / _rising(a["lambda"], 0, n),
            lam, constraint=_not_negative_integer("lambda", allow_zero=False),
            anchor="division by k + lambda",
        ),
        IdentitySpec(
            "index_over_shift",
            "T(k/(k+lambda)) = n!/((lambda+1)...(lambda+n))",
            lambda n, a: signed_sum(n, lambda k: k / (k + a["lambda"]), 1),
            lambda n, a: math.factorial(n) / _rising(a["lambda"], 1, n),
            lam, constraint=_not_negative_integer("lambda"),
            anchor="division by k + lambda",
        ),
    ]


def _laguerre_rows() -> list[IdentitySpec]:
    X = (_q("x", X_GRID),)
    lag = "Laguerre polynomials"

    def term(x, k):
        return (-x) ** k / math.factorial(k)

    return [
        IdentitySpec("laguerre_sum", "sum C(n,k) (-x)^k/k! = L_n(x)",
                     lambda n, a: plain_sum(n, lambda k: term(a["x"], k)),
                     lambda n, a: _lag(n, a["x"]), X, anchor=lag),
        IdentitySpec("laguerre_over_k", "sum C(n,k) (-x)^k/(k! k) = sum L_k(x)/k - H_n",
                     lambda n, a: plain_sum(n, lambda k: term(a["x"], k) / k, 1),
                     lambda n, a: sum((_lag(k, a["x"]) / k for k in range(1, n + 1)),
                                      Fraction(0)) - _harm(n),
                     X, anchor=lag),
        IdentitySpec("laguerre_avg",
                     "sum C(n,k) (-x)^k/(k!(k+1)) = (1/(n+1)) sum_{k=1}^n (L_k(x) - 1)",
                     lambda n, a: plain_sum(n, lambda k: term(a["x"], k) / (k + 1), 1),
                     lambda n, a: sum((_lag(k, a["x"]) - 1 for k in range(1, n + 1)),
                                      Fraction(0)) / (n + 1),
                     X, anchor=lag),
    ]


def _vandermonde_rows() -> list[IdentitySpec]:
    P0 = (_p("p", range(0, 7), minimum=0),)
    P1 = (_p("p", range(1, 7), minimum=1),)
    van = "Vandermonde convolution"
    C = math.comb
    return [
        IdentitySpec("vandermonde", "sum C(n,k) C(p,k) = C(p+n,p)",
                     lambda n, a: plain_sum(n, lambda k: C(a["p"], k)),
                     lambda n, a: Fraction(C(a["p"] + n, a["p"])), P0, anchor=van),
        IdentitySpec("vandermonde_k", "sum C(n,k) C(p,k) k = n C(p+n-1,p-1)",
                     lambda n, a: plain_sum(n, lambda k: C(a["p"], k) * k),
                     lambda n, a: Fraction(n * C(a["p"] + n - 1, a["p"] - 1)), P1, anchor=van),
        IdentitySpec("vandermonde_avg", "sum C(n,k) C(p,k)/(k+1) = C(p+n+1,p+1)/(n+1)",
                     lambda n, a: plain_sum(n, lambda k: Fraction(C(a["p"], k), k + 1)),
                     lambda n, a: Fraction(C(a["p"] + n + 1, a["p"] + 1), n + 1),
                     P0, anchor=van),
    ]


def builtin_specs() -> list[IdentitySpec]:
    return (_stirling_rows() + _harmonic_rows() + _geometric_rows() + _fibonacci_rows()
            + _rational_weight_rows() + _laguerre_rows() + _vandermonde_rows())


def register_builtin_identities() -> Registry:
    return Registry(builtin_specs())


_DEFAULT: Registry | None = None


def default_registry() -> Registry:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = register_builtin_identities()
    return _DEFAULT


# --- verification ------------------------------------------------------------

def _bind(spec: IdentitySpec, params: Params) -> tuple[dict, str | None]:
    """Coerce supplied parameters; return (bound, reason-if-violated)."""
    names = {p.name for p in spec.params}
    unknown = set(params) - names
    if unknown:
        raise ParameterError(
            f"{spec.id} takes parameters {sorted(names) or 'none'}, got {sorted(unknown)}")
    missing = names - set(params)
    if missing:
        raise ParameterError(f"{spec.id} needs parameter(s) {sorted(missing)}")
    bound = {}
    for p in spec.params:
        v = Fraction(params[p.name]) if not isinstance(params[p.name], str) \
            else parse_rational(params[p.name])
        if p.kind == "integer":
            if v.denominator != 1:
                return dict(params), f"{p.name} must be an integer, got {format_rational(v)}"
            v = int(v)
            if p.minimum is not None and v < p.minimum:
                return dict(params), f"{p.name} must be >= {p.minimum}, got {v}"
        bound[p.name] = v
    if spec.constraint is not None:
        reason = spec.constraint(bound)
        if reason:
            return bound, reason
    return bound, None


def verify(identity_id: str, n_max: int, params: Params | None = None,
           registry: Registry | None = None) -> VerificationReport:
    """Check one identity exactly for every ``n`` in ``[valid_from, n_max]``."""
    reg = registry if registry is not None else default_registry()
    spec = reg.lookup(identity_id)
    bound, reason = _bind(spec, params or {})
    if reason:
        return VerificationReport(spec.id, bound, 0, n_max, SKIPPED, reason=reason,
                                  note=spec.note)
    n_min = spec.first_n(bound)
    if n_max < n_min:
        return VerificationReport(spec.id, bound, n_min, n_max, SKIPPED,
                                  reason="below valid_from", note=spec.note)
    for n in range(n_min, n_max + 1):
        lhs = Fraction(spec.lhs(n, bound))
        rhs = Fraction(spec.rhs(n, bound))
        if lhs != rhs:
            return VerificationReport(spec.id, bound, n_min, n_max, FAIL,
                                      Counterexample(n, lhs, rhs), note=spec.note)
    return VerificationReport(spec.id, bound, n_min, n_max, PASS, note=spec.note)


def verify_grid(identity_id: str, n_max: int,
                registry: Registry | None = None) -> list[VerificationReport]:
    reg = registry if registry is not None else default_registry()
    spec = reg.lookup(identity_id)
    return [verify(identity_id, n_max, params, reg) for params in spec.grid()]


def verify_all(n_max: int, registry: Registry | None = None) -> list[VerificationReport]:
    """Run every identity over its default grid; reports ordered by id."""
    reg = registry if registry is not None else default_registry()
    reports = []
    for identity_id in reg.ids():
        reports.extend(verify_grid(identity_id, n_max, reg))
    return reports
