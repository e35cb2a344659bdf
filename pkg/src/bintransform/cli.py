"""Command-line interface.

Exit codes: 0 success (all identities pass), 1 an identity failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import sequences as gens
from .core import (
    DomainError,
    backward_difference,
    binomial_transform,
    format_rational,
    inverse_unsigned_binomial_transform,
    n_nabla,
    parse_rational,
    Sequence,
    unsigned_binomial_transform,
)
from .identities import (
    FAIL,
    ParameterError,
    Registry,
    UnknownIdentityError,
    default_registry,
    format_params,
    verify,
    verify_all,
    verify_grid,
)
from .seqfile import NULL_TOKEN, PLACEHOLDER, SequenceFileError, format_sequence, parse_sequence

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# name -> (builder, parameter names with defaults)
GENERATORS = {
    "harmonic": (lambda N, a: gens.harmonic(N), {}),
    "gen-harmonic": (lambda N, a: gens.generalized_harmonic(N, int(a["r"])), {"r": 2}),
    "skew-harmonic": (lambda N, a: gens.skew_harmonic(N), {}),
    "fibonacci": (lambda N, a: gens.fibonacci(N), {}),
    "lucas": (lambda N, a: gens.lucas(N), {}),
    "power-sum": (lambda N, a: gens.power_sum(N, int(a["q"])), {"q": 1}),
    "geometric": (lambda N, a: gens.geometric(N, a["x"]), {"x": None}),
    "index-powers": (lambda N, a: gens.index_powers(N, int(a["p"])), {"p": 1}),
    "laguerre": (lambda N, a: gens.laguerre(N, a["x"]), {"x": None}),
    "mhs": (lambda N, a: gens.multiple_harmonic_sum(N, int(a["m"])), {"m": 1}),
    "binomial-column": (lambda N, a: gens.binomial_column(N, int(a["p"])), {"p": None}),
}
INTEGER_PARAMS = {"r", "q", "p", "m"}


class UsageError(Exception):
    pass


def _param(text: str) -> tuple[str, Fraction]:
    name, eq, value = text.partition("=")
    if not eq or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), parse_rational(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational literal: {value!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bintransform", description="Exact binomial transforms and identity checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="binomial transform of a sequence file")
    t.add_argument("file", help="sequence file, or - for stdin")
    t.add_argument("--unsigned", action="store_true", help="drop the (-1)^(k-1) factor")
    t.add_argument("--inverse", action="store_true")

    o = sub.add_parser("op", help="apply nabla or n*nabla")
    o.add_argument("operator", choices=["nabla", "n-nabla"])
    o.add_argument("file")
    o.add_argument("--p", type=int, default=1, help="number of applications")
    o.add_argument("--valid-from", type=int, default=0,
                   help="first defined index of the input")
    o.add_argument("--machine", action="store_true",
                   help=f"write {NULL_TOKEN!r} instead of {PLACEHOLDER!r} for undefined terms")

    g = sub.add_parser("gen", help="generate a built-in sequence")
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("count_pos", nargs="?", type=int, metavar="COUNT")
    g.add_argument("--count", type=int)
    g.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=VALUE")
    for short in ("x", "p", "q", "r", "m"):
        g.add_argument(f"--{short}", type=_rational, help=f"shorthand for --param {short}=...")

    v = sub.add_parser("verify", help="check identities exactly")
    target = v.add_mutually_exclusive_group(required=True)
    target.add_argument("identity", nargs="?")
    target.add_argument("--all", action="store_true")
    target.add_argument("--list", action="store_true", help="list identity ids")
    v.add_argument("--n-max", type=int, default=20)
    v.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=VALUE")
    v.add_argument("--machine", action="store_true", help="tab-separated key=value records")
    return parser


def _read(path: str) -> Sequence:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_sequence(text)


def cmd_transform(args, out) -> int:
    a = _read(args.file)
    if not args.unsigned:
        b = binomial_transform(a)  # self-inverse
    elif args.inverse:
        b = inverse_unsigned_binomial_transform(a)
    else:
        b = unsigned_binomial_transform(a)
    out.write(format_sequence(b))
    return EXIT_OK


def cmd_op(args, out) -> int:
    if args.p < 1:
        raise UsageError("--p must be a positive integer")
    s = _read(args.file)
    if not 0 <= args.valid_from < len(s):
        raise UsageError(f"--valid-from must lie in [0, {len(s) - 1}]")
    s = Sequence(s.values, args.valid_from)
    step = n_nabla if args.operator == "n-nabla" else backward_difference
    for _ in range(args.p):
        s = step(s)
    out.write(format_sequence(s, NULL_TOKEN if args.machine else PLACEHOLDER))
    return EXIT_OK


def cmd_gen(args, out) -> int:
    count = args.count if args.count is not None else args.count_pos
    if count is None or count < 1:
        raise UsageError("a positive count is required")
    builder, defaults = GENERATORS[args.name]
    supplied = dict(args.param)
    for short in ("x", "p", "q", "r", "m"):
        if getattr(args, short) is not None:
            supplied[short] = getattr(args, short)
    unknown = set(supplied) - set(defaults)
    if unknown:
        raise UsageError(f"{args.name} does not take parameter(s) {sorted(unknown)}")
    params = {**defaults, **supplied}
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise UsageError(f"{args.name} needs parameter(s) {missing}")
    for k in INTEGER_PARAMS & set(params):
        if Fraction(params[k]).denominator != 1:
            raise UsageError(f"{k} must be an integer")
    try:
        seq = builder(count, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(format_sequence(seq))
    return EXIT_OK


def _human_line(r) -> str:
    params = format_params(r.params) or "-"
    line = f"{r.status.upper():8} {r.identity_id:26} {params:18} n={r.n_min}..{r.n_max}"
    if r.counterexample is not None:
        ce = r.counterexample
        line += (f"  at n={ce.n}: lhs={format_rational(ce.lhs)}"
                 f" rhs={format_rational(ce.rhs)}")
    if r.reason:
        line += f"  ({r.reason})"
    if r.note:
        line += f"  [{r.note}]"
    return line


def cmd_verify(args, out, registry: Registry) -> int:
    if args.list:
        for spec in registry:
            out.write(f"{spec.id}\t{spec.description}\n")
        return EXIT_OK
    if args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    if args.all:
        if args.param:
            raise UsageError("--param cannot be combined with --all")
        reports = verify_all(args.n_max, registry)
    elif args.param:
        reports = [verify(args.identity, args.n_max, dict(args.param), registry)]
    else:
        reports = verify_grid(args.identity, args.n_max, registry)
    for r in reports:
        out.write((r.to_record() if args.machine else _human_line(r)) + "\n")
    if not args.machine:
        counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skipped")}
        out.write(f"{len(reports)} checks: {counts['pass']} pass, {counts['fail']} fail, "
                  f"{counts['skipped']} skipped\n")
    return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK


def main(argv=None, registry: Registry | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "transform":
            return cmd_transform(args, out)
        if args.command == "op":
            return cmd_op(args, out)
        if args.command == "gen":
            return cmd_gen(args, out)
        return cmd_verify(args, out, registry if registry is not None else default_registry())
    except SequenceFileError as exc:
        err.write(f"bintransform: parse error: {exc}\n")
    except UnknownIdentityError as exc:
        err.write(f"bintransform: {exc}; available: {', '.join(exc.available)}\n")
    except (UsageError, ParameterError, DomainError, OSError) as exc:
        err.write(f"bintransform: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
