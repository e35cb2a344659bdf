"""Plain-text sequence files: one exact rational per line, first line is index 0."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .core import Sequence, format_rational, parse_rational

PLACEHOLDER = "·"
NULL_TOKEN = "_"


class SequenceFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_sequence(text: str) -> Sequence:
    """Parse file contents; blank lines and ``#`` comments are skipped."""
    values: list[Fraction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_rational(line))
        except ValueError:
            raise SequenceFileError(f"cannot parse term {raw!r}", lineno) from None
    if not values:
        raise SequenceFileError("no terms found")
    return Sequence(tuple(values))


def format_sequence(seq: Sequence, placeholder: str = PLACEHOLDER) -> str:
    lines = [placeholder if n < seq.valid_from else format_rational(v)
             for n, v in enumerate(seq.values)]
    return "\n".join(lines) + "\n"


def format_values(values: Iterable) -> str:
    return "".join(format_rational(v) + "\n" for v in values)
