# BSD 3-Clause License; see LICENSE

"""
Reading and writing distance matrices.

Accepted layouts (whitespace separated, ``#`` starts a comment):

* a full symmetric matrix with zero diagonal;
* the upper or lower triangle, with or without the diagonal;
* PHYLIP: a first line holding only the number of taxa, then one row per
  taxon starting with its name (square or lower-triangular).

An optional first line of taxa names is accepted for the non-PHYLIP layouts,
as are row labels. Values are parsed as exact decimals.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, Optional

from .._configuration import DissimilarityMap
from .._errors import InputError


def parse_decimal(text: str) -> Fraction:
    """
    The exact value of a decimal literal such as ``"0.09010340"`` or ``"1e-3"``.

    Raises:
        InputError: for anything that is not a finite nonnegative decimal.
    """
    token = text.strip()
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as err:
        msg = f"{token!r} is not a decimal number"
        raise InputError(msg) from err
    if "/" in token:
        msg = f"{token!r} is a fraction; distances must be written as decimals"
        raise InputError(msg)
    if value < 0:
        msg = f"distance {token} is negative"
        raise InputError(msg)
    return value


def _is_number(token: str) -> bool:
    try:
        Fraction(token)
    except (ValueError, ZeroDivisionError):
        return False
    return "/" not in token


def format_decimal(x: Fraction, digits: int = 8) -> str:
    """Exact rounding of ``x`` to ``digits`` decimals, as a string."""
    scaled = round(Fraction(x) * 10**digits)
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


class DistanceMatrix(NamedTuple):
    names: Optional[tuple[str, ...]]
    metric: DissimilarityMap


def _tokenize(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        content = line.split("#", 1)[0].strip()
        if content:
            rows.append(content.split())
    return rows


def _from_rows(values: list[list[Fraction]], expected: Optional[int]) -> DissimilarityMap:
    m = len(values)
    lengths = [len(r) for r in values]
    if lengths == [m] * m and (expected is None or expected == m):
        return DissimilarityMap.from_matrix(values)

    def with_diagonal(first: bool) -> bool:
        return all(r and r[0 if first else -1] == 0 for r in values)

    if lengths == list(range(m, 0, -1)):
        if (expected is None and with_diagonal(True)) or expected == m:
            n, rows = m, [r[1:] for r in values]
        else:
            n, rows = m + 1, values
        upper = [[Fraction(0)] * n for _ in range(n)]
        for i, row in enumerate(rows):
            for off, x in enumerate(row):
                j = i + 1 + off
                upper[i][j] = upper[j][i] = x
        return _checked(upper, n, expected)
    if lengths in (list(range(1, m + 1)), list(range(m))):
        if lengths[0] == 0:
            n, rows = m, values
        elif (expected is None and with_diagonal(False)) or expected == m:
            n, rows = m, [r[:-1] for r in values]
        else:
            n, rows = m + 1, [[], *values]
        lower = [[Fraction(0)] * n for _ in range(n)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                lower[i][j] = lower[j][i] = x
        return _checked(lower, n, expected)
    msg = f"cannot recognize a distance matrix in rows of lengths {lengths}"
    raise InputError(msg)


def _checked(matrix: list[list[Fraction]], n: int, expected: Optional[int]) -> DissimilarityMap:
    if expected is not None and expected != n:
        msg = f"expected {expected} taxa, found a matrix for {n}"
        raise InputError(msg)
    return DissimilarityMap.from_matrix(matrix)


def parse_distance_text(text: str) -> DistanceMatrix:
    """
    Parses a distance matrix in any of the accepted layouts.

    Raises:
        InputError: if the text is malformed, asymmetric, has a nonzero
            diagonal or negative entries.
    """
    rows = _tokenize(text)
    if not rows:
        msg = "no distance values found"
        raise InputError(msg)

    names: Optional[list[str]] = None
    expected: Optional[int] = None
    if len(rows[0]) == 1 and rows[0][0].isdigit() and len(rows) > 1 and not _is_number(rows[1][0]):
        expected = int(rows[0][0])
        rows = rows[1:]
    elif not any(_is_number(t) for t in rows[0]):
        names = rows[0]
        expected = len(names)
        rows = rows[1:]

    if rows and all(r and not _is_number(r[0]) for r in rows):
        labels = [r[0] for r in rows]
        rows = [r[1:] for r in rows]
        if names is None:
            names = labels
    values = [[parse_decimal(t) for t in r] for r in rows]
    metric = _from_rows(values, expected)
    if names is not None and len(names) != metric.n:
        msg = f"{len(names)} taxa names for a {metric.n} x {metric.n} matrix"
        raise InputError(msg)
    return DistanceMatrix(tuple(names) if names is not None else None, metric)


def read_distance_file(path: str | Path) -> DistanceMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        msg = f"cannot read {path}: {err.strerror}"
        raise InputError(msg) from err
    return parse_distance_text(text)


def format_distance_matrix(
    metric: DissimilarityMap,
    names: Optional[Sequence[str]] = None,
    digits: int = 8,
) -> str:
    """The upper triangle, one row per line, rounded to ``digits`` decimals."""
    lines = []
    if names is not None:
        lines.append(" ".join(names))
    for i in range(metric.n):
        lines.append(" ".join(format_decimal(metric(i, j), digits) for j in range(i, metric.n)))
    return "\n".join(lines) + "\n"


__all__ = [
    "DistanceMatrix",
    "format_decimal",
    "format_distance_matrix",
    "parse_decimal",
    "parse_distance_text",
    "read_distance_file",
]
