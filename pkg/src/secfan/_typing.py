# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import numbers
from collections.abc import Sequence
from fractions import Fraction
from typing import Union

import numpy as np

#: Exact rational number; always in lowest terms with a positive denominator.
Rational = Fraction

#: Exact vector of rationals.
QVector = tuple[Fraction, ...]

#: Row-major exact matrix.
QMatrix = tuple[QVector, ...]

#: Anything that converts losslessly to a :class:`fractions.Fraction`.
RationalLike = Union[int, Fraction, str, numbers.Rational, np.integer]

#: A sorted tuple of point indices.
Cell = tuple[int, ...]

VectorLike = Sequence[RationalLike]
MatrixLike = Sequence[Sequence[RationalLike]]

__all__ = [
    "Cell",
    "MatrixLike",
    "QMatrix",
    "QVector",
    "Rational",
    "RationalLike",
    "VectorLike",
]
