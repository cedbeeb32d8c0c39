# BSD 3-Clause License; see LICENSE

"""
Point configurations, height functions and dissimilarity maps.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Optional

import numpy as np

from ._errors import DegenerateInputError, InputError
from ._exactgeom import (
    AffineLattice,
    affine_dim,
    facet_description,
    lattice_volume,
    qvector,
    tight_sets,
)
from ._typing import QVector, RationalLike


@dataclass(frozen=True)
class PointConfiguration:
    """
    An ordered list of distinct integer points in convex position.

    Raises :class:`~secfan.InputError` on construction when a point is not
    a vertex of the convex hull.

    Attributes:
        points: The points, one tuple of ints per point.
        label_order: ``"descending-lex"`` for hypersimplices generated by
            :func:`secfan.vertices`, otherwise ``None``.
        hypersimplex: ``(k, n)`` when the points are the vertices of
            ``Δ(k, n)`` in the standard order.
    """

    points: tuple[tuple[int, ...], ...]
    label_order: Optional[str] = None
    hypersimplex: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(_as_int(x) for x in p) for p in self.points)
        if not rows:
            msg = "a point configuration needs at least one point"
            raise InputError(msg)
        width = len(rows[0])
        for p in rows:
            if len(p) != width:
                msg = f"point {p} has {len(p)} coordinates, expected {width}"
                raise InputError(msg)
        if len(set(rows)) != len(rows):
            msg = "points of a configuration must be pairwise distinct"
            raise InputError(msg)
        object.__setattr__(self, "points", rows)
        # distinct 0/1 points are vertices of the cube, hence of their hull
        if any(x not in (0, 1) for p in rows for x in p):
            self.check_convex_position()

    def __len__(self) -> int:
        return len(self.points)

    @property
    def npoints(self) -> int:
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    @cached_property
    def dim(self) -> int:
        """Affine dimension ``d``."""
        return affine_dim(self.points)

    @cached_property
    def lattice(self) -> AffineLattice:
        return AffineLattice.of(self.points)

    @cached_property
    def full_dimensional_points(self) -> tuple[tuple[int, ...], ...]:
        """
        The points in ``d`` coordinates.

        Coordinates are the pivot coordinates of the affine hull; for a
        hypersimplex this drops the last coordinate. When the hull's lattice
        is not a coordinate projection the points are still projected
        injectively, but volumes must be taken with :attr:`lattice`.
        """
        return tuple(self.lattice.project(self.points))

    @cached_property
    def homogenized(self) -> tuple[tuple[int, ...], ...]:
        return tuple((*p, 1) for p in self.full_dimensional_points)

    @cached_property
    def total_volume(self) -> int:
        return lattice_volume(self.points, self.lattice)

    def volume(self, cell: Iterable[int]) -> int:
        """Normalized volume of the hull of the indexed points, relative to :attr:`lattice`."""
        return lattice_volume([self.points[i] for i in cell], self.lattice)

    def require_spanning(self) -> None:
        if self.dim < 1:
            msg = "the configuration must contain at least two distinct points"
            raise DegenerateInputError(msg)

    def check_convex_position(self) -> None:
        """
        Raises:
            InputError: if some point is not a vertex of the convex hull.
        """
        if self.npoints == 1:
            return
        hull = facet_description(self.points)
        tight = np.zeros((self.npoints, len(hull.inequalities)), dtype=bool)
        for f, cell in enumerate(tight_sets(hull, self.points)):
            tight[list(cell), f] = True
        for i in range(self.npoints):
            if int(tight[:, tight[i]].all(axis=1).sum()) != 1:
                msg = f"point {i} ({self.points[i]}) is not a vertex of the convex hull"
                raise InputError(msg)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"points": [list(p) for p in self.points]}
        if self.hypersimplex is not None:
            out["k"], out["n"] = self.hypersimplex
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PointConfiguration:
        try:
            points = tuple(tuple(p) for p in data["points"])
        except (KeyError, TypeError) as err:
            msg = "configuration JSON needs a 'points' list of lists"
            raise InputError(msg) from err
        if "k" in data and "n" in data:
            return cls(points, "descending-lex", (int(data["k"]), int(data["n"])))
        return cls(points)


def _as_int(x: Any) -> int:
    if isinstance(x, (bool, float, np.floating)) or not isinstance(
        x, (int, np.integer, Fraction)
    ):
        msg = f"configuration coordinates must be integers, got {x!r}"
        raise InputError(msg)
    if isinstance(x, Fraction) and x.denominator != 1:
        msg = f"configuration coordinates must be integers, got {x}"
        raise InputError(msg)
    return int(x)


@dataclass(frozen=True)
class HeightFunction:
    """
    Exact heights, one per configuration point (lower-hull convention).
    """

    values: QVector

    def __init__(self, values: Iterable[RationalLike]) -> None:
        object.__setattr__(self, "values", qvector(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def _check(self, other: HeightFunction) -> None:
        if len(other) != len(self):
            msg = f"height functions of lengths {len(self)} and {len(other)}"
            raise InputError(msg)

    def __add__(self, other: HeightFunction) -> HeightFunction:
        self._check(other)
        return HeightFunction(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other: HeightFunction) -> HeightFunction:
        self._check(other)
        return HeightFunction(a - b for a, b in zip(self.values, other.values))

    def __neg__(self) -> HeightFunction:
        return HeightFunction(-a for a in self.values)

    def __mul__(self, c: RationalLike) -> HeightFunction:
        f = qvector([c])[0]
        return HeightFunction(f * a for a in self.values)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)


def coerce_heights(
    omega: HeightFunction | DissimilarityMap | Iterable[RationalLike],
) -> HeightFunction:
    """
    Accepts heights in any supported form.

    A :class:`DissimilarityMap` is converted with
    :meth:`DissimilarityMap.as_height`, which is the only place a metric is
    negated.
    """
    if isinstance(omega, HeightFunction):
        return omega
    if isinstance(omega, DissimilarityMap):
        return omega.as_height()
    return HeightFunction(omega)


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair ``{i, j}`` (0-based, ``i != j``) in the descending-lex pair order."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        msg = f"invalid pair ({i}, {j}) for n={n}"
        raise InputError(msg)
    i, j = min(i, j), max(i, j)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class DissimilarityMap:
    """
    A symmetric map on the pairs of ``[n]``, stored as a vector in the
    descending-lex pair order ``(0,1), (0,2), ..., (n-2,n-1)``.

    That order is also the vertex order of ``Δ(2, n)``, so the vector can be
    read directly as (the negative of) a height function.

    Attributes:
        n: Number of points.
        values: ``C(n, 2)`` exact values.
        kind: Optional label such as ``"D_{2,4}"`` for split pseudo-metrics.
    """

    n: int
    values: QVector
    kind: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        vals = qvector(self.values)
        if self.n < 2:
            msg = f"a dissimilarity map needs n >= 2, got {self.n}"
            raise InputError(msg)
        if len(vals) != math.comb(self.n, 2):
            msg = f"expected {math.comb(self.n, 2)} values for n={self.n}, got {len(vals)}"
            raise InputError(msg)
        object.__setattr__(self, "values", vals)

    def __call__(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        return self.values[pair_index(i, j, self.n)]

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: DissimilarityMap) -> DissimilarityMap:
        return DissimilarityMap(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: DissimilarityMap) -> DissimilarityMap:
        return DissimilarityMap(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, c: RationalLike) -> DissimilarityMap:
        f = qvector([c])[0]
        return DissimilarityMap(self.n, tuple(f * a for a in self.values))

    __rmul__ = __mul__

    def matrix(self) -> list[list[Fraction]]:
        return [[self(i, j) for j in range(self.n)] for i in range(self.n)]

    def as_height(self) -> HeightFunction:
        """The height function ``-D`` on the vertices of ``Δ(2, n)``."""
        return HeightFunction(-a for a in self.values)

    @classmethod
    def from_height(cls, omega: HeightFunction | Sequence[RationalLike], n: int) -> DissimilarityMap:
        """Inverse of :meth:`as_height`."""
        return cls(n, tuple(-a for a in qvector(omega)))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[RationalLike]]) -> DissimilarityMap:
        """
        Raises:
            InputError: if the matrix is not square, not symmetric or has a
                nonzero diagonal.
        """
        rows = [qvector(r) for r in matrix]
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                msg = f"row {i + 1} has {len(row)} entries, expected {n}"
                raise InputError(msg)
            if row[i] != 0:
                msg = f"diagonal entry {i + 1} is {row[i]}, expected 0"
                raise InputError(msg)
        for i, j in pairs(n):
            if rows[i][j] != rows[j][i]:
                msg = f"matrix is not symmetric at ({i + 1}, {j + 1})"
                raise InputError(msg)
        return cls(n, tuple(rows[i][j] for i, j in pairs(n)))

    @classmethod
    def constant(cls, n: int, value: RationalLike = 1) -> DissimilarityMap:
        return cls(n, (qvector([value])[0],) * math.comb(n, 2))


__all__ = [
    "DissimilarityMap",
    "HeightFunction",
    "PointConfiguration",
    "coerce_heights",
    "pair_index",
    "pairs",
]
