# BSD 3-Clause License; see LICENSE

"""
Hypersimplices ``Δ(k, n)`` and the named lifting functions on them.

Vertices are listed in descending lexicographic order of their 0/1 vectors;
that is the order :func:`itertools.combinations` produces for the positions
of the ones. All indices in this module are 0-based; split parts given on the
command line are 1-based and converted there.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._configuration import DissimilarityMap, HeightFunction, PointConfiguration, pairs
from ._errors import InputError


@dataclass(frozen=True)
class HypersimplexSpec:
    """The parameters ``(k, n)`` of ``Δ(k, n)``, with ``1 <= k <= n - 1``."""

    k: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            msg = f"k and n must be integers, got k={self.k!r}, n={self.n!r}"
            raise InputError(msg)
        if not 1 <= self.k <= self.n - 1:
            msg = f"Δ(k, n) needs 1 <= k <= n - 1, got k={self.k}, n={self.n}"
            raise InputError(msg)

    def require_proper(self) -> None:
        """The constructions λ, κ and the center vertex need ``2 <= k <= n - 2``."""
        if not 2 <= self.k <= self.n - 2:
            msg = f"this construction needs 2 <= k <= n - 2, got k={self.k}, n={self.n}"
            raise InputError(msg)

    @property
    def npoints(self) -> int:
        return math.comb(self.n, self.k)

    @property
    def dim(self) -> int:
        return self.n - 1


def _spec(spec: HypersimplexSpec | tuple[int, int]) -> HypersimplexSpec:
    return spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)


@lru_cache(maxsize=None)
def _subsets(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(n), k))


@lru_cache(maxsize=None)
def _subset_index(k: int, n: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(_subsets(k, n))}


def vertex_subsets(spec: HypersimplexSpec | tuple[int, int]) -> tuple[tuple[int, ...], ...]:
    """The supports of the vertices, in vertex order."""
    s = _spec(spec)
    return _subsets(s.k, s.n)


def vertex_index(spec: HypersimplexSpec | tuple[int, int], support: Iterable[int]) -> int:
    """Label (0-based) of the vertex with ones at ``support``."""
    s = _spec(spec)
    key = tuple(sorted(support))
    try:
        return _subset_index(s.k, s.n)[key]
    except KeyError as err:
        msg = f"{key} is not the support of a vertex of Δ({s.k},{s.n})"
        raise InputError(msg) from err


def vertex_label(support: Iterable[int], n: int) -> str:
    ones = set(support)
    return "".join("1" if i in ones else "0" for i in range(n))


def vertices(spec: HypersimplexSpec | tuple[int, int]) -> PointConfiguration:
    """
    The ``C(n, k)`` vertices of ``Δ(k, n)`` in descending lexicographic order.
    """
    s = _spec(spec)
    points = tuple(
        tuple(1 if i in support else 0 for i in range(s.n))
        for support in _subsets(s.k, s.n)
    )
    return PointConfiguration(points, "descending-lex", (s.k, s.n))


def _indicator(npoints: int, count: int) -> HeightFunction:
    return HeightFunction([1] * count + [0] * (npoints - count))


def lambda_lift(spec: HypersimplexSpec | tuple[int, int]) -> HeightFunction:
    """Height 1 on the first ``n - k`` vertices, 0 elsewhere."""
    s = _spec(spec)
    s.require_proper()
    return _indicator(s.npoints, s.n - s.k)


def kappa_lift(spec: HypersimplexSpec | tuple[int, int]) -> HeightFunction:
    """
    Height 1 on the first ``C(n-1, k-1) - 1`` vertices: every vertex with a
    leading one except the last of them.
    """
    s = _spec(spec)
    s.require_proper()
    return _indicator(s.npoints, math.comb(s.n - 1, s.k - 1) - 1)


def center_vertex(spec: HypersimplexSpec | tuple[int, int]) -> tuple[int, ...]:
    """``e_1`` plus the last ``k - 1`` unit vectors."""
    s = _spec(spec)
    s.require_proper()
    return (1,) + (0,) * (s.n - s.k) + (1,) * (s.k - 1)


def center_index(spec: HypersimplexSpec | tuple[int, int]) -> int:
    """0-based label of :func:`center_vertex`, which is ``C(n-1, k-1) - 1``."""
    s = _spec(spec)
    s.require_proper()
    return math.comb(s.n - 1, s.k - 1) - 1


def _part(n: int, part: Iterable[int]) -> frozenset[int]:
    a = frozenset(part)
    if not a or len(a) >= n or min(a) < 0 or max(a) >= n:
        msg = f"{sorted(a)} is not a proper nonempty subset of range({n})"
        raise InputError(msg)
    return a


def split_type(n: int, part: Iterable[int]) -> tuple[int, int]:
    a = len(_part(n, part))
    return min(a, n - a), max(a, n - a)


def split_pseudometric(n: int, part: Iterable[int]) -> DissimilarityMap:
    """
    The split pseudo-metric ``D_{A,B}`` of the bipartition ``A | [n] - A``.

    It is 0 on pairs inside a part and 1 on pairs across.
    """
    a = _part(n, part)
    lo, hi = split_type(n, a)
    values = tuple(Fraction(int((i in a) != (j in a))) for i, j in pairs(n))
    return DissimilarityMap(n, values, kind=f"D_{{{lo},{hi}}}")


def splits(n: int) -> list[frozenset[int]]:
    """
    The ``2^(n-1) - n - 1`` splits of ``Δ(2, n)``: bipartitions with both
    parts of size at least two, each given by the part containing 0.
    """
    out = []
    rest = range(1, n)
    for size in range(1, n - 2):
        for others in itertools.combinations(rest, size):
            out.append(frozenset((0, *others)))
    return out


def thrackle(n: int) -> DissimilarityMap:
    """The thrackle metric ``T(i, j) = (j - i)(n - j + i)`` (1-based, ``i < j``)."""
    if n < 3:
        msg = f"the thrackle metric needs n >= 3, got {n}"
        raise InputError(msg)
    return DissimilarityMap(n, tuple(Fraction((j - i) * (n - j + i)) for i, j in pairs(n)))


@lru_cache(maxsize=None)
def eulerian(n: int, k: int) -> int:
    """
    Eulerian number ``A(n, k)`` via ``A(n, k) = k A(n-1, k) + (n-k+1) A(n-1, k-1)``,
    ``A(1, 1) = 1``; zero outside ``1 <= k <= n``.
    """
    if n < 1 or not 1 <= k <= n:
        return 0
    if n == 1:
        return 1
    return k * eulerian(n - 1, k) + (n - k + 1) * eulerian(n - 1, k - 1)


def speyer_bound(k: int, n: int) -> int:
    """Maximal spread of a matroidal subdivision of ``Δ(k, n)``: ``C(n-2, k-1)``."""
    HypersimplexSpec(k, n).require_proper()
    return math.comb(n - 2, k - 1)


def gr_ray_bound(k: int, n: int) -> int:
    """Spread bound for rays of the tropical Grassmannian: ``C(n-2, k-1) - (k-1)(n-k-1) + 1``."""
    HypersimplexSpec(k, n).require_proper()
    return math.comb(n - 2, k - 1) - (k - 1) * (n - k - 1) + 1


def hypersimplex_edges(spec: HypersimplexSpec | tuple[int, int]) -> list[tuple[int, int]]:
    """Vertex pairs of ``Δ(k, n)`` differing by a single ``e_i - e_j``."""
    subsets = vertex_subsets(spec)
    return [
        (a, b)
        for (a, s), (b, t) in itertools.combinations(enumerate(subsets), 2)
        if len(set(s) ^ set(t)) == 2
    ]


__all__ = [
    "HypersimplexSpec",
    "center_index",
    "center_vertex",
    "eulerian",
    "gr_ray_bound",
    "hypersimplex_edges",
    "kappa_lift",
    "lambda_lift",
    "speyer_bound",
    "split_pseudometric",
    "split_type",
    "splits",
    "thrackle",
    "vertex_index",
    "vertex_label",
    "vertex_subsets",
    "vertices",
]
