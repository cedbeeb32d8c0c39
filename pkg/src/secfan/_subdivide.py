# BSD 3-Clause License; see LICENSE

"""
Regular subdivisions of point configurations and predicates on them.

A :class:`Subdivision` stores its maximal cells as an :class:`awkward.Array`
of point-index lists (ragged: cells of a coarse subdivision have different
sizes), together with a hashable sorted tuple form used for comparisons.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any, NamedTuple, Optional

import awkward as ak
import networkx as nx
import numpy as np

from ._configuration import HeightFunction, PointConfiguration, coerce_heights
from ._errors import InputError, InvariantViolation, NotNestedError
from ._exactgeom import affine_dim, lower_facets, polytope_edges
from ._hypersimplex import HypersimplexSpec, hypersimplex_edges, vertex_index, vertex_subsets, vertices
from ._typing import Cell, RationalLike

logger = logging.getLogger(__name__)


class Subdivision:
    """
    A subdivision of a :class:`PointConfiguration`, given by its maximal cells.

    Cells are sorted tuples of 0-based point indices; the list of cells is
    sorted lexicographically. Two subdivisions are equal when they subdivide
    the same configuration and have the same cells.
    """

    def __init__(self, config: PointConfiguration, cells: Iterable[Iterable[int]]) -> None:
        key = tuple(sorted({tuple(sorted(int(i) for i in c)) for c in cells}))
        if not key:
            msg = "a subdivision needs at least one cell"
            raise InputError(msg)
        for c in key:
            if c[0] < 0 or c[-1] >= config.npoints:
                msg = f"cell {c} refers to points outside range({config.npoints})"
                raise InputError(msg)
        self._config = config
        self._key = key

    @property
    def config(self) -> PointConfiguration:
        return self._config

    @property
    def key(self) -> tuple[Cell, ...]:
        return self._key

    @cached_property
    def cells(self) -> ak.Array:
        return ak.Array([list(c) for c in self._key])

    def __len__(self) -> int:
        return len(self._key)

    def __iter__(self) -> Any:
        return iter(self._key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subdivision):
            return NotImplemented
        return self._key == other._key and self._config.points == other._config.points

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subdivision(spread={len(self)}, cells={[list(c) for c in self._key]})"

    @property
    def spread(self) -> int:
        return len(self._key)

    @cached_property
    def cell_sizes(self) -> np.ndarray:
        return ak.to_numpy(ak.num(self.cells))

    @cached_property
    def cell_volumes(self) -> tuple[int, ...]:
        return tuple(self._config.volume(c) for c in self._key)

    @property
    def is_triangulation(self) -> bool:
        d = self._config.dim
        return bool((self.cell_sizes == d + 1).all()) and all(v > 0 for v in self.cell_volumes)

    @property
    def is_trivial(self) -> bool:
        return len(self._key) == 1 and len(self._key[0]) == self._config.npoints

    def padded(self, fill: int = -1) -> np.ndarray:
        """Rectangular ``(spread, max cell size)`` array, short cells padded with ``fill``."""
        width = int(ak.max(ak.num(self.cells)))
        return ak.to_numpy(ak.fill_none(ak.pad_none(self.cells, width, clip=True), fill))

    def to_json(self) -> dict[str, Any]:
        return {"cells": [list(c) for c in self._key]}

    @classmethod
    def from_json(cls, config: PointConfiguration, data: dict[str, Any]) -> Subdivision:
        try:
            cells = data["cells"]
        except (KeyError, TypeError) as err:
            msg = "subdivision JSON needs a 'cells' list"
            raise InputError(msg) from err
        return cls(config, cells)


def trivial_subdivision(config: PointConfiguration) -> Subdivision:
    return Subdivision(config, [range(config.npoints)])


def regular_subdivision(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
) -> Subdivision:
    """
    The regular subdivision ``A^ω``: projections of the lower facets of the
    points lifted by ``ω``.

    The configuration is first written in ``d`` coordinates (for a
    hypersimplex, the last coordinate is dropped); cells are reported in the
    configuration's labels.
    """
    heights = coerce_heights(omega)
    if len(heights) != config.npoints:
        msg = f"{len(heights)} heights for {config.npoints} points"
        raise InputError(msg)
    config.require_spanning()
    lifted = [(*p, h) for p, h in zip(config.full_dimensional_points, heights)]
    return Subdivision(config, lower_facets(lifted))


def spread(subdivision: Subdivision) -> int:
    return subdivision.spread


def dual_graph(subdivision: Subdivision, check: bool = True) -> nx.Graph:
    """
    Dual graph: one node per maximal cell, one edge per shared facet.

    Nodes carry the attributes ``cell`` and ``size``; edges carry ``face``,
    the point indices of the shared codimension-1 face.

    Raises:
        InvariantViolation: with ``check``, if the graph is not connected.
    """
    config = subdivision.config
    d = config.dim
    graph = nx.Graph()
    for i, cell in enumerate(subdivision.key):
        graph.add_node(i, cell=cell, size=len(cell))
    for (i, a), (j, b) in itertools.combinations(enumerate(subdivision.key), 2):
        common = sorted(set(a) & set(b))
        if len(common) < d:
            continue
        if affine_dim([config.points[p] for p in common]) == d - 1:
            graph.add_edge(i, j, face=tuple(common))
    if check and not nx.is_connected(graph):
        msg = f"dual graph of a subdivision with {len(subdivision)} cells is not connected"
        raise InvariantViolation(msg)
    return graph


def is_split(subdivision: Subdivision) -> bool:
    return subdivision.spread == 2


def is_coarsest_by_complete_dual(subdivision: Subdivision) -> bool:
    """
    Sufficient test for coarseness: the dual graph is complete (and there is
    more than one cell). ``False`` means "unknown"; use
    :func:`secfan.is_coarsest` for the definitive answer.
    """
    s = subdivision.spread
    if s < 2:
        return False
    return dual_graph(subdivision, check=False).number_of_edges() == s * (s - 1) // 2


def coarsening_map(fine: Subdivision, coarse: Subdivision) -> list[int]:
    """
    For each cell of ``fine``, the index of the cell of ``coarse`` containing it.

    Raises:
        NotNestedError: if some fine cell lies in no coarse cell.
    """
    coarse_sets = [set(c) for c in coarse.key]
    out = []
    for cell in fine.key:
        owners = [j for j, c in enumerate(coarse_sets) if c.issuperset(cell)]
        if not owners:
            msg = f"cell {cell} is not contained in any cell of the coarser subdivision"
            raise NotNestedError(msg)
        out.append(owners[0])
    return out


def coarsening_is_contraction(fine: Subdivision, coarse: Subdivision) -> bool:
    """
    Checks that the dual graph of ``coarse`` arises from that of ``fine`` by
    contracting edges: the cells of ``fine`` inside one coarse cell induce a
    connected subgraph, and adjacency of coarse cells is exactly the image of
    adjacency of fine cells.
    """
    phi = coarsening_map(fine, coarse)
    g_fine = dual_graph(fine, check=False)
    g_coarse = dual_graph(coarse, check=False)
    for j in range(coarse.spread):
        fiber = [i for i, k in enumerate(phi) if k == j]
        if not fiber or not nx.is_connected(g_fine.subgraph(fiber)):
            return False
    image = {frozenset((phi[u], phi[v])) for u, v in g_fine.edges if phi[u] != phi[v]}
    return image == {frozenset(e) for e in g_coarse.edges}


def is_valid_subdivision(subdivision: Subdivision) -> bool:
    """
    Cells are full-dimensional, none contains another, and the volumes add up
    to the volume of the configuration.
    """
    config = subdivision.config
    vols = subdivision.cell_volumes
    if any(v == 0 for v in vols):
        return False
    sets = [set(c) for c in subdivision.key]
    if any(a < b for a, b in itertools.permutations(sets, 2)):
        return False
    return sum(vols) == config.total_volume


def common_refinement(first: Subdivision, second: Subdivision) -> Subdivision:
    """
    Cells are the full-dimensional pairwise intersections of cells.

    Raises:
        InputError: if the intersections do not form a subdivision on the
            given points (their volumes fall short of the total).
    """
    config = first.config
    if config.points != second.config.points:
        msg = "cannot refine subdivisions of different configurations"
        raise InputError(msg)
    d = config.dim
    cells = set()
    for a, b in itertools.product(first.key, second.key):
        common = tuple(sorted(set(a) & set(b)))
        if len(common) > d and affine_dim([config.points[p] for p in common]) == d:
            cells.add(common)
    maximal = [c for c in cells if not any(set(c) < set(o) for o in cells)]
    refined = Subdivision(config, maximal)
    if sum(refined.cell_volumes) != config.total_volume:
        msg = "the common refinement is not a subdivision of the configuration's points"
        raise InputError(msg)
    return refined


def is_coherent_sum(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
    parts: Sequence[HeightFunction | Iterable[RationalLike]],
) -> bool:
    """
    True if ``ω = Σ parts`` and ``A^ω`` is the common refinement of the
    subdivisions ``A^part``.

    Raises:
        InputError: if the parts do not sum to ``ω``.
    """
    total = coerce_heights(omega)
    heights = [coerce_heights(p) for p in parts]
    if not heights or reduce(lambda x, y: x + y, heights) != total:
        msg = "the parts of a decomposition must sum to ω"
        raise InputError(msg)
    try:
        refined = reduce(
            common_refinement, (regular_subdivision(config, h) for h in heights)
        )
    except InputError:
        return False
    return refined == regular_subdivision(config, total)


def is_coherent_decomposition(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
    alpha: HeightFunction | Iterable[RationalLike],
    beta: HeightFunction | Iterable[RationalLike],
) -> bool:
    return is_coherent_sum(config, omega, [alpha, beta])


def is_matroidal_cell(cell_points: Sequence[Sequence[int]]) -> bool:
    """Every edge direction of the cell is ``±(e_i - e_j)``."""
    pts = [tuple(int(x) for x in p) for p in cell_points]
    for i, j in polytope_edges(pts):
        diff = sorted(a - b for a, b in zip(pts[i], pts[j]) if a != b)
        if diff != [-1, 1]:
            return False
    return True


def all_cells_matroidal(subdivision: Subdivision) -> bool:
    pts = subdivision.config.points
    return all(is_matroidal_cell([pts[i] for i in c]) for c in subdivision.key)


def subdivision_edges(subdivision: Subdivision) -> set[tuple[int, int]]:
    """Union of the edges of all maximal cells, in configuration labels."""
    pts = subdivision.config.points
    out = set()
    for cell in subdivision.key:
        for i, j in polytope_edges([pts[p] for p in cell]):
            out.add((cell[i], cell[j]))
    return out


def _hypersimplex_config(spec: HypersimplexSpec | tuple[int, int]) -> tuple[HypersimplexSpec, PointConfiguration]:
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    return s, vertices(s)


def is_tropical_pluecker(
    spec: HypersimplexSpec | tuple[int, int],
    omega: HeightFunction | Iterable[RationalLike],
    check: bool = True,
) -> bool:
    """
    True if the edge graph of ``Δ(k, n)^ω`` is that of ``Δ(k, n)``: the
    subdivision introduces no edge that is not an edge of the hypersimplex.

    With ``check``, the answer is compared against the all-cells-matroidal
    criterion.
    """
    s, config = _hypersimplex_config(spec)
    sub = regular_subdivision(config, omega)
    result = subdivision_edges(sub) == set(hypersimplex_edges(s))
    if check and result != all_cells_matroidal(sub):
        msg = "edge-graph and matroidal-cell criteria disagree on Dressian membership"
        raise InvariantViolation(msg)
    return result


def satisfies_three_term_pluecker(
    spec: HypersimplexSpec | tuple[int, int],
    omega: HeightFunction | Iterable[RationalLike],
) -> bool:
    """
    The three-term tropical Plücker relations: for every ``(k-2)``-set ``S``
    and ``a < b < c < d`` outside ``S``, the minimum of
    ``ω(Sab) + ω(Scd)``, ``ω(Sac) + ω(Sbd)``, ``ω(Sad) + ω(Sbc)`` is attained
    at least twice.
    """
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    heights = coerce_heights(omega)
    if len(heights) != s.npoints:
        msg = f"{len(heights)} heights for the {s.npoints} vertices of Δ({s.k},{s.n})"
        raise InputError(msg)

    def w(base: tuple[int, ...], x: int, y: int) -> Fraction:
        return heights[vertex_index(s, (*base, x, y))]

    for base in itertools.combinations(range(s.n), s.k - 2):
        rest = [i for i in range(s.n) if i not in base]
        for a, b, c, d in itertools.combinations(rest, 4):
            terms = sorted(
                (w(base, a, b) + w(base, c, d), w(base, a, c) + w(base, b, d), w(base, a, d) + w(base, b, c))
            )
            if terms[0] != terms[1]:
                return False
    return True


class MultisplitResult(NamedTuple):
    is_multisplit: bool
    ell: int


def is_multisplit(subdivision: Subdivision) -> MultisplitResult:
    """
    ``(True, ℓ)`` when the subdivision has ``ℓ >= 2`` cells and every ``j`` of
    them meet in a common face of codimension ``j - 1``; its tight span is then
    an ``(ℓ-1)``-simplex.
    """
    config = subdivision.config
    d = config.dim
    ell = subdivision.spread
    if ell < 2 or ell > d + 1:
        return MultisplitResult(False, ell)
    cells = [set(c) for c in subdivision.key]
    for j in range(2, ell + 1):
        for group in itertools.combinations(cells, j):
            common = set.intersection(*group)
            if affine_dim([config.points[p] for p in common]) != d - (j - 1):
                return MultisplitResult(False, ell)
    return MultisplitResult(True, ell)


class SubdivisionReport(NamedTuple):
    spread: int
    cell_sizes: list[int]
    cell_volumes: list[int]
    dual_edges: int
    dual_complete: bool
    split: bool
    multisplit: bool
    matroidal: Optional[bool]


def describe(subdivision: Subdivision) -> SubdivisionReport:
    """Summary of the predicates implemented in this module."""
    graph = dual_graph(subdivision)
    s = subdivision.spread
    hyper = subdivision.config.hypersimplex is not None
    return SubdivisionReport(
        spread=s,
        cell_sizes=[int(x) for x in subdivision.cell_sizes],
        cell_volumes=list(subdivision.cell_volumes),
        dual_edges=graph.number_of_edges(),
        dual_complete=s > 1 and graph.number_of_edges() == s * (s - 1) // 2,
        split=is_split(subdivision),
        multisplit=is_multisplit(subdivision).is_multisplit,
        matroidal=all_cells_matroidal(subdivision) if hyper else None,
    )


def label_cells(subdivision: Subdivision) -> list[list[str]]:
    """Cells written with 0/1 vertex labels (hypersimplices only)."""
    hs = subdivision.config.hypersimplex
    if hs is None:
        return [[str(i) for i in c] for c in subdivision.key]
    subsets = vertex_subsets(hs)
    return [
        ["".join("1" if x in subsets[i] else "0" for x in range(hs[1])) for i in c]
        for c in subdivision.key
    ]


__all__ = [
    "MultisplitResult",
    "Subdivision",
    "SubdivisionReport",
    "all_cells_matroidal",
    "coarsening_is_contraction",
    "coarsening_map",
    "common_refinement",
    "describe",
    "dual_graph",
    "is_coarsest_by_complete_dual",
    "is_coherent_decomposition",
    "is_coherent_sum",
    "is_matroidal_cell",
    "is_multisplit",
    "is_split",
    "is_tropical_pluecker",
    "is_valid_subdivision",
    "label_cells",
    "regular_subdivision",
    "satisfies_three_term_pluecker",
    "spread",
    "subdivision_edges",
    "trivial_subdivision",
]
