# BSD 3-Clause License; see LICENSE

"""
Symmetry groups of hypersimplices acting on vertex labels.

A group is stored as a :class:`VertexGroup`: a dense ``(|G|, N)`` integer array
whose row ``g`` maps vertex label ``i`` to ``perm[g, i]``. Groups are small
(at most ``2 * 7!`` elements here), so every canonical form is the honest
lexicographic minimum over all elements.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import awkward as ak
import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from ._errors import InputError
from ._exactgeom import normalize_ray, reduce_modulo
from ._hypersimplex import HypersimplexSpec, vertex_subsets
from ._typing import Cell, QVector, RationalLike

logger = logging.getLogger(__name__)

_KEY_LIMIT = 2**62


@dataclass(frozen=True)
class GroupSpec:
    """
    Generators of a group acting on the coordinates ``0..n-1``.

    Attributes:
        n: Number of coordinates.
        generators: Coordinate permutations.
        complement: Also adjoin the 0/1 swap ``x -> 1 - x`` (needs ``n = 2k``).
    """

    n: int
    generators: tuple[Permutation, ...] = ()
    complement: bool = False

    def elements(self) -> list[Permutation]:
        gens = list(self.generators) or [Permutation(list(range(self.n)))]
        group = PermutationGroup([Permutation(g.array_form, size=self.n) for g in gens])
        return sorted(group.generate(), key=lambda g: g.array_form)


def symmetric_group(n: int, complement: bool = False) -> GroupSpec:
    return GroupSpec(n, tuple(SymmetricGroup(n).generators), complement)


def trivial_group(n: int) -> GroupSpec:
    return GroupSpec(n, ())


def induced_vertex_permutation(
    g: Permutation,
    spec: HypersimplexSpec | tuple[int, int],
    complement: bool = False,
) -> tuple[int, ...]:
    """
    The permutation of vertex labels induced by the coordinate permutation ``g``,
    optionally followed by the 0/1 swap.
    """
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    if complement and 2 * s.k != s.n:
        msg = f"the complement involution maps Δ({s.k},{s.n}) to Δ({s.n - s.k},{s.n})"
        raise InputError(msg)
    subsets = vertex_subsets(s)
    index = {sub: i for i, sub in enumerate(subsets)}
    image = g.array_form + list(range(len(g.array_form), s.n))
    out = []
    for sub in subsets:
        moved = {image[i] for i in sub}
        if complement:
            moved = set(range(s.n)) - moved
        out.append(index[tuple(sorted(moved))])
    return tuple(out)


@dataclass(frozen=True, eq=False)
class VertexGroup:
    """
    A permutation group acting on ``N`` labels, stored as a dense array.

    ``perms[g, i]`` is the image of label ``i`` under element ``g``;
    ``perms[0]`` is the identity.
    """

    perms: np.ndarray

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    @property
    def degree(self) -> int:
        return int(self.perms.shape[1])

    @property
    def inverse_perms(self) -> np.ndarray:
        return np.argsort(self.perms, axis=1)

    @classmethod
    def trivial(cls, npoints: int) -> VertexGroup:
        return cls(np.arange(npoints, dtype=np.int64)[None, :])

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> VertexGroup:
        # sorted rows put the identity first
        arr = np.unique(np.array(list(rows), dtype=np.int64), axis=0)
        identity = np.arange(arr.shape[1], dtype=np.int64)
        if not (arr[0] == identity).all():
            arr = np.vstack([identity, arr])
        return cls(arr)


def vertex_group(
    spec: HypersimplexSpec | tuple[int, int], group: GroupSpec
) -> VertexGroup:
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    rows = [induced_vertex_permutation(g, s) for g in group.elements()]
    if group.complement:
        rows += [induced_vertex_permutation(g, s, complement=True) for g in group.elements()]
    logger.info("group of order %d acting on %d vertices of Δ(%d,%d)", len(rows), s.npoints, s.k, s.n)
    return VertexGroup.from_rows(rows)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_group(text: str, spec: HypersimplexSpec | tuple[int, int]) -> GroupSpec:
    """
    Parses a group description.

    Args:
        text: ``"sym"``, ``"sym_x2"`` (adds the complement involution, needs
            ``n = 2k``), ``"trivial"``, or comma-separated generators in cycle
            notation on the points ``1..n``, e.g. ``"(1 2),(1 2 3 4 5 6)"``.
        spec: The hypersimplex acted upon.
    """
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    word = text.strip().lower()
    if word in ("sym", "s"):
        return symmetric_group(s.n)
    if word in ("sym_x2", "symx2"):
        if 2 * s.k != s.n:
            msg = f"sym_x2 needs n = 2k, got Δ({s.k},{s.n})"
            raise InputError(msg)
        return symmetric_group(s.n, complement=True)
    if word in ("trivial", "none", "1"):
        return trivial_group(s.n)

    generators = []
    for chunk in text.split(","):
        cycles = _CYCLE.findall(chunk)
        if not cycles and chunk.strip():
            msg = f"cannot parse generator {chunk.strip()!r}; expected cycles like (1 2 3)"
            raise InputError(msg)
        perm = Permutation(list(range(s.n)))
        for cycle in cycles:
            try:
                points = [int(x) - 1 for x in cycle.replace(",", " ").split()]
            except ValueError as err:
                msg = f"cannot parse cycle ({cycle})"
                raise InputError(msg) from err
            if any(not 0 <= p < s.n for p in points) or len(set(points)) != len(points):
                msg = f"cycle ({cycle}) is not a cycle on 1..{s.n}"
                raise InputError(msg)
            if len(points) > 1:
                perm = perm * Permutation([points], size=s.n)
        generators.append(perm)
    return GroupSpec(s.n, tuple(generators))


def default_group(spec: HypersimplexSpec | tuple[int, int]) -> GroupSpec:
    """``Sym(n)``, extended by the complement involution when ``n = 2k``."""
    s = spec if isinstance(spec, HypersimplexSpec) else HypersimplexSpec(*spec)
    return symmetric_group(s.n, complement=2 * s.k == s.n)


GroupLike = Union[VertexGroup, None]


def _group(group: GroupLike, npoints: int) -> VertexGroup:
    if group is None:
        return VertexGroup.trivial(npoints)
    if group.degree != npoints:
        msg = f"group acts on {group.degree} labels, expected {npoints}"
        raise InputError(msg)
    return group


def act_on_cells(perm: Sequence[int], cells: Iterable[Iterable[int]]) -> tuple[Cell, ...]:
    return tuple(sorted(tuple(sorted(int(perm[i]) for i in c)) for c in cells))


def act_on_vector(perm: Sequence[int], v: Sequence[RationalLike]) -> tuple:
    """``(g·v)[g(i)] = v[i]``."""
    out: list = [None] * len(v)
    for i, x in enumerate(v):
        out[int(perm[i])] = x
    return tuple(out)


def _images(cells: Sequence[Cell], group: VertexGroup) -> tuple[np.ndarray, int]:
    """
    All group images of a cell list as a ``(|G|, s, L)`` array.

    Cells are padded with the sentinel ``N`` before relabeling, sorted within
    each cell (the sentinel sorts last) and then the sentinel is replaced by
    ``-1`` so that padded rows compare like shorter Python tuples.
    """
    n = group.degree
    arr = ak.Array([list(c) for c in cells])
    width = int(ak.max(ak.num(arr))) if len(arr) else 0
    padded = ak.to_numpy(ak.fill_none(ak.pad_none(arr, width, clip=True), n)).astype(np.int64)
    ext = np.hstack([group.perms, np.full((group.order, 1), n, dtype=np.int64)])
    images = np.sort(ext[:, padded], axis=2)
    images[images == n] = -1
    return images, width


def _keys(images: np.ndarray, n: int, width: int) -> Optional[np.ndarray]:
    base = n + 1
    if base**width >= _KEY_LIMIT:
        return None
    weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    keys = ((images + 1) * weights).sum(axis=2)
    return np.sort(keys, axis=1)


def _decode(image: np.ndarray) -> tuple[Cell, ...]:
    return tuple(sorted(tuple(int(x) for x in row if x >= 0) for row in image))


def canonical_subdivision(
    cells: Iterable[Iterable[int]], group: GroupLike = None
) -> tuple[Cell, ...]:
    """
    The lexicographically smallest image of a sorted cell list under ``group``.
    """
    base = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in cells))
    if not base:
        return base
    npoints = group.degree if group is not None else max(max(c) for c in base) + 1
    g = _group(group, npoints)
    if g.order == 1:
        return base
    images, width = _images(base, g)
    keys = _keys(images, g.degree, width)
    if keys is None:
        return min(act_on_cells(row, base) for row in g.perms)
    best = int(np.lexsort(keys.T[::-1])[0])
    return _decode(images[best])


def subdivision_orbit(
    cells: Iterable[Iterable[int]], group: GroupLike = None
) -> list[tuple[Cell, ...]]:
    """The distinct images of a cell list, sorted."""
    base = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in cells))
    if group is None or not base:
        return [base]
    return sorted({act_on_cells(row, base) for row in group.perms})


def orbit_size(x: Iterable[Iterable[int]] | Sequence[RationalLike], group: GroupLike = None) -> int:
    """
    Size of the orbit of a cell list or of a vector under ``group``.
    """
    items = list(x)
    if group is None or not items:
        return 1
    if isinstance(items[0], Iterable) and not isinstance(items[0], (str, bytes)):
        base = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in items))
        images, width = _images(base, group)
        keys = _keys(images, group.degree, width)
        if keys is None:
            return len(subdivision_orbit(base, group))
        return int(np.unique(keys, axis=0).shape[0])
    vec = np.array(items, dtype=object)
    return len({tuple(vec[row]) for row in group.inverse_perms})


def canonical_vector(
    v: Sequence[RationalLike],
    group: GroupLike = None,
    lineality: Optional[Sequence[QVector]] = None,
) -> QVector:
    """
    Orbit-minimal representative of a vector.

    With ``lineality`` the vector is treated as a ray modulo that (group
    invariant) subspace: every image is reduced modulo the lineality basis and
    made primitive before the lexicographic minimum is taken.
    """
    vec = np.array([Fraction(x) for x in v], dtype=object)
    g = _group(group, len(vec))
    best: Optional[QVector] = None
    for row in g.inverse_perms:
        img: QVector = tuple(vec[row])
        if lineality is not None:
            img = normalize_ray(reduce_modulo(img, lineality))
        if best is None or img < best:
            best = img
    assert best is not None
    return best


__all__ = [
    "GroupSpec",
    "VertexGroup",
    "act_on_cells",
    "act_on_vector",
    "canonical_subdivision",
    "canonical_vector",
    "default_group",
    "induced_vertex_permutation",
    "orbit_size",
    "parse_group",
    "subdivision_orbit",
    "symmetric_group",
    "trivial_group",
    "vertex_group",
]
