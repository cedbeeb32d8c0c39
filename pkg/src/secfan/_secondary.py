# BSD 3-Clause License; see LICENSE

"""
Secondary cones, their rays, regularity of triangulations and bistellar flips.

The secondary cone of a subdivision ``S`` is the closure of the set of
liftings inducing ``S``. Its lineality space is the ``(d+1)``-dimensional
space of affine functions restricted to the points; rays are reported modulo
that space (see :func:`secfan.dd_rays`).
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from ._configuration import HeightFunction, PointConfiguration, coerce_heights
from ._errors import (
    InputError,
    InvariantViolation,
    NotRegularError,
    TrivialSubdivisionError,
)
from ._exactgeom import (
    HCone,
    VCone,
    dd_rays,
    dot,
    independent_rows,
    inverse,
    nullspace,
    reduce_hcone,
    strict_interior_point,
)
from ._subdivide import (
    Subdivision,
    coarsening_is_contraction,
    dual_graph,
    regular_subdivision,
)
from ._typing import Cell, QVector, RationalLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SecondaryCone:
    """
    The closed secondary cone of ``subdivision`` as an H-description in
    ``R^N`` (one coordinate per point).
    """

    hcone: HCone
    subdivision: Subdivision

    @cached_property
    def vcone(self) -> VCone:
        return dd_rays(self.hcone)

    @property
    def dim(self) -> int:
        return self.vcone.dim

    @property
    def lineality_dim(self) -> int:
        return len(self.vcone.lineality)

    @property
    def rays(self) -> tuple[QVector, ...]:
        return self.vcone.rays

    def contains(self, omega: HeightFunction | Iterable[RationalLike]) -> bool:
        return self.hcone.contains(coerce_heights(omega).values)


def _unit_minus(npoints: int, q: int, basis: Sequence[int], mu: Sequence[Fraction]) -> QVector:
    """``e_q - Σ μ_b e_b``: the height of ``q`` above the affine interpolation on ``basis``."""
    out = [Fraction(0)] * npoints
    out[q] = Fraction(1)
    for b, m in zip(basis, mu):
        out[b] -= m
    return tuple(out)


class _AffineFrame(NamedTuple):
    basis: list[int]
    inv: list[list[Fraction]]


def _frame(config: PointConfiguration, cell: Cell) -> _AffineFrame:
    """An affine basis of a full-dimensional cell and the inverse of its matrix."""
    pts = config.homogenized
    d = config.dim
    chosen = independent_rows([pts[i] for i in cell])
    if len(chosen) != d + 1:
        msg = f"cell {cell} is not full-dimensional"
        raise InputError(msg)
    basis = [cell[i] for i in chosen]
    # columns are the basis points, so inv · p' gives the barycentric weights of p
    matrix = [[pts[b][r] for b in basis] for r in range(d + 1)]
    return _AffineFrame(basis, inverse(matrix))


def _weights(frame: _AffineFrame, point: Sequence[int]) -> list[Fraction]:
    return [dot(row, point) for row in frame.inv]


def _cell_equations(config: PointConfiguration, cell: Cell, frame: _AffineFrame) -> list[QVector]:
    pts = config.homogenized
    basis = set(frame.basis)
    return [
        _unit_minus(config.npoints, q, frame.basis, _weights(frame, pts[q]))
        for q in cell
        if q not in basis
    ]


def _cells_cone(config: PointConfiguration, subdivision: Subdivision) -> HCone:
    pts = config.homogenized
    ineqs: list[QVector] = []
    eqs: list[QVector] = []
    for cell in subdivision.key:
        frame = _frame(config, cell)
        inside = set(cell)
        eqs.extend(_cell_equations(config, cell, frame))
        for q in range(config.npoints):
            if q not in inside:
                ineqs.append(
                    _unit_minus(config.npoints, q, frame.basis, _weights(frame, pts[q]))
                )
    return HCone(tuple(ineqs), tuple(eqs), config.npoints)


def _walls_cone(config: PointConfiguration, subdivision: Subdivision) -> HCone:
    pts = config.homogenized
    frames = [_frame(config, cell) for cell in subdivision.key]
    eqs: list[QVector] = []
    for cell, frame in zip(subdivision.key, frames):
        eqs.extend(_cell_equations(config, cell, frame))
    ineqs: list[QVector] = []
    for i, j in dual_graph(subdivision, check=False).edges:
        # one point of each side off the wall is enough: ω is affine on both cells
        for here, there in ((i, j), (j, i)):
            q = min(set(subdivision.key[there]) - set(subdivision.key[here]))
            frame = frames[here]
            ineqs.append(_unit_minus(config.npoints, q, frame.basis, _weights(frame, pts[q])))
    return HCone(tuple(ineqs), tuple(eqs), config.npoints)


def secondary_cone(
    config: PointConfiguration,
    subdivision: Subdivision,
    method: str = "cells",
    reduce: bool = True,
) -> SecondaryCone:
    """
    H-description of the secondary cone of a subdivision.

    Args:
        config: The configuration.
        subdivision: A subdivision of ``config``.
        method: ``"cells"`` compares the affine function of every cell with
            every point outside it; ``"walls"`` only compares adjacent cells
            across their common facet. Both describe the same cone.
        reduce: Replace the description by its irredundant form (facets and a
            reduced basis of equations).

    Raises:
        InputError: if a cell is not full-dimensional or ``method`` is unknown.
    """
    if subdivision.config.points != config.points:
        msg = "the subdivision belongs to a different configuration"
        raise InputError(msg)
    config.require_spanning()
    if method == "cells":
        cone = _cells_cone(config, subdivision)
    elif method == "walls":
        cone = _walls_cone(config, subdivision)
    else:
        msg = f"unknown secondary cone method {method!r}; use 'cells' or 'walls'"
        raise InputError(msg)
    if reduce:
        cone = reduce_hcone(cone)
    logger.debug(
        "secondary cone of a subdivision with %d cells: %d inequalities, %d equations",
        subdivision.spread,
        len(cone.inequalities),
        len(cone.equations),
    )
    return SecondaryCone(cone, subdivision)


def _check_lineality(config: PointConfiguration, cone: SecondaryCone) -> None:
    if cone.lineality_dim != config.dim + 1:
        msg = (
            f"secondary cone has a {cone.lineality_dim}-dimensional lineality space, "
            f"expected {config.dim + 1}"
        )
        raise InvariantViolation(msg)


def is_coarsest(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
    check: bool = True,
) -> bool:
    """
    True if ``A^ω`` is a coarsest proper subdivision, that is, its secondary
    cone is a ray modulo the lineality space.

    Raises:
        TrivialSubdivisionError: if ``A^ω`` is the trivial subdivision.
    """
    sub = regular_subdivision(config, omega)
    return is_coarsest_subdivision(config, sub, check=check)


def is_coarsest_subdivision(
    config: PointConfiguration, subdivision: Subdivision, check: bool = True
) -> bool:
    if subdivision.spread == 1:
        msg = "the trivial subdivision is not a coarsest subdivision"
        raise TrivialSubdivisionError(msg)
    cone = secondary_cone(config, subdivision)
    if check:
        _check_lineality(config, cone)
    return cone.dim - (config.dim + 1) == 1


def _require_regular(config: PointConfiguration, subdivision: Subdivision, cone: SecondaryCone) -> None:
    x = strict_interior_point(cone.hcone, cone.vcone)
    if x is None or regular_subdivision(config, x) != subdivision:
        msg = f"the subdivision with {subdivision.spread} cells is not regular"
        raise NotRegularError(msg)


class SecondaryRay(NamedTuple):
    ray: QVector
    subdivision: Subdivision


def secondary_rays(
    config: PointConfiguration,
    subdivision: Subdivision,
    check: bool = True,
) -> list[SecondaryRay]:
    """
    The rays of the secondary cone of a regular subdivision (usually a
    triangulation), each with the coarsest subdivision it induces.

    Raises:
        NotRegularError: if ``subdivision`` is not regular.
        InvariantViolation: with ``check``, if some ray's subdivision is not
            a coarsening of ``subdivision`` by dual edge contractions.
    """
    cone = secondary_cone(config, subdivision, method="walls")
    _require_regular(config, subdivision, cone)
    if check:
        _check_lineality(config, cone)
    out = []
    for ray in cone.rays:
        coarse = regular_subdivision(config, ray)
        if check and not coarsening_is_contraction(subdivision, coarse):
            msg = f"ray {ray} induces a subdivision that is not a contraction of the given one"
            raise InvariantViolation(msg)
        out.append(SecondaryRay(ray, coarse))
    return out


def is_regular_triangulation(
    config: PointConfiguration, triangulation: Subdivision, check: bool = False
) -> bool:
    """
    True if the triangulation is induced by some lifting: the wall
    inequalities have a strictly feasible point.

    With ``check``, the strict point found is lifted back and must reproduce
    the triangulation.
    """
    if not triangulation.is_triangulation:
        msg = "is_regular_triangulation expects a triangulation"
        raise InputError(msg)
    cone = secondary_cone(config, triangulation, method="walls", reduce=False)
    x = strict_interior_point(cone.hcone)
    if x is None:
        return False
    if check and regular_subdivision(config, x) != triangulation:
        msg = "a strictly feasible lifting does not induce the triangulation"
        raise InvariantViolation(msg)
    return True


def _circuit(config: PointConfiguration, support: Sequence[int], positive: int) -> tuple[Cell, Cell]:
    """
    Splits the unique affine dependence on ``support`` into ``(Z+, Z-)``,
    oriented so that ``positive`` is in ``Z+``.
    """
    pts = config.homogenized
    rows = [[pts[i][r] for i in support] for r in range(config.dim + 1)]
    basis = nullspace(rows, len(support))
    if len(basis) != 1:
        msg = f"points {tuple(support)} do not carry a unique affine dependence"
        raise InvariantViolation(msg)
    mu = basis[0]
    if mu[support.index(positive)] < 0:
        mu = tuple(-x for x in mu)
    plus = tuple(i for i, m in zip(support, mu) if m > 0)
    minus = tuple(i for i, m in zip(support, mu) if m < 0)
    return plus, minus


def flips(config: PointConfiguration, triangulation: Subdivision) -> list[Subdivision]:
    """
    All triangulations reached from ``triangulation`` by one bistellar flip.

    Every interior wall ``F = a ∩ b`` spans a circuit ``Z = (Z+, Z-)`` with both
    apexes in ``Z+``. The flip is possible when the simplices ``Z - {z}``,
    ``z ∈ Z+``, all have the same link ``L``; it replaces ``T+ * L`` by
    ``T- * L``.
    """
    cells = triangulation.key
    cell_sets = [frozenset(c) for c in cells]
    present = set(cell_sets)
    d = config.dim
    walls: dict[frozenset[int], list[int]] = defaultdict(list)
    for idx, cell in enumerate(cell_sets):
        for p in cell:
            walls[cell - {p}].append(idx)

    seen: set[tuple[Cell, Cell]] = set()
    out: dict[tuple[Cell, ...], Subdivision] = {}
    for wall, owners in walls.items():
        if len(owners) != 2 or len(wall) != d:
            continue
        a = min(cell_sets[owners[0]] - wall)
        b = min(cell_sets[owners[1]] - wall)
        plus, minus = _circuit(config, sorted(wall | {a, b}), a)
        if (plus, minus) in seen:
            continue
        seen.add((plus, minus))
        support = frozenset(plus) | frozenset(minus)

        link = None
        for z in plus:
            sigma = support - {z}
            here = frozenset(c - sigma for c in cell_sets if sigma <= c)
            if link is None:
                link = here
            elif here != link:
                link = None
                break
        if not link:
            continue
        removed = {(support - {z}) | rest for z in plus for rest in link}
        if not removed <= present:
            continue
        added = {(support - {z}) | rest for z in minus for rest in link}
        flipped = Subdivision(config, (present - removed) | added)
        out[flipped.key] = flipped
    return [out[k] for k in sorted(out)]


def gkz_vector(config: PointConfiguration, subdivision: Subdivision) -> tuple[int, ...]:
    """For each point, the total volume of the cells containing it."""
    out = [0] * config.npoints
    for cell, vol in zip(subdivision.key, subdivision.cell_volumes):
        for p in cell:
            out[p] += vol
    return tuple(out)


__all__ = [
    "SecondaryCone",
    "SecondaryRay",
    "flips",
    "gkz_vector",
    "is_coarsest",
    "is_coarsest_subdivision",
    "is_regular_triangulation",
    "secondary_cone",
    "secondary_rays",
]
