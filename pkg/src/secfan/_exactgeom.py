# BSD 3-Clause License; see LICENSE

"""
Exact polyhedral kernel.

All arithmetic is over :class:`fractions.Fraction` (or plain Python integers
where the scale is known), so every decision made here is exact. The main
entry point is :func:`dd_rays`, a double description implementation that turns
an H-description into the minimal V-description; everything else in this
module (facets, lower hulls, dimensions, volumes, edges) is built on top of it.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from ._errors import DegenerateInputError, InputError
from ._typing import Cell, QVector, RationalLike

logger = logging.getLogger(__name__)

_INT64_SAFE = 2**62


def as_fraction(x: RationalLike) -> Fraction:
    """
    Converts ``x`` to an exact rational.

    Floats are refused: they would smuggle binary rounding into an exact
    computation. Pass decimal strings instead.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (float, np.floating)):
        msg = f"floating-point value {x!r} is not accepted; pass an int, Fraction or decimal string"
        raise InputError(msg)
    try:
        return Fraction(x)  # type: ignore[arg-type]
    except (TypeError, ValueError, ZeroDivisionError) as err:
        msg = f"cannot interpret {x!r} as an exact rational"
        raise InputError(msg) from err


def qvector(values: Iterable[RationalLike]) -> QVector:
    return tuple(as_fraction(x) for x in values)


def dot(u: Sequence[Fraction | int], v: Sequence[Fraction | int]) -> Fraction:
    return Fraction(sum(a * b for a, b in zip(u, v)))


def affine_value(a: Sequence[Fraction | int], p: Sequence[Fraction | int]) -> Fraction:
    """Evaluates the affine form ``a`` (last entry is the offset) at ``p``."""
    return Fraction(sum(x * y for x, y in zip(a, p)) + a[-1])


def primitive(v: Sequence[Fraction | int]) -> tuple[int, ...]:
    """
    Returns the primitive integer vector positively proportional to ``v``.

    The zero vector is returned unchanged.
    """
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [x.numerator * (den // x.denominator) for x in fr]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def normalize_ray(v: Sequence[Fraction | int]) -> QVector:
    """Primitive integer representative of a ray; the direction is kept."""
    return tuple(Fraction(x) for x in primitive(v))


def normalize_line(v: Sequence[Fraction | int]) -> QVector:
    """Primitive integer representative of a line; first nonzero entry positive."""
    ints = primitive(v)
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = tuple(-x for x in ints)
    return tuple(Fraction(x) for x in ints)


def rref(
    rows: Iterable[Sequence[RationalLike]], ncols: Optional[int] = None
) -> tuple[list[list[Fraction]], list[int]]:
    """
    Reduced row echelon form.

    Returns:
        The nonzero rows of the reduced matrix and the list of pivot columns.
    """
    m = [[as_fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i, row in enumerate(m):
            if i != r and row[c] != 0:
                f = row[c]
                m[i] = [a - f * b for a, b in zip(row, m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Iterable[Sequence[RationalLike]], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Iterable[Sequence[RationalLike]], ncols: int) -> list[QVector]:
    """Basis of ``{x : row·x = 0 for every row}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def independent_rows(rows: Sequence[Sequence[RationalLike]]) -> list[int]:
    """Indices of the first maximal linearly independent subsequence of ``rows``."""
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for i, row in enumerate(rows):
        v = [as_fraction(x) for x in row]
        for p, e in echelon:
            if v[p] != 0:
                f = v[p] / e[p]
                v = [a - f * b for a, b in zip(v, e)]
        lead = next((j for j, x in enumerate(v) if x != 0), None)
        if lead is not None:
            echelon.append((lead, v))
            chosen.append(i)
    return chosen


def inverse(matrix: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [
        [as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        msg = "matrix is singular"
        raise InputError(msg)
    return [row[n:] for row in red]


def integer_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss elimination)."""
    m = [[int(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def reduce_modulo(v: Sequence[Fraction | int], lineality: Sequence[QVector]) -> QVector:
    """
    Canonical representative of ``v`` modulo the span of ``lineality``.

    ``lineality`` must be in (scaled) reduced row echelon form, as produced by
    :func:`dd_rays`; the result vanishes on every pivot column.
    """
    out = [Fraction(x) for x in v]
    for row in lineality:
        p = next(j for j, x in enumerate(row) if x != 0)
        if out[p] != 0:
            f = out[p] / row[p]
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


@dataclass(frozen=True)
class HCone:
    """
    A polyhedral cone given by ``inequalities`` (``v·x >= 0``) and
    ``equations`` (``v·x == 0``) in ``ambient_dim`` dimensions.

    When used to describe a polytope (see :func:`facet_description`), the last
    coordinate of every row is an offset and ``ambient_dim`` counts it.
    """

    inequalities: tuple[QVector, ...] = ()
    equations: tuple[QVector, ...] = ()
    ambient_dim: int = 0

    def __post_init__(self) -> None:
        for name in ("inequalities", "equations"):
            rows = tuple(qvector(r) for r in getattr(self, name))
            for row in rows:
                if len(row) != self.ambient_dim:
                    msg = f"{name} row of length {len(row)} in a cone of ambient dimension {self.ambient_dim}"
                    raise InputError(msg)
            object.__setattr__(self, name, rows)

    def contains(self, v: Sequence[RationalLike]) -> bool:
        x = qvector(v)
        return all(dot(a, x) >= 0 for a in self.inequalities) and all(
            dot(e, x) == 0 for e in self.equations
        )

    def intersect(self, other: HCone) -> HCone:
        if other.ambient_dim != self.ambient_dim:
            msg = f"cannot intersect cones of dimensions {self.ambient_dim} and {other.ambient_dim}"
            raise InputError(msg)
        return HCone(
            self.inequalities + other.inequalities,
            self.equations + other.equations,
            self.ambient_dim,
        )


@dataclass(frozen=True)
class VCone:
    """
    A polyhedral cone given by its extreme ``rays`` and a ``lineality`` basis.

    Rays are primitive integer vectors reduced modulo the lineality space;
    the lineality basis is in scaled reduced row echelon form.
    """

    rays: tuple[QVector, ...] = ()
    lineality: tuple[QVector, ...] = ()
    ambient_dim: int = 0

    @property
    def dim(self) -> int:
        return rank(self.rays + self.lineality, self.ambient_dim)

    @property
    def pointed(self) -> bool:
        return not self.lineality


def _as_object_matrix(rows: Sequence[Sequence[int]], ncols: int) -> np.ndarray:
    out = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        out[i, :] = [int(x) for x in row]
    return out


def _products(a: np.ndarray, bt: np.ndarray) -> np.ndarray:
    """Exact ``a @ bt`` on object arrays; uses int64 when that cannot overflow."""
    if a.size == 0 or bt.size == 0:
        return np.zeros((a.shape[0], bt.shape[1]), dtype=np.int64)
    amax = max(abs(x) for x in a.flat)
    bmax = max(abs(x) for x in bt.flat)
    if amax * bmax * a.shape[1] < _INT64_SAFE:
        return a.astype(np.int64) @ bt.astype(np.int64)
    return np.dot(a, bt)


def _pointed_extreme_rays(rows: list[tuple[int, ...]], r: int) -> list[tuple[int, ...]]:
    """
    Extreme rays of the pointed cone ``{y : row·y >= 0}`` in ``r`` dimensions.

    ``rows`` must have rank ``r``.
    """
    basis = independent_rows(rows)
    if len(basis) != r:
        msg = f"inequalities of rank {len(basis)} do not cut out a pointed cone in dimension {r}"
        raise InputError(msg)
    inv = inverse([rows[i] for i in basis])
    rays = _as_object_matrix([primitive(col) for col in zip(*inv)], r)
    zero = ~np.eye(r, dtype=bool)
    remaining = [i for i in range(len(rows)) if i not in set(basis)]
    b = _as_object_matrix(rows, r)

    while remaining:
        vals = _products(b[remaining], rays.T)
        nzeros = (vals == 0).sum(axis=1)
        pick = int(np.argmax(nzeros))
        s = vals[pick]
        del remaining[pick]

        pos = np.flatnonzero(s > 0)
        neg = np.flatnonzero(s < 0)
        if neg.size == 0:
            zero = np.hstack([zero, (s == 0)[:, None]])
            continue

        new_rays = []
        new_zero = []
        zint = zero.astype(np.int64)
        for p in pos:
            common = zero[neg] & zero[p]
            counts = common.sum(axis=1)
            cand = np.flatnonzero(counts >= r - 2)
            if cand.size == 0:
                continue
            cover = zint @ common[cand].astype(np.int64).T
            ncover = (cover == counts[cand]).sum(axis=0)
            for c in cand[ncover == 2]:
                q = neg[c]
                vec = rays[q] * int(s[p]) - rays[p] * int(s[q])
                g = math.gcd(*(int(x) for x in vec))
                new_rays.append([int(x) // g for x in vec])
                new_zero.append(common[c])

        keep = np.flatnonzero(s >= 0)
        col = (s == 0)[keep][:, None]
        zero = np.hstack([zero[keep], col])
        rays = rays[keep]
        if new_rays:
            zero = np.vstack(
                [zero, np.hstack([np.array(new_zero, dtype=bool), np.ones((len(new_rays), 1), dtype=bool)])]
            )
            rays = np.vstack([rays, _as_object_matrix(new_rays, r)])
        logger.debug(
            "double description: %d rows left, %d rays", len(remaining), len(rays)
        )

    return [tuple(int(x) for x in ray) for ray in rays]


def dd_rays(cone: HCone) -> VCone:
    """
    Minimal V-description of ``cone`` by the double description method.

    The lineality space is split off first and the remaining pointed cone is
    enumerated in integer coordinates of a complement. Rays are reduced
    modulo the lineality space, made primitive and sorted, so the output is a
    function of the cone alone (not of the order of its rows).

    Args:
        cone: The H-description.

    Returns:
        The V-description; an empty cone (``{0}``) has no rays and no lineality.
    """
    m = cone.ambient_dim
    ineqs = [primitive(a) for a in cone.inequalities if any(a)]
    eqs = [primitive(e) for e in cone.equations if any(e)]

    lin_red, _ = rref(ineqs + eqs, m)
    lineality_raw = nullspace(lin_red, m)
    lineality = tuple(normalize_line(row) for row in rref(lineality_raw, m)[0])

    complement = [primitive(w) for w in nullspace(eqs + [primitive(x) for x in lineality], m)]
    r = len(complement)
    rays: list[QVector] = []
    if r > 0:
        rows = []
        for a in ineqs:
            row = tuple(sum(x * y for x, y in zip(a, w)) for w in complement)
            if any(row):
                rows.append(primitive(row))
        for y in _pointed_extreme_rays(rows, r):
            x = [sum(c * w[j] for c, w in zip(y, complement)) for j in range(m)]
            rays.append(normalize_ray(reduce_modulo(x, lineality)))
    rays.sort()
    logger.debug(
        "dd_rays: ambient %d, %d inequalities -> %d rays, lineality %d",
        m,
        len(ineqs),
        len(rays),
        len(lineality),
    )
    return VCone(tuple(rays), lineality, m)


def hrep(vcone: VCone) -> HCone:
    """Irredundant H-description (facets and equations) of a V-described cone."""
    dual = dd_rays(HCone(vcone.rays, vcone.lineality, vcone.ambient_dim))
    return HCone(dual.rays, dual.lineality, vcone.ambient_dim)


def reduce_hcone(cone: HCone) -> HCone:
    """Removes redundant rows; the result is canonical for the cone."""
    return hrep(dd_rays(cone))


def cone_dim(cone: HCone | VCone) -> int:
    v = dd_rays(cone) if isinstance(cone, HCone) else cone
    return v.dim


def strict_interior_point(cone: HCone, vcone: Optional[VCone] = None) -> Optional[QVector]:
    """
    A point satisfying every inequality strictly and every equation exactly.

    The sum of the extreme rays is such a point whenever one exists: each
    inequality is nonnegative on all rays, and it is strict somewhere on the
    cone exactly when it is positive on some ray. Pass ``vcone`` if the
    V-description is already known.
    """
    v = dd_rays(cone) if vcone is None else vcone
    x = tuple(sum((r[j] for r in v.rays), Fraction(0)) for j in range(cone.ambient_dim))
    if all(dot(a, x) > 0 for a in cone.inequalities):
        return x
    return None


def contains(cone: HCone, v: Sequence[RationalLike]) -> bool:
    return cone.contains(v)


def qmatrix(points: Iterable[Sequence[RationalLike]]) -> list[QVector]:
    return [qvector(p) for p in points]


def affine_dim(points: Iterable[Sequence[RationalLike]]) -> int:
    """Dimension of the affine hull; ``-1`` for no points."""
    pts = qmatrix(points)
    if not pts:
        return -1
    p0 = pts[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]], len(p0))


def facet_description(points: Iterable[Sequence[RationalLike]]) -> HCone:
    """
    Irredundant affine description of the convex hull of ``points``.

    Each row ``a`` of the result encodes ``a[:-1]·x + a[-1] >= 0`` (or ``== 0``
    for equations). A single point gets equations only.
    """
    pts = qmatrix(points)
    if not pts:
        msg = "facet_description needs at least one point"
        raise InputError(msg)
    dim = len(pts[0]) + 1
    generators = [p + (Fraction(1),) for p in pts]
    h = hrep(VCone(tuple(generators), (), dim))
    facets = tuple(a for a in h.inequalities if any(dot(a, g) == 0 for g in generators))
    return HCone(facets, h.equations, dim)


def tight_sets(cone: HCone, points: Sequence[Sequence[RationalLike]]) -> list[Cell]:
    """For each inequality of an affine description, the indices of the points on it."""
    pts = qmatrix(points)
    return [
        tuple(i for i, p in enumerate(pts) if affine_value(a, p) == 0)
        for a in cone.inequalities
    ]


def lower_facets(lifted_points: Iterable[Sequence[RationalLike]]) -> list[Cell]:
    """
    Vertex index sets of the lower facets of a lifted point set.

    The last coordinate of every row is the height. Facets whose inner normal
    has a positive height coefficient (equivalently, a downward outer normal)
    are lower facets. If the heights are affine on the points, the single cell
    of all points is returned.

    Raises:
        DegenerateInputError: if the unlifted points are all equal.
    """
    pts = qmatrix(lifted_points)
    base = [p[:-1] for p in pts]
    base_dim = affine_dim(base)
    if base_dim < 1:
        msg = "cannot take lower facets of fewer than two distinct points"
        raise DegenerateInputError(msg)
    if affine_dim(pts) == base_dim:
        return [tuple(range(len(pts)))]
    hull = facet_description(pts)
    cells = [
        cell
        for a, cell in zip(hull.inequalities, tight_sets(hull, pts))
        if a[-2] > 0
    ]
    return sorted(cells)


@dataclass(frozen=True)
class AffineLattice:
    """
    The lattice of integer points in the affine hull of an integer point set.

    ``directions`` is the reduced row echelon basis of the hull's direction
    space. If that basis is integral, restricting to the pivot coordinates is
    a lattice isomorphism onto ``Z^dim``; otherwise volumes are computed from
    gcds of maximal minors.
    """

    directions: tuple[QVector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> AffineLattice:
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            return cls((), ())
        p0 = pts[0]
        red, pivots = rref([[a - b for a, b in zip(p, p0)] for p in pts[1:]], len(p0))
        return cls(tuple(tuple(row) for row in red), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @cached_property
    def integral(self) -> bool:
        return all(x.denominator == 1 for row in self.directions for x in row)

    def project(self, points: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
        """Pivot coordinates of ``points`` (integral lattice coordinates when :attr:`integral`)."""
        return [tuple(int(p[j]) for j in self.pivots) for p in points]

    def simplex_volume(self, vertices: Sequence[Sequence[int]]) -> int:
        """Normalized volume of a simplex with ``dim + 1`` vertices."""
        if len(vertices) != self.dim + 1:
            return 0
        v0 = vertices[0]
        edges = [[int(a) - int(b) for a, b in zip(v, v0)] for v in vertices[1:]]
        if self.integral:
            return abs(integer_det([[row[j] for j in self.pivots] for row in edges]))
        ncols = len(v0)
        return math.gcd(
            *(
                integer_det([[row[j] for j in cols] for row in edges])
                for cols in itertools.combinations(range(ncols), self.dim)
            )
        )


def pulling_triangulation(points: Sequence[Sequence[RationalLike]]) -> list[Cell]:
    """
    Pulling triangulation, pulling the lexicographically smallest point first.

    Only the vertices of the hull are used; the result is a sorted list of
    sorted index tuples.
    """
    pts = qmatrix(points)
    if not pts:
        return []
    return sorted(set(_pull(pts, tuple(range(len(pts))))))


def _pull(pts: list[QVector], idx: Cell) -> list[Cell]:
    sub = [pts[i] for i in idx]
    dim = affine_dim(sub)
    if len(idx) == dim + 1:
        return [tuple(sorted(idx))]
    apex = min(idx, key=lambda i: pts[i])
    hull = facet_description(sub)
    out = []
    for tight in tight_sets(hull, sub):
        face = tuple(idx[j] for j in tight)
        if apex in face:
            continue
        out.extend(tuple(sorted((*simplex, apex))) for simplex in _pull(pts, face))
    return out


def lattice_volume(
    points: Sequence[Sequence[int]], lattice: Optional[AffineLattice] = None
) -> int:
    """
    Normalized lattice volume of the convex hull of integer ``points``.

    Args:
        points: Integer points.
        lattice: The ambient affine lattice (for example, that of the whole
            configuration). Points spanning less than ``lattice.dim``
            dimensions have volume 0. Defaults to the lattice of the points'
            own affine hull.

    Returns:
        The volume in units of a unimodular simplex.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        return 0
    lat = AffineLattice.of(pts) if lattice is None else lattice
    if affine_dim(pts) < lat.dim:
        return 0
    return sum(
        lat.simplex_volume([pts[i] for i in simplex])
        for simplex in pulling_triangulation(pts)
    )


def polytope_edges(points: Sequence[Sequence[RationalLike]]) -> list[tuple[int, int]]:
    """
    The edges of the convex hull of ``points`` (assumed in convex position).

    ``{i, j}`` is an edge exactly when the intersection of all facets through
    both points contains no other point.
    """
    pts = qmatrix(points)
    n = len(pts)
    if n < 2:
        return []
    hull = facet_description(pts)
    tight = np.zeros((n, len(hull.inequalities)), dtype=bool)
    for f, cell in enumerate(tight_sets(hull, pts)):
        tight[list(cell), f] = True
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        common = tight[i] & tight[j]
        if int(tight[:, common].all(axis=1).sum()) == 2:
            edges.append((i, j))
    return edges


__all__ = [
    "AffineLattice",
    "HCone",
    "VCone",
    "affine_dim",
    "affine_value",
    "as_fraction",
    "cone_dim",
    "contains",
    "dd_rays",
    "dot",
    "facet_description",
    "hrep",
    "independent_rows",
    "integer_det",
    "inverse",
    "lattice_volume",
    "lower_facets",
    "normalize_line",
    "normalize_ray",
    "nullspace",
    "polytope_edges",
    "primitive",
    "pulling_triangulation",
    "qmatrix",
    "qvector",
    "rank",
    "reduce_hcone",
    "reduce_modulo",
    "rref",
    "strict_interior_point",
    "tight_sets",
]
