# BSD 3-Clause License; see LICENSE

"""
Envelopes ``E_ω(A) = {x : A'x >= -ω}`` and their bounded complexes (tight spans).

``A'`` is the homogenization of the configuration in ``d`` coordinates, so the
envelope lives in ``R^(d+1)`` and its recession cone ``{x : A'x >= 0}`` is
pointed. Vertices of the envelope are dual to the maximal cells of ``A^ω``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from ._configuration import HeightFunction, PointConfiguration, coerce_heights
from ._errors import InputError, InvariantViolation
from ._exactgeom import HCone, affine_dim, dd_rays, dot
from ._typing import Cell, QVector, RationalLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Envelope:
    """
    Vertices and recession rays of an envelope, with the rows tight at each.

    Attributes:
        vertices: Envelope vertices in ``R^(d+1)``.
        tight: For each vertex, the indices of the points whose inequality is
            tight there; this is the dual cell.
        rays: Extreme rays of the recession cone.
        ray_tight: For each ray, the indices of the rows vanishing on it.
        heights: The lifting the envelope was built from.
    """

    vertices: tuple[QVector, ...]
    tight: tuple[frozenset[int], ...]
    rays: tuple[QVector, ...]
    ray_tight: tuple[frozenset[int], ...]
    heights: HeightFunction

    def face_tight_set(self, vertex_ids: Iterable[int]) -> frozenset[int]:
        ids = list(vertex_ids)
        return frozenset.intersection(*(self.tight[v] for v in ids))

    def face_vertices(self, tight: frozenset[int]) -> frozenset[int]:
        return frozenset(v for v, t in enumerate(self.tight) if tight <= t)

    def is_bounded(self, tight: frozenset[int]) -> bool:
        return not any(tight <= t for t in self.ray_tight)


def envelope(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
) -> Envelope:
    """
    Computes the envelope by double description of its homogenization
    ``{(x, t) : A'x + ωt >= 0, t >= 0}``: rays with ``t > 0`` give vertices,
    rays with ``t = 0`` recession directions.
    """
    heights = coerce_heights(omega)
    if len(heights) != config.npoints:
        msg = f"{len(heights)} heights for {config.npoints} points"
        raise InputError(msg)
    config.require_spanning()
    rows = config.homogenized
    dim = len(rows[0])
    ineqs = [(*row, h) for row, h in zip(rows, heights)]
    ineqs.append((0,) * dim + (1,))
    cone = dd_rays(HCone(tuple(ineqs), (), dim + 1))
    if cone.lineality:
        msg = "envelope of a configuration that does not span its ambient space"
        raise InputError(msg)

    verts, tight, rays, ray_tight = [], [], [], []
    for r in cone.rays:
        t = r[-1]
        zero = frozenset(i for i, a in enumerate(ineqs[:-1]) if dot(a, r) == 0)
        if t > 0:
            verts.append(tuple(x / t for x in r[:-1]))
            tight.append(zero)
        else:
            rays.append(r[:-1])
            ray_tight.append(zero)
    order = sorted(range(len(verts)), key=lambda i: (sorted(tight[i]), verts[i]))
    logger.debug("envelope: %d vertices, %d recession rays", len(verts), len(rays))
    return Envelope(
        tuple(verts[i] for i in order),
        tuple(tight[i] for i in order),
        tuple(rays),
        tuple(ray_tight),
        heights,
    )


def dual_cell(env: Envelope, vertex: int) -> Cell:
    """Point indices whose inequality is tight at the given envelope vertex."""
    return tuple(sorted(env.tight[vertex]))


@dataclass(frozen=True)
class TightSpan:
    """
    The bounded faces of an envelope, up to dimension ``max_dim``.

    ``faces[j]`` lists the ``j``-dimensional bounded faces by their sets of
    envelope vertex indices.
    """

    envelope: Envelope
    faces: dict[int, tuple[frozenset[int], ...]]
    max_dim: Optional[int]

    @property
    def vertices(self) -> tuple[QVector, ...]:
        return self.envelope.vertices

    @property
    def dim(self) -> int:
        """Largest dimension of a bounded face found (within ``max_dim``)."""
        return max((j for j, fs in self.faces.items() if fs), default=-1)

    def f_vector(self) -> list[int]:
        return [len(self.faces.get(j, ())) for j in range(self.dim + 1)]

    def skeleton(self) -> nx.Graph:
        """1-skeleton; nodes carry ``coords`` and ``cell``, edges nothing."""
        graph = nx.Graph()
        for v, coords in enumerate(self.envelope.vertices):
            graph.add_node(v, coords=coords, cell=dual_cell(self.envelope, v))
        for edge in self.faces.get(1, ()):
            graph.add_edge(*sorted(edge))
        return graph

    def is_simplex(self) -> bool:
        """True when the whole tight span is a single simplex."""
        nv = len(self.envelope.vertices)
        top = self.faces.get(nv - 1, ())
        return len(top) == 1 and (self.max_dim is None or self.max_dim >= nv - 1)


def tight_span(
    config: PointConfiguration,
    omega: HeightFunction | Iterable[RationalLike],
    max_dim: Optional[int] = 3,
    check: bool = True,
) -> TightSpan:
    """
    The bounded complex of the envelope.

    Faces are built upwards from the vertices: a candidate face is the
    smallest face containing a known face and one more vertex; it is kept when
    it has the expected dimension and no recession ray lies in it.

    Args:
        config: The configuration.
        omega: The lifting.
        max_dim: Highest face dimension to compute; ``None`` for all.
        check: Verify that the 1-skeleton is connected.
    """
    env = envelope(config, omega)
    nv = len(env.vertices)
    faces: dict[int, tuple[frozenset[int], ...]] = {0: tuple(frozenset([v]) for v in range(nv))}
    top = nv - 1 if max_dim is None else min(max_dim, nv - 1)
    current = faces[0]
    for j in range(1, top + 1):
        found = set()
        for face in current:
            tight = env.face_tight_set(face)
            for v in range(nv):
                if v in face:
                    continue
                joint = tight & env.tight[v]
                members = env.face_vertices(joint)
                if members in found or not env.is_bounded(joint):
                    continue
                if affine_dim([env.vertices[u] for u in members]) == j:
                    found.add(members)
        if not found:
            break
        current = tuple(sorted(found, key=sorted))
        faces[j] = current
    span = TightSpan(env, faces, max_dim)
    if check and nv > 0 and not nx.is_connected(span.skeleton()):
        msg = "tight span is not connected"
        raise InvariantViolation(msg)
    return span


def tight_span_dimension(
    config: PointConfiguration, omega: HeightFunction | Iterable[RationalLike]
) -> int:
    """Dimension of the tight span; for ``Δ(2, n)`` and a metric ``D``, ``-D`` is in the Dressian iff this is at most 1."""
    return tight_span(config, omega, max_dim=None).dim


__all__ = [
    "Envelope",
    "TightSpan",
    "dual_cell",
    "envelope",
    "tight_span",
    "tight_span_dimension",
]
