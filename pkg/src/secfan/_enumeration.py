# BSD 3-Clause License; see LICENSE

"""
Enumeration of regular triangulations up to symmetry, and of the coarsest
regular subdivisions they determine.

The search is a breadth-first traversal of the flip graph on orbits: every
level expands all unexplored orbits in parallel (flips and canonical forms),
then the new canonical forms are merged in sorted order, so the result does
not depend on the number of workers.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import joblib
import numpy as np

from ._configuration import PointConfiguration
from ._errors import InputError, InvariantViolation, NotRegularError, ResourceLimitError
from ._exactgeom import normalize_line, rref
from ._hypersimplex import thrackle
from ._secondary import flips, is_regular_triangulation, secondary_rays
from ._subdivide import Subdivision, regular_subdivision
from ._symmetry import GroupLike, VertexGroup, canonical_subdivision, canonical_vector, orbit_size
from ._typing import Cell, QVector
from .io.jsonio import (
    CheckpointState,
    decode_vector,
    encode_vector,
    read_checkpoint,
    write_checkpoint,
)

logger = logging.getLogger(__name__)

Cells = tuple[Cell, ...]


@dataclass
class OrbitCatalog:
    """
    Orbit representatives of a set of subdivisions.

    Attributes:
        config: The configuration subdivided.
        representatives: One subdivision per orbit.
        orbit_sizes: Orbit size of each representative.
        rays: For catalogs of coarsest subdivisions, the canonical ray (modulo
            lineality) inducing each representative.
        nonregular_count: Number of nonregular triangulation orbits met.
        group_order: Order of the group the orbits are taken under.
        complete: False if the search stopped early.
    """

    config: PointConfiguration
    representatives: list[Subdivision]
    orbit_sizes: list[int]
    rays: Optional[list[QVector]] = None
    nonregular_count: int = 0
    group_order: int = 1
    complete: bool = True
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.orbit_sizes) != len(self.representatives):
            msg = "one orbit size per representative is required"
            raise InputError(msg)
        if self.rays is not None and len(self.rays) != len(self.representatives):
            msg = "one ray per representative is required"
            raise InputError(msg)

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)

    @property
    def total(self) -> int:
        """Number of subdivisions, counted with multiplicity of their orbits."""
        return sum(self.orbit_sizes)

    @property
    def spread_histogram(self) -> dict[int, int]:
        """Number of orbits of each spread."""
        return dict(sorted(Counter(s.spread for s in self.representatives).items()))

    @property
    def max_spread(self) -> int:
        return max((s.spread for s in self.representatives), default=0)

    def to_json(self) -> dict[str, Any]:
        entries = []
        for i, (rep, size) in enumerate(zip(self.representatives, self.orbit_sizes)):
            entry: dict[str, Any] = {"cells": [list(c) for c in rep.key], "spread": rep.spread, "orbit_size": size}
            if self.rays is not None:
                entry["ray"] = encode_vector(self.rays[i])
            entries.append(entry)
        return {
            "configuration": self.config.to_json(),
            "group_order": self.group_order,
            "orbits": self.orbit_count,
            "total": self.total,
            "nonregular_orbits": self.nonregular_count,
            "complete": self.complete,
            "spread_histogram": {str(k): v for k, v in self.spread_histogram.items()},
            "representatives": entries,
            **self.meta,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> OrbitCatalog:
        try:
            config = PointConfiguration.from_json(data["configuration"])
            entries = data["representatives"]
            reps = [Subdivision(config, e["cells"]) for e in entries]
            sizes = [int(e["orbit_size"]) for e in entries]
            rays = [decode_vector(e["ray"]) for e in entries] if entries and "ray" in entries[0] else None
            return cls(
                config,
                reps,
                sizes,
                rays,
                int(data.get("nonregular_orbits", 0)),
                int(data.get("group_order", 1)),
                bool(data.get("complete", True)),
            )
        except (KeyError, TypeError) as err:
            msg = f"malformed catalog JSON: missing or invalid {err}"
            raise InputError(msg) from err


def seed_triangulation(
    config: PointConfiguration, seed: int = 0, max_tries: int = 100
) -> Subdivision:
    """
    A regular triangulation to start the search from.

    For ``Δ(2, n)`` this is the subdivision induced by the negated thrackle
    metric; otherwise (or if that is not a triangulation) random integer
    liftings are drawn until one induces a triangulation.

    Raises:
        ResourceLimitError: if ``max_tries`` liftings were all degenerate.
    """
    hs = config.hypersimplex
    if hs is not None and hs[0] == 2 and hs[1] >= 4:
        tri = regular_subdivision(config, thrackle(hs[1]))
        if tri.is_triangulation:
            return tri
    rng = np.random.default_rng(seed)
    high = 4 * config.npoints**2
    for _ in range(max_tries):
        heights = [int(h) for h in rng.integers(0, high, size=config.npoints)]
        tri = regular_subdivision(config, heights)
        if tri.is_triangulation:
            return tri
    msg = f"no random lifting out of {max_tries} induced a triangulation"
    raise ResourceLimitError(msg)


def _canonical_flips(config: PointConfiguration, cells: Cells, group: VertexGroup) -> list[Cells]:
    neighbors = flips(config, Subdivision(config, cells))
    return sorted({canonical_subdivision(t.key, group) for t in neighbors})


def _is_regular(config: PointConfiguration, cells: Cells) -> bool:
    return is_regular_triangulation(config, Subdivision(config, cells))


def enumerate_regular_triangulations(
    config: PointConfiguration,
    group: GroupLike = None,
    *,
    seed: Optional[Subdivision] = None,
    threads: int = 1,
    checkpoint: Optional[str | Path] = None,
    checkpoint_interval: int = 1,
    max_expansions: Optional[int] = None,
    check: bool = True,
) -> OrbitCatalog:
    """
    All regular triangulations of ``config`` up to ``group``, by flips.

    Regular triangulations are connected by flips through regular
    triangulations, so nonregular ones are recorded but never expanded.

    Args:
        config: The configuration.
        group: Symmetry group acting on the point labels; ``None`` for trivial.
        seed: Starting triangulation (must be regular); the default comes from
            :func:`seed_triangulation`.
        threads: Number of joblib workers.
        checkpoint: JSON-lines file holding the search state; resumed from if
            it exists, rewritten every ``checkpoint_interval`` levels.
        max_expansions: Stop after expanding this many orbits; the catalog is
            then marked incomplete.
        check: Verify that the seed is regular and that orbit sizes add up.

    Raises:
        NotRegularError: if the seed is not a regular triangulation.
        InputError: if the checkpoint is corrupt or belongs to another search.
    """
    g = group if group is not None else VertexGroup.trivial(config.npoints)
    if checkpoint_interval < 1:
        msg = f"checkpoint interval must be at least 1, got {checkpoint_interval}"
        raise InputError(msg)

    if checkpoint is not None and Path(checkpoint).exists():
        state = read_checkpoint(checkpoint, config, g.order)
        logger.info("resuming from %s with %d regular orbits", checkpoint, len(state.regular))
    else:
        start = seed if seed is not None else seed_triangulation(config)
        if not start.is_triangulation or not is_regular_triangulation(config, start, check=check):
            msg = "the seed of the enumeration must be a regular triangulation"
            raise NotRegularError(msg)
        state = CheckpointState({canonical_subdivision(start.key, g): False}, set())

    expansions = 0
    level = 0
    frontier = sorted(k for k, done in state.regular.items() if not done)
    with joblib.Parallel(n_jobs=threads) as parallel:
        while frontier:
            if max_expansions is not None:
                if expansions >= max_expansions:
                    break
                frontier = frontier[: max_expansions - expansions]
            found = parallel(joblib.delayed(_canonical_flips)(config, cells, g) for cells in frontier)
            for cells in frontier:
                state.regular[cells] = True
            expansions += len(frontier)

            known = state.regular.keys() | state.nonregular
            fresh = sorted({c for batch in found for c in batch} - known)
            verdicts = parallel(joblib.delayed(_is_regular)(config, cells) for cells in fresh)
            for cells, regular in zip(fresh, verdicts):
                if regular:
                    state.regular[cells] = False
                else:
                    state.nonregular.add(cells)

            level += 1
            frontier = sorted(k for k, done in state.regular.items() if not done)
            logger.info(
                "level %d: %d regular orbits (%d unexplored), %d nonregular",
                level,
                len(state.regular),
                len(frontier),
                len(state.nonregular),
            )
            if checkpoint is not None and level % checkpoint_interval == 0:
                write_checkpoint(checkpoint, config, g.order, state)

        reps = sorted(state.regular)
        sizes = parallel(joblib.delayed(orbit_size)(cells, g) for cells in reps)

    if checkpoint is not None:
        write_checkpoint(checkpoint, config, g.order, state)
    catalog = OrbitCatalog(
        config,
        [Subdivision(config, cells) for cells in reps],
        [int(s) for s in sizes],
        nonregular_count=len(state.nonregular),
        group_order=g.order,
        complete=not frontier,
    )
    if check and any(g.order % s != 0 for s in catalog.orbit_sizes):
        msg = "an orbit size does not divide the group order"
        raise InvariantViolation(msg)
    logger.info(
        "%d regular triangulations in %d orbits (%s)",
        catalog.total,
        catalog.orbit_count,
        "complete" if catalog.complete else "incomplete",
    )
    return catalog


def affine_lineality(config: PointConfiguration) -> list[QVector]:
    """
    Basis of the affine functions restricted to the points, in the normal form
    :func:`secfan.dd_rays` uses for lineality spaces.
    """
    pts = config.homogenized
    columns = [[p[j] for p in pts] for j in range(len(pts[0]))]
    red, _ = rref(columns, config.npoints)
    return [normalize_line(row) for row in red]


def _rays_of(config: PointConfiguration, cells: Cells) -> list[QVector]:
    return [r.ray for r in secondary_rays(config, Subdivision(config, cells), check=False)]


def collect_coarsest_orbits(
    config: PointConfiguration,
    group: GroupLike = None,
    triangulations: Optional[OrbitCatalog | Iterable[Subdivision]] = None,
    *,
    threads: int = 1,
    check: bool = True,
) -> OrbitCatalog:
    """
    Orbits of coarsest regular subdivisions: the rays of the secondary fan.

    Every ray of the fan is a ray of the secondary cone of some regular
    triangulation, and every triangulation orbit is represented, so the rays
    of all representatives' cones cover every orbit of rays.

    Args:
        config: The configuration.
        group: Symmetry group; ``None`` for trivial.
        triangulations: Regular triangulation representatives (one per
            orbit); enumerated when not given.
        threads: Number of joblib workers.
        check: Cross-check canonical rays against canonical subdivisions.

    Raises:
        InvariantViolation: with ``check``, if two rays in one orbit induce
            subdivisions in different orbits or vice versa.
    """
    g = group if group is not None else VertexGroup.trivial(config.npoints)
    if triangulations is None:
        triangulations = enumerate_regular_triangulations(config, g, threads=threads, check=check)
    reps: Sequence[Subdivision] = (
        triangulations.representatives if isinstance(triangulations, OrbitCatalog) else list(triangulations)
    )
    lineality = affine_lineality(config)

    with joblib.Parallel(n_jobs=threads) as parallel:
        found = parallel(joblib.delayed(_rays_of)(config, t.key) for t in reps)

    keys = sorted({canonical_vector(ray, g, lineality) for batch in found for ray in batch})
    subdivisions = [regular_subdivision(config, key) for key in keys]
    if check:
        forms = [canonical_subdivision(s.key, g) for s in subdivisions]
        if len(set(forms)) != len(forms):
            msg = "distinct ray orbits induce subdivisions in the same orbit"
            raise InvariantViolation(msg)
    order = sorted(range(len(keys)), key=lambda i: (subdivisions[i].spread, keys[i]))
    catalog = OrbitCatalog(
        config,
        [subdivisions[i] for i in order],
        [orbit_size(subdivisions[i].key, g) for i in order],
        rays=[keys[i] for i in order],
        group_order=g.order,
    )
    logger.info(
        "%d coarsest subdivisions in %d orbits, spreads %s",
        catalog.total,
        catalog.orbit_count,
        catalog.spread_histogram,
    )
    return catalog


__all__ = [
    "OrbitCatalog",
    "affine_lineality",
    "collect_coarsest_orbits",
    "enumerate_regular_triangulations",
    "seed_triangulation",
]
