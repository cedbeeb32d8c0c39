# BSD 3-Clause License; see LICENSE

"""
Finite metric spaces as height functions on ``Δ(2, n)``.

A dissimilarity map ``D`` enters every subdivision as the height ``-D``
(:meth:`DissimilarityMap.as_height`); the lineality space of ``Δ(2, n)`` is
spanned by the ``n`` split pseudo-metrics of type ``D_{1,n-1}``.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple, Optional

import joblib

from ._configuration import DissimilarityMap, HeightFunction, PointConfiguration, coerce_heights, pair_index
from ._enumeration import OrbitCatalog, affine_lineality, collect_coarsest_orbits
from ._envelope import envelope
from ._errors import InputError, InvariantViolation, ResourceLimitError
from ._exactgeom import HCone, VCone, dd_rays, dot, normalize_ray, reduce_hcone, reduce_modulo
from ._hypersimplex import split_pseudometric, split_type, splits, vertices
from ._secondary import secondary_cone
from ._subdivide import is_coherent_sum, regular_subdivision
from ._symmetry import VertexGroup, canonical_vector, orbit_size, symmetric_group, vertex_group
from ._typing import QVector, RationalLike
from .io.distances import format_decimal, parse_distance_text

logger = logging.getLogger(__name__)

METRIC_CONE_LIMIT = 6
METRIC_CONE_HARD_LIMIT = 7


def _as_metric(d: DissimilarityMap | Sequence[RationalLike], n: Optional[int] = None) -> DissimilarityMap:
    if isinstance(d, DissimilarityMap):
        return d
    values = list(d)
    if n is None:
        n = round((1 + math.isqrt(1 + 8 * len(values))) / 2)
    return DissimilarityMap(n, tuple(values))


def is_pseudometric(d: DissimilarityMap) -> bool:
    """Nonnegative and satisfies every triangle inequality."""
    if any(x < 0 for x in d.values):
        return False
    for i, j, k in itertools.permutations(range(d.n), 3):
        if d(i, k) > d(i, j) + d(j, k):
            return False
    return True


def is_metric(d: DissimilarityMap) -> bool:
    """A pseudo-metric with strictly positive values."""
    return is_pseudometric(d) and all(x > 0 for x in d.values)


def metric_cone(n: int) -> HCone:
    """The metric cone ``MC(n)``: triangle inequalities and nonnegativity in ``R^C(n,2)``."""
    if n < 2:
        msg = f"the metric cone needs n >= 2, got {n}"
        raise InputError(msg)
    m = math.comb(n, 2)
    rows: list[QVector] = []
    for p in range(m):
        row = [Fraction(0)] * m
        row[p] = Fraction(1)
        rows.append(tuple(row))
    for i, j, k in itertools.permutations(range(n), 3):
        if j > k:
            continue
        # d(i,j) + d(i,k) - d(j,k) >= 0
        row = [Fraction(0)] * m
        row[pair_index(i, j, n)] += 1
        row[pair_index(i, k, n)] += 1
        row[pair_index(j, k, n)] -= 1
        rows.append(tuple(row))
    return HCone(tuple(rows), (), m)


def _symmetric_group_on_pairs(n: int) -> VertexGroup:
    return vertex_group((2, n), symmetric_group(n))


class RayOrbit(NamedTuple):
    representative: QVector
    size: int


class MetricConeRays(NamedTuple):
    vcone: VCone
    orbits: list[RayOrbit]

    @property
    def ray_count(self) -> int:
        return len(self.vcone.rays)


def _orbits(vectors: Iterable[QVector], group: VertexGroup) -> list[RayOrbit]:
    counts: dict[QVector, int] = {}
    for v in vectors:
        key = canonical_vector(v, group)
        counts[key] = counts.get(key, 0) + 1
    return [RayOrbit(k, counts[k]) for k in sorted(counts)]


def metric_cone_rays(n: int, allow_large: bool = False) -> MetricConeRays:
    """
    Extreme rays of ``MC(n)`` and their ``Sym(n)``-orbits.

    Raises:
        ResourceLimitError: for ``n > 6`` unless ``allow_large`` (and always
            for ``n > 7``).
    """
    if n < 3:
        msg = f"metric_cone_rays needs n >= 3, got {n}"
        raise InputError(msg)
    limit = METRIC_CONE_HARD_LIMIT if allow_large else METRIC_CONE_LIMIT
    if n > limit:
        msg = f"MC({n}) is beyond the resource limit (n <= {limit})"
        raise ResourceLimitError(msg)
    vcone = dd_rays(metric_cone(n))
    if vcone.lineality:
        msg = "the metric cone is not pointed"
        raise InvariantViolation(msg)
    orbits = _orbits(vcone.rays, _symmetric_group_on_pairs(n))
    logger.info("MC(%d): %d rays in %d orbits", n, len(vcone.rays), len(orbits))
    return MetricConeRays(vcone, orbits)


def coherency_index(
    config: PointConfiguration,
    omega: HeightFunction | DissimilarityMap | Iterable[RationalLike],
    omega_prime: HeightFunction | DissimilarityMap | Iterable[RationalLike],
) -> Fraction | float:
    """
    The coherency index of ``ω`` with respect to ``ω'``:
    ``min_x max_x' min_v (<v,x> + ω(v)) / (<v,x'> + ω'(v))`` where ``x`` and
    ``x'`` run over the envelope vertices of ``ω`` and ``ω'`` and ``v`` over
    the homogenized points outside the cell dual to ``x'``.

    It is the largest ``λ`` such that ``(ω - λω', λω')`` is coherent.

    Returns:
        An exact rational, or ``math.inf`` when ``ω'`` induces the trivial
        subdivision (no point lies outside its only cell).
    """
    w = coerce_heights(omega)
    wp = coerce_heights(omega_prime)
    pts = config.homogenized
    env = envelope(config, w)
    env_p = envelope(config, wp)
    outside = [
        [v for v in range(config.npoints) if v not in tight] for tight in env_p.tight
    ]
    if any(not vs for vs in outside):
        return math.inf
    denominators = [
        {v: dot(pts[v], xp) + wp[v] for v in vs} for xp, vs in zip(env_p.vertices, outside)
    ]
    best: Optional[Fraction] = None
    for x in env.vertices:
        numer = [dot(p, x) + w[v] for v, p in enumerate(pts)]
        inner = max(
            min(numer[v] / den[v] for v in vs) for vs, den in zip(outside, denominators)
        )
        if best is None or inner < best:
            best = inner
    assert best is not None
    return best


class SplitDecomposition(NamedTuple):
    """
    ``ω = prime_part + Σ coefficients[A] * representatives[A]``.

    Splits are keyed by the part containing 0 (0-based).
    """

    coefficients: dict[frozenset[int], Fraction]
    prime_part: HeightFunction
    representatives: dict[frozenset[int], HeightFunction]

    def positive(self) -> dict[frozenset[int], Fraction]:
        return {a: c for a, c in self.coefficients.items() if c > 0}


def default_split_representatives(n: int) -> dict[frozenset[int], HeightFunction]:
    """``-D_{A,B}`` for every split ``A|B`` of ``Δ(2, n)``."""
    return {a: split_pseudometric(n, a).as_height() for a in splits(n)}


def _split_rays(config: PointConfiguration, rays: Sequence[QVector]) -> list[QVector]:
    return [r for r in rays if regular_subdivision(config, r).spread == 2]


def split_decompose(
    config: PointConfiguration,
    omega: HeightFunction | DissimilarityMap | Iterable[RationalLike],
    split_representatives: Optional[Mapping[frozenset[int], HeightFunction | Iterable[RationalLike]]] = None,
    check: bool = True,
) -> SplitDecomposition:
    """
    The split decomposition of a lifting.

    Only splits whose representative lies in the secondary cone of ``A^ω``
    (that is, the split rays of that cone) receive a nonzero coefficient, the
    coherency index of ``ω`` with respect to the representative.

    Args:
        config: The configuration.
        omega: The lifting (a :class:`DissimilarityMap` is negated).
        split_representatives: Heights per split; defaults to the split
            pseudo-metrics of ``Δ(2, n)``.
        check: Verify that the prime part is split prime and that the
            decomposition is coherent.

    Raises:
        InputError: if no representatives are given for a configuration
            other than ``Δ(2, n)``.
        InvariantViolation: with ``check``, if a verification fails.
    """
    w = coerce_heights(omega)
    if split_representatives is None:
        hs = config.hypersimplex
        if hs is None or hs[0] != 2:
            msg = "split representatives must be given for configurations other than Δ(2, n)"
            raise InputError(msg)
        reps = default_split_representatives(hs[1])
    else:
        reps = {frozenset(a): coerce_heights(h) for a, h in split_representatives.items()}

    cone = secondary_cone(config, regular_subdivision(config, w))
    coefficients: dict[frozenset[int], Fraction] = {}
    for part, rep in reps.items():
        if cone.contains(rep) and regular_subdivision(config, rep).spread == 2:
            index = coherency_index(config, w, rep)
            if not isinstance(index, Fraction):
                msg = f"coherency index of split {sorted(part)} is infinite"
                raise InvariantViolation(msg)
            coefficients[part] = index
        else:
            coefficients[part] = Fraction(0)

    prime = w
    for part, c in coefficients.items():
        if c:
            prime = prime - reps[part] * c
    logger.info(
        "split decomposition: %d split rays, total weight %s",
        sum(1 for c in coefficients.values() if c),
        sum(coefficients.values(), Fraction(0)),
    )

    if check:
        total = prime
        for part, c in coefficients.items():
            total = total + reps[part] * c
        if total != w:
            msg = "split decomposition does not reconstruct ω"
            raise InvariantViolation(msg)
        prime_cone = secondary_cone(config, regular_subdivision(config, prime))
        if _split_rays(config, prime_cone.rays):
            msg = "the prime part of a split decomposition has a split ray"
            raise InvariantViolation(msg)
        parts = [prime] + [reps[a] * c for a, c in coefficients.items() if c]
        if not is_coherent_sum(config, w, parts):
            msg = "the split decomposition is not coherent"
            raise InvariantViolation(msg)
    return SplitDecomposition(coefficients, prime, reps)


def secondary_metric_cone(delta: DissimilarityMap) -> HCone:
    """
    ``MC(δ)``: the pseudo-metrics ``D`` with ``-D`` in the secondary cone of
    ``Δ(2, n)^{-δ}``. The result is pointed and reduced.
    """
    n = delta.n
    config = vertices((2, n))
    cone = secondary_cone(config, regular_subdivision(config, delta)).hcone
    mc = metric_cone(n)
    flipped = HCone(
        tuple(tuple(-x for x in row) for row in cone.inequalities),
        cone.equations,
        cone.ambient_dim,
    )
    return reduce_hcone(mc.intersect(flipped))


@lru_cache(maxsize=None)
def _star_rays(n: int) -> frozenset[QVector]:
    return frozenset(normalize_ray(split_pseudometric(n, [i]).values) for i in range(n))


def metric_representative(n: int, ray: Sequence[RationalLike], check: bool = True) -> DissimilarityMap:
    """
    The pseudo-metric representing the height ray ``ray``: the extreme ray of
    ``MC(δ)``, ``-δ = ray``, that is not a ``D_{1,n-1}`` split.

    Raises:
        InputError: if ``ray`` lies in the lineality space.
        InvariantViolation: with ``check``, if the representative is not unique.
    """
    delta = DissimilarityMap.from_height(HeightFunction(ray), n)
    rays = dd_rays(secondary_metric_cone(delta)).rays
    rest = [r for r in rays if r not in _star_rays(n)]
    if not rest:
        msg = "the ray lies in the lineality space"
        raise InputError(msg)
    if check and len(rest) != 1:
        msg = f"{len(rest)} pseudo-metrics represent one ray of the secondary fan"
        raise InvariantViolation(msg)
    return DissimilarityMap(n, rest[0])


def _metric_fan_entry(n: int, ray: QVector, check: bool) -> QVector:
    return metric_representative(n, ray, check).values


def metric_fan_rays(
    n: int,
    sigma_catalog: Optional[OrbitCatalog] = None,
    *,
    threads: int = 1,
    check: bool = True,
) -> OrbitCatalog:
    """
    Ray orbits of the metric fan ``MF(n)``: the negated rays of ``Σ(2, n)``
    written as pseudo-metrics, plus the orbit of ``D_{1,n-1}`` splits.

    Args:
        n: Number of points.
        sigma_catalog: Output of :func:`secfan.collect_coarsest_orbits` for
            ``Δ(2, n)`` under ``Sym(n)``; computed when not given.
        threads: Number of joblib workers.
        check: Forwarded to the computations.
    """
    config = vertices((2, n))
    group = _symmetric_group_on_pairs(n)
    if sigma_catalog is None:
        sigma_catalog = collect_coarsest_orbits(config, group, threads=threads, check=check)
    if sigma_catalog.rays is None:
        msg = "the catalog has no rays; pass the output of collect_coarsest_orbits"
        raise InputError(msg)
    with joblib.Parallel(n_jobs=threads) as parallel:
        metrics = parallel(joblib.delayed(_metric_fan_entry)(n, r, check) for r in sigma_catalog.rays)
    metrics.append(split_pseudometric(n, [0]).values)

    keys = sorted({canonical_vector(m, group) for m in metrics})
    subs = [regular_subdivision(config, DissimilarityMap(n, k)) for k in keys]
    order = sorted(range(len(keys)), key=lambda i: (subs[i].spread, keys[i]))
    types = [classify_ray(keys[i], n).tag for i in order]
    catalog = OrbitCatalog(
        config,
        [subs[i] for i in order],
        [orbit_size(keys[i], group) for i in order],
        rays=[keys[i] for i in order],
        group_order=group.order,
        meta={"kind": "metric-fan", "types": types},
    )
    logger.info("MF(%d): %d rays in %d orbits", n, catalog.total, catalog.orbit_count)
    return catalog


class RayType(NamedTuple):
    """
    Attributes:
        tag: ``"D_{a,b}"`` for splits, ``"D_{1,n-1}"`` for the lineality
            splits, ``"lineality"`` for other affine vectors, else ``"non-split"``.
        spread: Spread of the induced subdivision of ``Δ(2, n)``.
        part: The part containing 0 for split types, else ``None``.
    """

    tag: str
    spread: int
    part: Optional[frozenset[int]]


def _split_tag(n: int, part: Iterable[int]) -> str:
    lo, hi = split_type(n, part)
    return f"D_{{{lo},{hi}}}"


@lru_cache(maxsize=None)
def _split_keys(n: int) -> dict[QVector, frozenset[int]]:
    lineality = affine_lineality(vertices((2, n)))
    return {
        normalize_ray(reduce_modulo(split_pseudometric(n, a).values, lineality)): a
        for a in splits(n)
    }


def classify_ray(v: DissimilarityMap | Sequence[RationalLike], n: Optional[int] = None) -> RayType:
    """
    Type of a pair-indexed vector, read as a pseudo-metric: a split type when
    it is a positive multiple of a split pseudo-metric modulo lineality.
    """
    d = _as_metric(v, n)
    config = vertices((2, d.n))
    lineality = affine_lineality(config)
    reduced = reduce_modulo(d.values, lineality)
    if not any(reduced):
        star = normalize_ray(d.values)
        for i in range(d.n):
            if star == normalize_ray(split_pseudometric(d.n, [i]).values) and any(d.values):
                a = frozenset([0]) if i == 0 else frozenset(j for j in range(d.n) if j != i)
                return RayType(f"D_{{1,{d.n - 1}}}", 1, a)
        return RayType("lineality", 1, None)
    part = _split_keys(d.n).get(normalize_ray(reduced))
    if part is not None:
        return RayType(_split_tag(d.n, part), 2, part)
    spread = regular_subdivision(config, d).spread
    return RayType("non-split", spread, None)


def parse_decimal_metric(text: str) -> DissimilarityMap:
    """Exact dissimilarity map from a decimal distance matrix (see :mod:`secfan.io.distances`)."""
    return parse_distance_text(text).metric


def _number(x: Fraction | float) -> dict[str, str]:
    if not isinstance(x, Fraction):
        return {"exact": "inf", "decimal": "inf"}
    return {"exact": str(x), "decimal": format_decimal(x), "scientific": f"{float(x):.2e}"}


def _matrix_report(d: DissimilarityMap) -> dict[str, Any]:
    return {
        "exact": [[str(d(i, j)) for j in range(d.n)] for i in range(d.n)],
        "decimal": [[format_decimal(d(i, j)) for j in range(d.n)] for i in range(d.n)],
    }


def decomposition_report(
    metric: DissimilarityMap,
    names: Optional[Sequence[str]] = None,
    check: bool = True,
) -> dict[str, Any]:
    """
    Split decomposition of a metric together with the rays of its secondary
    cone: type, spread, orbit and coherency index of each.

    Parts are reported with 1-based labels (or taxa names).
    """
    n = metric.n
    config = vertices((2, n))
    group = _symmetric_group_on_pairs(n)
    sub = regular_subdivision(config, metric)
    cone = secondary_cone(config, sub)

    def label(part: Iterable[int]) -> list[Any]:
        return [names[i] if names is not None else i + 1 for i in sorted(part)]

    rays = []
    orbit_ids: dict[QVector, int] = {}
    for ray in cone.rays:
        rep = metric_representative(n, ray, check)
        kind = classify_ray(rep)
        key = canonical_vector(rep.values, group)
        orbit_ids.setdefault(key, len(orbit_ids))
        rays.append(
            {
                "metric": [str(x) for x in rep.values],
                "type": kind.tag,
                "part": label(kind.part) if kind.part is not None else None,
                "spread": regular_subdivision(config, rep).spread,
                "orbit": orbit_ids[key],
                "coherency_index": _number(coherency_index(config, metric, rep)),
            }
        )
    rays.sort(key=lambda r: (r["orbit"], r["metric"]))

    decomposition = split_decompose(config, metric, check=check)
    prime = DissimilarityMap.from_height(decomposition.prime_part, n)
    splits_out = [
        {"part": label(a), "type": _split_tag(n, a), "coefficient": _number(c)}
        for a, c in sorted(decomposition.positive().items(), key=lambda kv: (-kv[1], sorted(kv[0])))
    ]
    return {
        "n": n,
        "names": list(names) if names is not None else None,
        "pseudometric": is_pseudometric(metric),
        "spread": sub.spread,
        "triangulation": sub.is_triangulation,
        "secondary_cone_dim": cone.dim,
        "rays": rays,
        "ray_orbits": len(orbit_ids),
        "splits": splits_out,
        "prime_part": _matrix_report(prime),
        "prime_spread": regular_subdivision(config, decomposition.prime_part).spread,
    }


__all__ = [
    "MetricConeRays",
    "RayOrbit",
    "RayType",
    "SplitDecomposition",
    "classify_ray",
    "coherency_index",
    "decomposition_report",
    "default_split_representatives",
    "is_metric",
    "is_pseudometric",
    "metric_cone",
    "metric_cone_rays",
    "metric_fan_rays",
    "metric_representative",
    "parse_decimal_metric",
    "secondary_metric_cone",
    "split_decompose",
]
