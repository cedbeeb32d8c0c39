# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

import pytest

import secfan
from secfan._exactgeom import normalize_ray, reduce_modulo

# split rays of the bee metric with their coefficients, and the remaining
# coarsest subdivisions reported for it with their spreads; only the first of
# those is a ray of the exact secondary cone
BEE_SPLITS = [
    ((1, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1), "0.03175776"),
    ((1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0), "0.00886262"),
    ((1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0), "0.00664697"),
    ((0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1), "0.00147710"),
    ((1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0), "0.00516987"),
]
BEE_RAYS = [
    ((1, 2, 2, 0, 1, 1, 1, 1, 2, 2, 2, 1, 2, 1, 1), 5),
    ((1, 2, 2, 1, 2, 1, 1, 2, 3, 2, 3, 2, 1, 2, 1), 7),
    ((1, 2, 2, 1, 1, 1, 1, 2, 2, 2, 3, 1, 1, 1, 2), 6),
    ((1, 2, 2, 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, 1, 0), 5),
]
BEE_PRIME = [
    "0.0376662", "0.0561300", "0.0524372", "0.0044313", "0.0420975",
    "0.0849335", "0.0812408", "0.0406204", "0.0782866",
    "0.0997046", "0.0590842", "0.0893648",
    "0.0553914", "0.0856721",
    "0.0450517",
]  # fmt: skip


def test_existence():
    assert secfan.metric_cone is not None
    assert secfan.metric_cone_rays is not None
    assert secfan.coherency_index is not None
    assert secfan.split_decompose is not None
    assert secfan.metric_fan_rays is not None


def test_is_pseudometric():
    assert secfan.is_pseudometric(secfan.thrackle(5))
    assert secfan.is_metric(secfan.thrackle(5))
    split = secfan.split_pseudometric(5, [0, 1])
    assert secfan.is_pseudometric(split)
    assert not secfan.is_metric(split)
    assert not secfan.is_pseudometric(secfan.DissimilarityMap(3, (1, 1, 3)))
    assert not secfan.is_pseudometric(secfan.DissimilarityMap(3, (1, -1, 1)))


@pytest.mark.parametrize(
    ("n", "rays", "orbits"),
    [(3, 3, 1), (4, 7, 2), (5, 25, 3), pytest.param(6, 296, 8, marks=pytest.mark.slow)],
)
def test_metric_cone_rays(n, rays, orbits):
    result = secfan.metric_cone_rays(n)
    assert result.ray_count == rays
    assert len(result.orbits) == orbits
    assert sum(o.size for o in result.orbits) == rays


def test_metric_cone_limits():
    with pytest.raises(secfan.InputError):
        secfan.metric_cone_rays(2)
    with pytest.raises(secfan.ResourceLimitError):
        secfan.metric_cone_rays(7)
    with pytest.raises(secfan.ResourceLimitError):
        secfan.metric_cone_rays(8, allow_large=True)
    with pytest.raises(secfan.InputError):
        secfan.metric_cone(1)


def test_coherency_index(delta24):
    omega = secfan.thrackle(4)
    assert secfan.coherency_index(delta24, omega, omega) == 1
    assert secfan.coherency_index(delta24, omega, [0] * 6) == math.inf


def test_split_decompose_thrackle(delta24):
    result = secfan.split_decompose(delta24, secfan.thrackle(4))
    assert result.positive() == {frozenset({0, 1}): 1, frozenset({0, 3}): 1}
    assert secfan.regular_subdivision(delta24, result.prime_part).spread == 1


def test_thrackle6_split_decomposition(delta26):
    result = secfan.split_decompose(delta26, secfan.thrackle(6))
    positive = result.positive()
    assert len(positive) == 9
    assert {len(part) for part in positive} <= {2, 3, 4}
    # the thrackle is totally split decomposable
    assert secfan.regular_subdivision(delta26, result.prime_part).spread == 1
    assert not any(reduce_modulo(result.prime_part.values, secfan.affine_lineality(delta26)))


def test_split_decompose_needs_representatives():
    square = secfan.PointConfiguration(((0, 0), (1, 0), (0, 1), (1, 1)))
    with pytest.raises(secfan.InputError):
        secfan.split_decompose(square, [0, 0, 0, 1])


def _part(vector):
    d = secfan.DissimilarityMap(6, vector)
    return frozenset(i for i in range(6) if i == 0 or d(0, i) == 0)


def test_bees_splits(delta26, bees):
    result = secfan.split_decompose(delta26, bees)
    positive = result.positive()
    assert len(positive) == 5
    for vector, coefficient in BEE_SPLITS:
        assert float(positive[_part(vector)]) == pytest.approx(float(coefficient), abs=1e-8)

    prime = secfan.DissimilarityMap.from_height(result.prime_part, 6)
    for value, expected in zip(prime.values, BEE_PRIME):
        assert float(value) == pytest.approx(float(expected), abs=3e-7)


def test_bees_subdivision(delta26, bees):
    sub = secfan.regular_subdivision(delta26, bees)
    assert sub.spread == 12
    assert not sub.is_triangulation
    assert secfan.secondary_cone(delta26, sub).dim == 12


def test_bees_rays(delta26, bees):
    cone = secfan.secondary_cone(delta26, secfan.regular_subdivision(delta26, bees))
    lineality = secfan.affine_lineality(delta26)
    expected = {
        normalize_ray(reduce_modulo([-x for x in vector], lineality))
        for vector, _ in [*BEE_SPLITS, BEE_RAYS[0]]
    }
    assert len(cone.rays) == 6
    assert set(cone.rays) == expected

    for vector, spread in BEE_RAYS:
        d = secfan.DissimilarityMap(6, vector)
        assert secfan.regular_subdivision(delta26, d).spread == spread


def test_bees_coherency(delta26, bees):
    ray = secfan.DissimilarityMap(6, BEE_RAYS[0][0])
    index = secfan.coherency_index(delta26, bees, ray)
    assert isinstance(index, Fraction)
    assert float(index) == pytest.approx(0.00369276, abs=1e-8)


def test_secondary_metric_cone():
    cone = secfan.dd_rays(secfan.secondary_metric_cone(secfan.thrackle(6)))
    assert not cone.lineality
    assert len(cone.rays) == 15
    tags = Counter(secfan.classify_ray(r).tag for r in cone.rays)
    assert tags == {"D_{1,5}": 6, "D_{2,4}": 6, "D_{3,3}": 3}


def test_classify_ray():
    assert secfan.classify_ray(secfan.split_pseudometric(5, [0, 2])) == secfan.RayType(
        "D_{2,3}", 2, frozenset({0, 2})
    )
    assert secfan.classify_ray(secfan.split_pseudometric(5, [3])).tag == "D_{1,4}"
    assert secfan.classify_ray(secfan.split_pseudometric(5, [3])).spread == 1
    assert secfan.classify_ray([0] * 10).tag == "lineality"
    kind = secfan.classify_ray(secfan.thrackle(5))
    assert kind.tag == "non-split"
    assert kind.part is None


def test_split_identity():
    # D_{A,B} is one across the split and zero inside either part
    for part in secfan.splits(6):
        d = secfan.split_pseudometric(6, part)
        inside = [int((i in part) == (j in part)) for i, j in secfan.pairs(6)]
        assert [x + y for x, y in zip(d.values, inside)] == [1] * 15


def test_metric_representative():
    split = secfan.split_pseudometric(4, [0, 1])
    assert secfan.metric_representative(4, split.as_height().values) == split
    shifted = split.as_height() + secfan.split_pseudometric(4, [2]).as_height()
    assert secfan.metric_representative(4, shifted.values) == split
    with pytest.raises(secfan.InputError):
        secfan.metric_representative(4, secfan.split_pseudometric(4, [2]).as_height().values)


def test_metric_fan_n4():
    catalog = secfan.metric_fan_rays(4)
    assert catalog.orbit_count == 2
    assert catalog.total == 7
    assert catalog.meta["types"] == ["D_{1,3}", "D_{2,2}"]
    assert catalog.to_json()["kind"] == "metric-fan"


def test_metric_fan_n5():
    catalog = secfan.metric_fan_rays(5)
    assert catalog.orbit_count == 3
    assert catalog.meta["types"][:2] == ["D_{1,4}", "D_{2,3}"]


def test_metric_fan_needs_rays(delta24):
    catalog = secfan.enumerate_regular_triangulations(delta24)
    with pytest.raises(secfan.InputError):
        secfan.metric_fan_rays(4, catalog)


@pytest.mark.slow
def test_metric_fan_n6():
    catalog = secfan.metric_fan_rays(6, threads=2)
    assert catalog.orbit_count == 14
    cone_orbits = {o.representative for o in secfan.metric_cone_rays(6).orbits}
    group = secfan.vertex_group((2, 6), secfan.symmetric_group(6))
    fan_orbits = {secfan.canonical_vector(r, group) for r in catalog.rays}
    assert len(cone_orbits) == 8
    assert cone_orbits <= fan_orbits


def test_parse_decimal_metric():
    d = secfan.parse_decimal_metric("0 0.5 1\n0.5 0 0.25\n1 0.25 0\n")
    assert d.values == (Fraction(1, 2), Fraction(1), Fraction(1, 4))


def test_decomposition_report(bees):
    report = secfan.decomposition_report(bees)
    assert report["n"] == 6
    assert report["pseudometric"]
    assert len(report["rays"]) == 6
    assert report["ray_orbits"] == 3
    assert report["spread"] == 12
    assert not report["triangulation"]
    assert len(report["splits"]) == 5
    assert report["splits"][0]["coefficient"]["decimal"] == "0.03175776"
    assert report["splits"][0]["part"] == [1, 5]
