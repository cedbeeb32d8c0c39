# BSD 3-Clause License; see LICENSE

from __future__ import annotations

from collections import Counter

import pytest

import secfan


def test_existence():
    assert secfan.secondary_cone is not None
    assert secfan.secondary_rays is not None
    assert secfan.is_coarsest is not None
    assert secfan.is_regular_triangulation is not None
    assert secfan.flips is not None
    assert secfan.gkz_vector is not None


def test_triangulation_cone(delta24, thrackle24):
    cone = secfan.secondary_cone(delta24, thrackle24)
    assert cone.dim == 6
    assert cone.lineality_dim == 4
    assert len(cone.rays) == 2
    assert cone.contains(secfan.thrackle(4).as_height())
    assert not cone.contains(secfan.split_pseudometric(4, [0, 2]).as_height())


def test_methods_agree(delta24, delta25, thrackle24, split24):
    for sub in (thrackle24, split24):
        cells = secfan.secondary_cone(delta24, sub, method="cells")
        walls = secfan.secondary_cone(delta24, sub, method="walls")
        assert cells.hcone == walls.hcone
    tri = secfan.regular_subdivision(delta25, secfan.thrackle(5))
    assert (
        secfan.secondary_cone(delta25, tri).hcone
        == secfan.secondary_cone(delta25, tri, method="walls").hcone
    )


def test_unknown_method(delta24, split24):
    with pytest.raises(secfan.InputError):
        secfan.secondary_cone(delta24, split24, method="facets")


def test_split_cone(delta24, split24):
    cone = secfan.secondary_cone(delta24, split24)
    assert cone.dim == 5
    assert cone.lineality_dim == 4
    assert len(cone.rays) == 1


def test_is_coarsest(delta24, delta25):
    assert secfan.is_coarsest(delta24, secfan.split_pseudometric(4, [0, 1]))
    assert not secfan.is_coarsest(delta24, secfan.thrackle(4))
    assert secfan.is_coarsest(delta25, secfan.lambda_lift((2, 5)))
    with pytest.raises(secfan.TrivialSubdivisionError):
        secfan.is_coarsest(delta24, [0] * 6)


def test_secondary_rays(delta24, thrackle24):
    rays = secfan.secondary_rays(delta24, thrackle24)
    assert len(rays) == 2
    found = {r.subdivision for r in rays}
    expected = {
        secfan.regular_subdivision(delta24, secfan.split_pseudometric(4, [0, 1])),
        secfan.regular_subdivision(delta24, secfan.split_pseudometric(4, [0, 3])),
    }
    assert found == expected
    for ray in rays:
        assert secfan.regular_subdivision(delta24, ray.ray) == ray.subdivision


def test_nonregular_input_is_rejected(delta24, split24, thrackle24):
    # a union of cells from two different triangulations
    cells = [thrackle24.key[0], thrackle24.key[1], (1, 2, 3, 5), (2, 3, 4, 5)]
    with pytest.raises(secfan.NotRegularError):
        secfan.secondary_rays(delta24, secfan.Subdivision(delta24, cells))
    with pytest.raises(secfan.InputError):
        secfan.is_regular_triangulation(delta24, split24)


def test_is_regular_triangulation(delta24, delta26, thrackle24):
    assert secfan.is_regular_triangulation(delta24, thrackle24, check=True)
    tri = secfan.regular_subdivision(delta26, secfan.thrackle(6))
    assert secfan.is_regular_triangulation(delta26, tri, check=True)


def test_flips(delta24, thrackle24):
    neighbors = secfan.flips(delta24, thrackle24)
    assert len(neighbors) == 2
    assert all(t.is_triangulation and t.spread == 4 for t in neighbors)
    assert thrackle24 not in neighbors
    for t in neighbors:
        assert thrackle24 in secfan.flips(delta24, t)


def test_gkz_vector(delta24):
    # lowering 1100 and 0011 triangulates around that diagonal
    tri = secfan.regular_subdivision(delta24, [-1, 0, 0, 0, 0, -1])
    assert tri.is_triangulation
    assert secfan.gkz_vector(delta24, tri) == (4, 2, 2, 2, 2, 4)
    assert sum(secfan.gkz_vector(delta24, tri)) == 4 * delta24.total_volume


def test_gkz_separates_triangulations(delta24, thrackle24):
    triangulations = [thrackle24, *secfan.flips(delta24, thrackle24)]
    assert len({secfan.gkz_vector(delta24, t) for t in triangulations}) == 3


def test_thrackle_cone(delta26):
    tri = secfan.regular_subdivision(delta26, secfan.thrackle(6))
    assert tri.is_triangulation
    assert tri.spread == 26
    cone = secfan.secondary_cone(delta26, tri)
    assert cone.dim == 15
    assert len(cone.rays) == 9


def test_thrackle_ray_types(delta26):
    tri = secfan.regular_subdivision(delta26, secfan.thrackle(6))
    rays = secfan.secondary_rays(delta26, tri)
    tags = Counter(
        secfan.classify_ray(secfan.DissimilarityMap.from_height(r.ray, 6)).tag for r in rays
    )
    assert tags == {"D_{2,4}": 6, "D_{3,3}": 3}
    assert {r.subdivision.spread for r in rays} == {2}


def test_lineality_of_every_cone(delta25):
    for part in ([0, 1], [0, 1, 2]):
        cone = secfan.secondary_cone(
            delta25, secfan.regular_subdivision(delta25, secfan.split_pseudometric(5, part))
        )
        assert cone.lineality_dim == delta25.dim + 1
