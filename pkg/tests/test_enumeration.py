# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import pytest

import secfan


def test_existence():
    assert secfan.enumerate_regular_triangulations is not None
    assert secfan.collect_coarsest_orbits is not None
    assert secfan.seed_triangulation is not None
    assert secfan.OrbitCatalog is not None


def _group(spec, text=None):
    group = secfan.default_group(spec) if text is None else secfan.parse_group(text, spec)
    return secfan.vertex_group(spec, group)


def test_seed(delta24):
    seed = secfan.seed_triangulation(delta24)
    assert seed.is_triangulation
    square = secfan.PointConfiguration(((0, 0), (1, 0), (0, 1), (1, 1)))
    assert secfan.seed_triangulation(square).is_triangulation


def test_delta24_trivial_group(delta24):
    catalog = secfan.enumerate_regular_triangulations(delta24)
    assert catalog.complete
    assert catalog.orbit_count == 3
    assert catalog.total == 3
    assert catalog.nonregular_count == 0
    assert catalog.group_order == 1
    assert catalog.spread_histogram == {4: 3}


def test_delta24_with_symmetry(delta24):
    group = _group((2, 4))
    catalog = secfan.enumerate_regular_triangulations(delta24, group)
    assert catalog.orbit_count == 1
    assert catalog.total == 3
    assert catalog.group_order == 48
    coarsest = secfan.collect_coarsest_orbits(delta24, group, catalog)
    assert coarsest.orbit_count == 1
    assert coarsest.total == 3
    assert coarsest.spread_histogram == {2: 1}
    assert coarsest.rays is not None


def test_square():
    square = secfan.PointConfiguration(((0, 0), (1, 0), (0, 1), (1, 1)))
    catalog = secfan.enumerate_regular_triangulations(square)
    assert catalog.total == 2
    # both triangulations are coarsest
    coarsest = secfan.collect_coarsest_orbits(square, None, catalog)
    assert coarsest.total == 2
    assert coarsest.spread_histogram == {2: 2}


def test_delta25(delta25):
    group = _group((2, 5))
    coarsest = secfan.collect_coarsest_orbits(delta25, group)
    assert coarsest.orbit_count == 2
    assert coarsest.total == 20
    assert coarsest.spread_histogram == {2: 1, 5: 1}
    assert coarsest.orbit_sizes == [10, 10]


def test_threads_give_the_same_catalog(delta24):
    one = secfan.enumerate_regular_triangulations(delta24, threads=1)
    two = secfan.enumerate_regular_triangulations(delta24, threads=2)
    assert one == two


def test_nonregular_seed(delta24, split24):
    with pytest.raises(secfan.NotRegularError):
        secfan.enumerate_regular_triangulations(delta24, seed=split24)


def test_checkpoint_resume(delta24, tmp_path):
    path = tmp_path / "search.jsonl"
    partial = secfan.enumerate_regular_triangulations(delta24, checkpoint=path, max_expansions=1)
    assert not partial.complete
    assert path.exists()
    state = secfan.io.read_checkpoint(path, delta24, 1)
    assert sum(state.regular.values()) == 1
    assert len(state.regular) == 3

    resumed = secfan.enumerate_regular_triangulations(delta24, checkpoint=path)
    assert resumed.complete
    assert resumed.total == 3
    assert all(secfan.io.read_checkpoint(path, delta24, 1).regular.values())


def _enumerate_in_segments(config, group, path, per_segment):
    for segments in range(1, 1000):
        catalog = secfan.enumerate_regular_triangulations(
            config, group, checkpoint=path, max_expansions=per_segment
        )
        if catalog.complete:
            return catalog, segments
    raise AssertionError


def test_checkpoint_segments(delta25, tmp_path):
    catalog, segments = _enumerate_in_segments(delta25, None, tmp_path / "search.jsonl", 5)
    assert segments >= 3
    assert catalog == secfan.enumerate_regular_triangulations(delta25)


@pytest.mark.slow
def test_delta26_checkpoint_segments(delta26, tmp_path):
    group = _group((2, 6))
    catalog, segments = _enumerate_in_segments(delta26, group, tmp_path / "search.jsonl", 120)
    assert segments >= 3
    assert catalog.orbit_count == 339
    assert catalog == secfan.enumerate_regular_triangulations(delta26, group, threads=2)


def test_checkpoint_for_another_group(delta24, tmp_path):
    path = tmp_path / "search.jsonl"
    secfan.enumerate_regular_triangulations(delta24, checkpoint=path)
    with pytest.raises(secfan.InputError):
        secfan.enumerate_regular_triangulations(delta24, _group((2, 4)), checkpoint=path)


def test_corrupt_checkpoint(delta24, tmp_path):
    path = tmp_path / "search.jsonl"
    path.write_text("not json\n", encoding="utf-8")
    with pytest.raises(secfan.InputError):
        secfan.enumerate_regular_triangulations(delta24, checkpoint=path)


def test_checkpoint_interval(delta24, tmp_path):
    with pytest.raises(secfan.InputError):
        secfan.enumerate_regular_triangulations(
            delta24, checkpoint=tmp_path / "x.jsonl", checkpoint_interval=0
        )


def test_catalog_json(delta24):
    group = _group((2, 4))
    coarsest = secfan.collect_coarsest_orbits(delta24, group)
    data = coarsest.to_json()
    assert data["orbits"] == 1
    assert data["total"] == 3
    assert data["spread_histogram"] == {"2": 1}
    assert data["configuration"]["k"] == 2
    assert secfan.OrbitCatalog.from_json(data) == coarsest
    with pytest.raises(secfan.InputError):
        secfan.OrbitCatalog.from_json({"configuration": data["configuration"]})


def test_affine_lineality(delta24, thrackle24):
    lineality = secfan.affine_lineality(delta24)
    assert len(lineality) == delta24.dim + 1
    cone = secfan.secondary_cone(delta24, thrackle24)
    assert cone.vcone.lineality == tuple(lineality)


@pytest.mark.slow
def test_delta26(delta26):
    group = _group((2, 6))
    catalog = secfan.enumerate_regular_triangulations(delta26, group, threads=2)
    assert catalog.orbit_count == 339
    assert catalog.total == 194160
    coarsest = secfan.collect_coarsest_orbits(delta26, group, catalog, threads=2)
    assert coarsest.orbit_count == 13
    assert coarsest.spread_histogram == {2: 2, 5: 2, 6: 2, 7: 3, 10: 1, 11: 3}


@pytest.mark.slow
def test_delta36_seed():
    config = secfan.vertices((3, 6))
    seed = secfan.seed_triangulation(config)
    assert seed.is_triangulation
    assert sum(seed.cell_volumes) == 66
    assert secfan.is_regular_triangulation(config, seed, check=True)
