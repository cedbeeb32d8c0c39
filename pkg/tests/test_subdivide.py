# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import awkward as ak
import numpy as np
import pytest

import secfan


def test_existence():
    assert secfan.Subdivision is not None
    assert secfan.regular_subdivision is not None
    assert secfan.dual_graph is not None
    assert secfan.common_refinement is not None
    assert secfan.is_coherent_sum is not None
    assert secfan.is_tropical_pluecker is not None
    assert secfan.is_multisplit is not None
    assert secfan.describe is not None


def test_split(split24):
    assert split24.key == ((0, 1, 2, 3, 4), (1, 2, 3, 4, 5))
    assert split24.spread == 2
    assert secfan.is_split(split24)
    assert not split24.is_triangulation
    assert split24.cell_volumes == (2, 2)
    assert ak.to_list(split24.cells) == [[0, 1, 2, 3, 4], [1, 2, 3, 4, 5]]
    assert secfan.label_cells(split24)[0] == ["1100", "1010", "1001", "0110", "0101"]


def test_thrackle_triangulation(thrackle24):
    assert thrackle24.key == ((0, 1, 2, 4), (0, 1, 3, 4), (1, 2, 4, 5), (1, 3, 4, 5))
    assert thrackle24.is_triangulation
    assert thrackle24.cell_volumes == (1, 1, 1, 1)
    assert secfan.is_valid_subdivision(thrackle24)


def test_trivial(delta24):
    sub = secfan.regular_subdivision(delta24, [0] * 6)
    assert sub.is_trivial
    assert sub == secfan.trivial_subdivision(delta24)
    assert secfan.regular_subdivision(delta24, [1, 0, 0, 0, 0, 0]).is_trivial is False


def test_height_count_is_checked(delta24):
    with pytest.raises(secfan.InputError):
        secfan.regular_subdivision(delta24, [0] * 5)


def test_padded(split24, thrackle24):
    assert split24.padded().shape == (2, 5)
    sub = secfan.Subdivision(split24.config, [(0, 1, 2), (0, 1, 2, 3)])
    assert np.array_equal(sub.padded(), [[0, 1, 2, -1], [0, 1, 2, 3]])
    assert thrackle24.cell_sizes.tolist() == [4, 4, 4, 4]


def test_dual_graph(split24, thrackle24):
    g = secfan.dual_graph(split24)
    assert g.number_of_nodes() == 2
    assert g.edges[0, 1]["face"] == (1, 2, 3, 4)
    cycle = secfan.dual_graph(thrackle24)
    assert cycle.number_of_edges() == 4
    assert all(d == 2 for _, d in cycle.degree)


def test_coarsest_by_complete_dual(split24, thrackle24):
    assert secfan.is_coarsest_by_complete_dual(split24)
    assert not secfan.is_coarsest_by_complete_dual(thrackle24)


def test_coarsening(split24, thrackle24):
    assert secfan.coarsening_map(thrackle24, split24) == [0, 0, 1, 1]
    assert secfan.coarsening_is_contraction(thrackle24, split24)
    other = secfan.regular_subdivision(split24.config, secfan.split_pseudometric(4, [0, 2]))
    with pytest.raises(secfan.NotNestedError):
        secfan.coarsening_map(thrackle24, other)


def test_common_refinement(delta24):
    a = secfan.regular_subdivision(delta24, secfan.split_pseudometric(4, [0, 1]))
    b = secfan.regular_subdivision(delta24, secfan.split_pseudometric(4, [0, 2]))
    refined = secfan.common_refinement(a, b)
    assert refined.is_triangulation
    assert refined.key == ((0, 1, 2, 3), (0, 2, 3, 4), (1, 2, 3, 5), (2, 3, 4, 5))


def test_coherent_sum(delta24):
    d1 = secfan.split_pseudometric(4, [0, 1])
    d2 = secfan.split_pseudometric(4, [0, 2])
    total = d1 + d2
    assert secfan.is_coherent_sum(delta24, total, [d1, d2])
    assert secfan.is_coherent_decomposition(delta24, total, d1, d2)
    with pytest.raises(secfan.InputError):
        secfan.is_coherent_sum(delta24, total, [d1])


def test_matroidal_and_dressian(split24, thrackle24):
    assert secfan.all_cells_matroidal(split24)
    assert not secfan.all_cells_matroidal(thrackle24)
    assert secfan.is_tropical_pluecker((2, 4), secfan.split_pseudometric(4, [0, 1]))
    assert not secfan.is_tropical_pluecker((2, 4), secfan.thrackle(4))
    assert secfan.satisfies_three_term_pluecker((2, 4), secfan.split_pseudometric(4, [0, 1]).as_height())
    assert not secfan.satisfies_three_term_pluecker((2, 4), secfan.thrackle(4).as_height())


def test_multisplit(split24, thrackle24):
    assert secfan.is_multisplit(split24) == (True, 2)
    assert secfan.is_multisplit(thrackle24).is_multisplit is False


def test_describe(split24):
    report = secfan.describe(split24)
    assert report.spread == 2
    assert report.dual_edges == 1
    assert report.dual_complete
    assert report.split
    assert report.matroidal


def test_json(split24):
    data = split24.to_json()
    assert secfan.Subdivision.from_json(split24.config, data) == split24
    with pytest.raises(secfan.InputError):
        secfan.Subdivision.from_json(split24.config, {})
    with pytest.raises(secfan.InputError):
        secfan.Subdivision(split24.config, [(0, 6)])


@pytest.mark.parametrize(
    "n", [5, 6, pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]
)
def test_lambda_subdivision(n):
    config = secfan.vertices((2, n))
    sub = secfan.regular_subdivision(config, secfan.lambda_lift((2, n)))
    assert sub.spread == n
    assert secfan.is_valid_subdivision(sub)
    # two big cells and n - 2 unit simplices
    big = secfan.eulerian(n - 2, 2)
    assert sorted(sub.cell_volumes) == [1] * (n - 2) + [big] * 2
    assert secfan.is_coarsest_subdivision(config, sub)
    assert not secfan.all_cells_matroidal(sub)
    assert secfan.is_multisplit(sub).is_multisplit is False
    assert secfan.lambda_lift((2, n)) == secfan.kappa_lift((2, n))


@pytest.mark.parametrize(
    ("k", "n", "volumes"),
    [
        (3, 6, [11] * 6),
        pytest.param(3, 7, [26] * 4 + [66] * 3, marks=pytest.mark.slow),
    ],
)
def test_kappa_subdivision(k, n, volumes):
    config = secfan.vertices((k, n))
    sub = secfan.regular_subdivision(config, secfan.kappa_lift((k, n)))
    assert sub.spread == n
    assert sorted(sub.cell_volumes) == volumes
    assert sum(volumes) == secfan.eulerian(n - 1, k)
    report = secfan.describe(sub)
    assert report.dual_complete
    assert report.dual_edges == n * (n - 1) // 2
    assert secfan.is_coarsest_subdivision(config, sub)


def test_lambda_and_kappa_differ_for_k3():
    config = secfan.vertices((3, 6))
    lam = secfan.regular_subdivision(config, secfan.lambda_lift((3, 6)))
    kappa = secfan.regular_subdivision(config, secfan.kappa_lift((3, 6)))
    assert secfan.lambda_lift((3, 6)) != secfan.kappa_lift((3, 6))
    assert lam.key != kappa.key


def test_lambda_not_in_dressian():
    config = secfan.vertices((3, 6))
    sub = secfan.regular_subdivision(config, secfan.lambda_lift((3, 6)))
    assert secfan.is_valid_subdivision(sub)
    assert not secfan.is_tropical_pluecker((3, 6), secfan.lambda_lift((3, 6)))


SEEDS = [*range(100), *(pytest.param(seed, marks=pytest.mark.slow) for seed in range(100, 1000))]


@pytest.mark.parametrize("seed", SEEDS)
def test_random_liftings(delta25, seed):
    rng = np.random.default_rng(seed)
    heights = rng.integers(0, 20, size=delta25.npoints).tolist()
    sub = secfan.regular_subdivision(delta25, heights)
    assert secfan.is_valid_subdivision(sub)
    assert sum(sub.cell_volumes) == delta25.total_volume
    assert secfan.is_tropical_pluecker((2, 5), heights) == secfan.satisfies_three_term_pluecker(
        (2, 5), heights
    )

    # adding an affine function keeps the subdivision
    affine = rng.integers(-5, 6, size=delta25.ambient_dim + 1)
    shifted = (np.array(heights) + np.array(delta25.points) @ affine[:-1] + affine[-1]).tolist()
    assert secfan.regular_subdivision(delta25, shifted).key == sub.key

    env = secfan.envelope(delta25, heights)
    assert sorted(secfan.dual_cell(env, v) for v in range(len(env.vertices))) == list(sub.key)

    if sub.spread > 1:
        assert secfan.coherency_index(delta25, heights, heights) == 1
        for ray in secfan.secondary_rays(delta25, sub, check=False):
            assert secfan.coarsening_is_contraction(sub, ray.subdivision)

    result = secfan.split_decompose(delta25, heights)
    total = result.prime_part
    for part, c in result.coefficients.items():
        total = total + result.representatives[part] * c
    assert total.values == tuple(heights)
    prime = secfan.regular_subdivision(delta25, result.prime_part)
    for ray in secfan.secondary_cone(delta25, prime).rays:
        assert secfan.regular_subdivision(delta25, ray).spread != 2
