# BSD 3-Clause License; see LICENSE

from __future__ import annotations

from fractions import Fraction

import pytest

import secfan
from secfan._exactgeom import (
    as_fraction,
    integer_det,
    lower_facets,
    normalize_line,
    nullspace,
    primitive,
    rank,
)


def test_existence():
    assert secfan.HCone is not None
    assert secfan.VCone is not None
    assert secfan.dd_rays is not None
    assert secfan.hrep is not None
    assert secfan.reduce_hcone is not None
    assert secfan.cone_dim is not None
    assert secfan.strict_interior_point is not None
    assert secfan.lattice_volume is not None


def test_as_fraction():
    assert as_fraction("0.25") == Fraction(1, 4)
    assert as_fraction(3) == 3
    with pytest.raises(secfan.InputError):
        as_fraction(0.25)
    with pytest.raises(secfan.InputError):
        as_fraction("abc")


def test_primitive():
    assert primitive((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert primitive((0, 0)) == (0, 0)
    assert normalize_line((0, -2, 4)) == (0, 1, -2)


def test_rank_and_nullspace():
    assert rank([[1, 2], [2, 4]]) == 1
    assert nullspace([[1, 1, 0]], 3) == [(-1, 1, 0), (0, 0, 1)]


def test_integer_det():
    assert integer_det([[2, 1], [1, 1]]) == 1
    assert integer_det([[0, 1], [1, 0]]) == -1
    assert integer_det([[1, 2], [2, 4]]) == 0


def test_orthant():
    cone = secfan.HCone(((1, 0), (0, 1)), (), 2)
    v = secfan.dd_rays(cone)
    assert v.rays == ((0, 1), (1, 0))
    assert v.lineality == ()
    assert v.dim == 2
    assert secfan.strict_interior_point(cone) == (1, 1)


def test_half_plane():
    v = secfan.dd_rays(secfan.HCone(((1, 0),), (), 2))
    assert v.rays == ((1, 0),)
    assert v.lineality == ((0, 1),)
    assert secfan.cone_dim(v) == 2


def test_equations():
    cone = secfan.HCone(((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((1, -1, 0),), 3)
    v = secfan.dd_rays(cone)
    assert v.rays == ((0, 0, 1), (1, 1, 0))
    assert secfan.cone_dim(cone) == 2


def test_zero_cone_has_no_interior():
    cone = secfan.HCone(((1, 0), (0, 1), (-1, -1)), (), 2)
    assert secfan.dd_rays(cone).rays == ()
    assert secfan.strict_interior_point(cone) is None


def test_reduce_hcone():
    cone = secfan.HCone(((1, 0), (0, 1), (1, 1)), (), 2)
    reduced = secfan.reduce_hcone(cone)
    assert reduced.inequalities == ((0, 1), (1, 0))
    assert secfan.hrep(secfan.dd_rays(cone)) == reduced


def test_row_length_is_checked():
    with pytest.raises(secfan.InputError):
        secfan.HCone(((1, 0, 0),), (), 2)


def test_contains_and_intersect():
    a = secfan.HCone(((1, 0),), (), 2)
    b = secfan.HCone(((0, 1),), (), 2)
    both = a.intersect(b)
    assert both.contains((1, 1))
    assert not both.contains((1, -1))
    assert a.contains((1, -1))


def test_lower_facets():
    square = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
    assert lower_facets(square) == [(0, 1, 2), (1, 2, 3)]
    flat = [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 2)]
    assert lower_facets(flat) == [(0, 1, 2, 3)]


def test_lattice_volume():
    assert secfan.lattice_volume([(0, 0), (1, 0), (0, 1), (1, 1)]) == 2
    assert secfan.lattice_volume([(0, 0), (2, 0), (0, 1)]) == 2
    assert secfan.lattice_volume([(0, 0), (1, 1), (2, 2)]) == 2
