# BSD 3-Clause License; see LICENSE

"""
Flat encodings of cell lists, after the CF conventions for ragged arrays.

The contiguous encoding stores all point indices in one ``content`` array
and the cell sizes in ``counts``; the indexed encoding stores, for every
entry of ``content``, the number of the cell it belongs to.
"""

from __future__ import annotations

from collections.abc import Iterable

import awkward as ak
import numpy as np

from .._errors import InputError
from .._typing import Cell


def _cells_array(cells: Iterable[Iterable[int]]) -> ak.Array:
    return ak.Array([[int(i) for i in c] for c in cells])


def _as_cells(array: ak.Array) -> tuple[Cell, ...]:
    return tuple(tuple(int(i) for i in c) for c in ak.to_list(array))


def to_cf_contiguous(cells: Iterable[Iterable[int]]) -> tuple[np.ndarray, np.ndarray]:
    y = _cells_array(cells)
    return ak.to_numpy(ak.flatten(y)).astype(np.int64), ak.to_numpy(ak.num(y)).astype(np.int64)


def from_cf_contiguous(content: Iterable[int], counts: Iterable[int]) -> tuple[Cell, ...]:
    cont = np.asarray(list(content), dtype=np.int64)
    cnts = np.asarray(list(counts), dtype=np.int64)
    if cont.ndim != 1 or cnts.ndim != 1 or (cnts < 0).any() or cnts.sum() != len(cont):
        msg = f"counts summing to {int(cnts.sum())} do not match {len(cont)} content entries"
        raise InputError(msg)
    return _as_cells(ak.unflatten(cont, cnts))


def to_cf_indexed(cells: Iterable[Iterable[int]]) -> tuple[np.ndarray, np.ndarray]:
    y = _cells_array(cells)
    index, _ = ak.broadcast_arrays(np.arange(len(y), dtype=np.int64), y)
    return ak.to_numpy(ak.flatten(y)).astype(np.int64), ak.to_numpy(ak.flatten(index)).astype(np.int64)


def from_cf_indexed(content: Iterable[int], index: Iterable[int]) -> tuple[Cell, ...]:
    cont = np.asarray(list(content), dtype=np.int64)
    ind = np.asarray(list(index), dtype=np.int64)
    if cont.shape != ind.shape or (len(ind) and ind.min() < 0):
        msg = "content and index must be 1-d arrays of the same length with nonnegative cell numbers"
        raise InputError(msg)
    if len(ind) == 0:
        return ()
    counts = np.zeros(int(ind.max()) + 1, dtype=np.int64)
    np.add.at(counts, ind, 1)
    return _as_cells(ak.unflatten(cont[np.argsort(ind, kind="stable")], counts))


__all__ = ["from_cf_contiguous", "from_cf_indexed", "to_cf_contiguous", "to_cf_indexed"]
