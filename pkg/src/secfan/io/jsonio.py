# BSD 3-Clause License; see LICENSE

"""
JSON documents and JSON-lines checkpoints.

Rationals are written as strings ``"p/q"`` (or ``"p"`` for integers) so that
no value ever passes through a float. Cell lists inside checkpoints use the
contiguous encoding of :mod:`secfan.io.cf`.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any, NamedTuple

from .._configuration import PointConfiguration
from .._errors import InputError
from .._exactgeom import as_fraction
from .._typing import Cell, QVector, RationalLike
from .cf import from_cf_contiguous, to_cf_contiguous

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "secfan-checkpoint"
CHECKPOINT_VERSION = 1


def encode_rational(x: RationalLike) -> str:
    return str(as_fraction(x))


def decode_rational(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        msg = f"expected a rational written as a string or integer, got {text!r}"
        raise InputError(msg)
    return as_fraction(text)


def encode_vector(v: Iterable[RationalLike]) -> list[str]:
    return [encode_rational(x) for x in v]


def decode_vector(items: Any) -> QVector:
    if not isinstance(items, list):
        msg = f"expected a list of rationals, got {items!r}"
        raise InputError(msg)
    return tuple(decode_rational(x) for x in items)


def write_atomic(path: str | Path, text: str) -> Path:
    """Writes ``text`` to a sibling temporary file, then renames it over ``path``."""
    target = Path(path)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(target)
    return target


def write_json(path: str | Path, document: Mapping[str, Any]) -> None:
    write_atomic(path, json.dumps(document, indent=1) + "\n")


def read_json(path: str | Path) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        msg = f"cannot read {path}: {err.strerror}"
        raise InputError(msg) from err
    except json.JSONDecodeError as err:
        msg = f"{path} is not valid JSON: {err}"
        raise InputError(msg) from err
    if not isinstance(data, dict):
        msg = f"{path} does not hold a JSON object"
        raise InputError(msg)
    return data


class CheckpointState(NamedTuple):
    """
    Search state of an enumeration.

    Attributes:
        regular: Canonical forms of the regular triangulations found, each
            mapped to whether its flips have been explored.
        nonregular: Canonical forms found to be nonregular (never expanded).
    """

    regular: dict[tuple[Cell, ...], bool]
    nonregular: set[tuple[Cell, ...]]


def _cells_record(cells: Sequence[Cell], **flags: bool) -> dict[str, Any]:
    content, counts = to_cf_contiguous(cells)
    return {"content": content.tolist(), "counts": counts.tolist(), **flags}


def write_checkpoint(
    path: str | Path,
    config: PointConfiguration,
    group_order: int,
    state: CheckpointState,
) -> None:
    """
    Writes the search state as JSON lines: a header, then one line per
    triangulation orbit.
    """
    header = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        **config.to_json(),
        "group_order": group_order,
        "regular": len(state.regular),
        "nonregular": len(state.nonregular),
    }
    lines = [json.dumps(header)]
    for cells in sorted(state.regular):
        lines.append(json.dumps(_cells_record(cells, regular=True, expanded=state.regular[cells])))
    for cells in sorted(state.nonregular):
        lines.append(json.dumps(_cells_record(cells, regular=False, expanded=False)))
    target = write_atomic(path, "\n".join(lines) + "\n")
    logger.info(
        "checkpoint %s: %d regular, %d nonregular orbits",
        target,
        len(state.regular),
        len(state.nonregular),
    )


def read_checkpoint(
    path: str | Path, config: PointConfiguration, group_order: int
) -> CheckpointState:
    """
    Raises:
        InputError: if the file is corrupt or was written for another
            configuration or group.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        msg = f"cannot read checkpoint {path}: {err.strerror}"
        raise InputError(msg) from err
    lines = [line for line in text.splitlines() if line.strip()]
    try:
        records = [json.loads(line) for line in lines]
    except json.JSONDecodeError as err:
        msg = f"corrupt checkpoint {path}: {err}"
        raise InputError(msg) from err
    if not records or not isinstance(records[0], dict) or records[0].get("format") != CHECKPOINT_FORMAT:
        msg = f"{path} is not a secfan checkpoint"
        raise InputError(msg)
    header = records[0]
    if header.get("version") != CHECKPOINT_VERSION:
        msg = f"checkpoint version {header.get('version')!r} is not supported"
        raise InputError(msg)
    if PointConfiguration.from_json(header).points != config.points:
        msg = f"checkpoint {path} was written for a different configuration"
        raise InputError(msg)
    if header.get("group_order") != group_order:
        msg = f"checkpoint {path} was written for a group of order {header.get('group_order')}, not {group_order}"
        raise InputError(msg)

    state = CheckpointState({}, set())
    for number, record in enumerate(records[1:], start=2):
        try:
            cells = from_cf_contiguous(record["content"], record["counts"])
            regular = bool(record["regular"])
            expanded = bool(record["expanded"])
        except (KeyError, TypeError) as err:
            msg = f"corrupt checkpoint {path}, line {number}"
            raise InputError(msg) from err
        if regular:
            state.regular[cells] = expanded
        else:
            state.nonregular.add(cells)
    if len(state.regular) != header.get("regular") or len(state.nonregular) != header.get("nonregular"):
        msg = f"checkpoint {path} is truncated"
        raise InputError(msg)
    return state


__all__ = [
    "CheckpointState",
    "decode_rational",
    "decode_vector",
    "encode_rational",
    "encode_vector",
    "read_checkpoint",
    "read_json",
    "write_atomic",
    "write_checkpoint",
    "write_json",
]
