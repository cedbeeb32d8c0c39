# BSD 3-Clause License; see LICENSE

from __future__ import annotations

from typing import Any


def pydot() -> Any:
    try:
        import pydot as pd  # pylint: disable=C0415

        return pd
    except ModuleNotFoundError as err:
        error_message = """to export DOT files, you must install pydot:

    pip install pydot

or

    pip install secfan[dot]
"""
        raise ModuleNotFoundError(error_message) from err
