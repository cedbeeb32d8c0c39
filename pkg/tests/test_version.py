# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import secfan


def test_version():
    assert isinstance(secfan.__version__, str)


def test_public_names():
    for name in secfan.__all__:
        assert getattr(secfan, name) is not None
    for name in secfan.io.__all__:
        assert getattr(secfan.io, name) is not None
