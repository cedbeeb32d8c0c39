# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

import secfan
from secfan import io
from secfan.io import jsonio

CELLS = ((0, 1, 2), (1, 2))
SMALL = (Fraction(1, 2), Fraction(1), Fraction(1, 4))


def test_existence():
    assert io.to_cf_contiguous is not None
    assert io.from_cf_indexed is not None
    assert io.read_distance_file is not None
    assert io.read_checkpoint is not None
    assert io.to_dot is not None


def test_cf_contiguous():
    content, counts = io.to_cf_contiguous(CELLS)
    assert content.tolist() == [0, 1, 2, 1, 2]
    assert counts.tolist() == [3, 2]
    assert io.from_cf_contiguous(content, counts) == CELLS
    with pytest.raises(secfan.InputError):
        io.from_cf_contiguous([0, 1], [3])
    with pytest.raises(secfan.InputError):
        io.from_cf_contiguous([0, 1], [3, -1])


def test_cf_indexed():
    content, index = io.to_cf_indexed(CELLS)
    assert content.tolist() == [0, 1, 2, 1, 2]
    assert index.tolist() == [0, 0, 0, 1, 1]
    assert io.from_cf_indexed(content, index) == CELLS
    # entries need not be grouped by cell
    assert io.from_cf_indexed([1, 2, 0, 1, 2], [1, 1, 0, 0, 0]) == CELLS
    assert io.from_cf_indexed([], []) == ()
    with pytest.raises(secfan.InputError):
        io.from_cf_indexed([0], [0, 1])
    with pytest.raises(secfan.InputError):
        io.from_cf_indexed([0, 1], [0, -1])


def test_parse_decimal():
    assert io.parse_decimal("0.09010340") == Fraction(901034, 10**7)
    assert io.parse_decimal("1e-3") == Fraction(1, 1000)
    assert io.parse_decimal(" 2 ") == 2
    for bad in ["1/2", "-1", "nan", "inf", "x"]:
        with pytest.raises(secfan.InputError):
            io.parse_decimal(bad)


def test_format_decimal():
    assert io.format_decimal(Fraction(1, 3)) == "0.33333333"
    assert io.format_decimal(Fraction(2, 3)) == "0.66666667"
    assert io.format_decimal(Fraction(5)) == "5.00000000"
    assert io.format_decimal(Fraction(-1, 8), 2) == "-0.12"
    assert io.format_decimal(Fraction(1, 200), 2) == "0.00"


@pytest.mark.parametrize(
    "text",
    [
        "0 0.5 1\n0.5 0 0.25\n1 0.25 0\n",
        "# upper triangle\n0.5 1\n0.25\n",
        "0 0.5 1\n0 0.25\n0\n",
        "0\n0.5 0\n1 0.25 0\n",
        "0.5\n1 0.25\n",
    ],
)
def test_distance_layouts(text):
    matrix = io.parse_distance_text(text)
    assert matrix.names is None
    assert matrix.metric.values == SMALL


@pytest.mark.parametrize(
    "text",
    [
        "3\nA 0 0.5 1\nB 0.5 0 0.25\nC 1 0.25 0\n",
        "3\nA\nB 0.5\nC 1 0.25\n",
        "A B C\n0 0.5 1\n0.5 0 0.25\n1 0.25 0\n",
        "A 0 0.5 1\nB 0.5 0 0.25\nC 1 0.25 0\n",
    ],
)
def test_named_distance_layouts(text):
    matrix = io.parse_distance_text(text)
    assert matrix.names == ("A", "B", "C")
    assert matrix.metric.values == SMALL


def test_bad_distances(tmp_path):
    for text in [
        "",
        "0 0.5 1\n0.4 0 0.25\n1 0.25 0\n",
        "0 1\n1\n1 1 1\n",
        "4\nA 0 0.5 1\nB 0.5 0 0.25\nC 1 0.25 0\n",
        "A B\n0 0.5 1\n0.5 0 0.25\n1 0.25 0\n",
    ]:
        with pytest.raises(secfan.InputError):
            io.parse_distance_text(text)
    with pytest.raises(secfan.InputError):
        io.read_distance_file(tmp_path / "missing.dist")


def test_bees_file(bees_path):
    matrix = io.read_distance_file(bees_path)
    assert matrix.metric.n == 6
    assert matrix.metric(0, 1) == Fraction(901034, 10**7)


def test_format_distance_matrix():
    d = secfan.DissimilarityMap(3, SMALL)
    text = io.format_distance_matrix(d, ["A", "B", "C"], digits=2)
    assert text == "A B C\n0.00 0.50 1.00\n0.00 0.25\n0.00\n"
    assert io.parse_distance_text(text).metric == d


def test_rationals():
    assert io.encode_rational(Fraction(1, 3)) == "1/3"
    assert io.encode_rational(4) == "4"
    assert io.decode_rational("2/4") == Fraction(1, 2)
    assert io.decode_rational(7) == 7
    for bad in [0.5, True, None]:
        with pytest.raises(secfan.InputError):
            io.decode_rational(bad)
    assert io.decode_vector(["1/2", 3]) == (Fraction(1, 2), Fraction(3))
    with pytest.raises(secfan.InputError):
        io.decode_vector("1/2")


def test_json_files(tmp_path):
    path = tmp_path / "out.json"
    document = {"ray": io.encode_vector([Fraction(1, 3), 2]), "total": 3}
    io.write_json(path, document)
    assert io.read_json(path) == document
    assert not (tmp_path / "out.json.tmp").exists()

    (tmp_path / "list.json").write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(secfan.InputError):
        io.read_json(tmp_path / "list.json")
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(secfan.InputError):
        io.read_json(tmp_path / "broken.json")


def test_write_atomic(tmp_path, monkeypatch, delta24):
    path = tmp_path / "state.txt"
    path.write_text("old", encoding="utf-8")
    assert io.write_atomic(path, "new\n") == path
    assert path.read_text(encoding="utf-8") == "new\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["state.txt"]

    written = []
    write_atomic = jsonio.write_atomic

    def recording_write(target, text):
        written.append(target)
        return write_atomic(target, text)

    monkeypatch.setattr(jsonio, "write_atomic", recording_write)
    io.write_json(tmp_path / "a.json", {})
    io.write_checkpoint(tmp_path / "b.jsonl", delta24, 1, io.CheckpointState({}, set()))
    assert [p.name for p in map(Path, written)] == ["a.json", "b.jsonl"]


def test_checkpoint(tmp_path, delta24, delta25, thrackle24):
    path = tmp_path / "search.jsonl"
    state = io.CheckpointState({thrackle24.key: True, ((0, 1, 2, 3, 4),): False}, {((1, 2),)})
    io.write_checkpoint(path, delta24, 48, state)
    header = json.loads(path.read_text(encoding="utf-8").splitlines()[0])
    assert header["format"] == "secfan-checkpoint"
    assert header["regular"] == 2
    assert io.read_checkpoint(path, delta24, 48) == state

    with pytest.raises(secfan.InputError):
        io.read_checkpoint(path, delta24, 24)
    with pytest.raises(secfan.InputError):
        io.read_checkpoint(path, delta25, 48)

    lines = path.read_text(encoding="utf-8").splitlines()
    path.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    with pytest.raises(secfan.InputError):
        io.read_checkpoint(path, delta24, 48)

    path.write_text(json.dumps({"format": "other"}) + "\n", encoding="utf-8")
    with pytest.raises(secfan.InputError):
        io.read_checkpoint(path, delta24, 48)


def test_dual_graph_for_dot(thrackle24):
    graph = io.dual_graph_for_dot(thrackle24)
    assert graph.number_of_nodes() == 4
    assert graph.number_of_edges() == 4
    assert all(data["label"] == '"4"' for _, data in graph.nodes(data=True))


def test_tight_span_for_dot(delta24):
    span = secfan.tight_span(delta24, secfan.thrackle(4))
    graph = io.tight_span_for_dot(span)
    assert graph.number_of_nodes() == 4
    assert graph.number_of_edges() == 4


def test_to_dot(tmp_path, split24):
    pytest.importorskip("pydot")
    path = tmp_path / "dual.dot"
    text = io.write_dot(io.dual_graph_for_dot(split24), path)
    assert "c0" in text
    assert "c1" in text
    assert path.read_text(encoding="utf-8") == text
