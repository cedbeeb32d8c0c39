# BSD 3-Clause License; see LICENSE

"""
DOT export of dual graphs and tight-span 1-skeleta (needs ``pydot``).
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path
from typing import Optional

import networkx as nx

from .._envelope import TightSpan
from .._import import pydot
from .._subdivide import Subdivision, dual_graph, label_cells


def _fmt(values: Iterable[object]) -> str:
    return "(" + ", ".join(str(x) for x in values) + ")"


def dual_graph_for_dot(subdivision: Subdivision) -> nx.Graph:
    """The dual graph with string attributes only; nodes are labeled by cell size."""
    source = dual_graph(subdivision, check=False)
    labels = label_cells(subdivision)
    graph = nx.Graph(name="dual_graph")
    for node, data in source.nodes(data=True):
        graph.add_node(
            f"c{node}",
            label=f'"{data["size"]}"',
            tooltip=f'"{" ".join(labels[node])}"',
        )
    for u, v, data in source.edges(data=True):
        graph.add_edge(f"c{u}", f"c{v}", tooltip=f'"{_fmt(data["face"])}"')
    return graph


def tight_span_for_dot(span: TightSpan) -> nx.Graph:
    """The 1-skeleton of a tight span; nodes are labeled by their coordinates."""
    source = span.skeleton()
    graph = nx.Graph(name="tight_span")
    for node, data in source.nodes(data=True):
        graph.add_node(
            f"v{node}",
            label=f'"{_fmt(data["coords"])}"',
            tooltip=f'"cell {_fmt(data["cell"])}"',
        )
    for u, v in source.edges:
        graph.add_edge(f"v{u}", f"v{v}")
    return graph


def to_dot(graph: nx.Graph) -> str:
    pydot()
    return str(nx.nx_pydot.to_pydot(graph).to_string())


def write_dot(graph: nx.Graph, path: Optional[str | Path] = None) -> str:
    """Renders ``graph`` as DOT and writes it to ``path`` if given."""
    text = to_dot(graph)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


__all__ = ["dual_graph_for_dot", "tight_span_for_dot", "to_dot", "write_dot"]
