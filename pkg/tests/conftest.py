"""Shared pytest fixtures for tests."""

import json
from collections.abc import Callable
from pathlib import Path

import pytest

from src.gemcraft.complex import desingularize
from src.gemcraft.formats import graph_to_json
from src.gemcraft.graph import ColouredGraph
from src.gemcraft.seifert import LambdaParams, lambda_graph

S3_COMPACT = """\
# the 2-vertex 3-sphere
0: (0 1)
1: (0 1)
2: (0 1)
3: (0 1)
"""


@pytest.fixture
def sphere() -> ColouredGraph:
    """The 2-vertex crystallization of S³."""
    return ColouredGraph.from_edges(2, [(0, 1, c) for c in range(4)], "S3")


@pytest.fixture
def ball() -> ColouredGraph:
    """Two tetrahedra glued along three faces: a 3-ball."""
    return ColouredGraph.from_edges(2, [(0, 1, c) for c in range(3)], "ball")


@pytest.fixture
def trefoil_params() -> LambdaParams:
    return LambdaParams(3, 2, 2, 1)


@pytest.fixture
def trefoil(trefoil_params: LambdaParams) -> ColouredGraph:
    """Λ((3,2),(2,1)), a singular graph of the trefoil complement."""
    return lambda_graph(trefoil_params)


@pytest.fixture
def torus_boundary_gem(trefoil: ColouredGraph) -> ColouredGraph:
    """A gem with one torus boundary component, from the trefoil graph."""
    return desingularize(trefoil).graph


@pytest.fixture
def graph_file(tmp_path: Path) -> Callable[..., Path]:
    """Write a graph as gem-v1 JSON and return the path."""

    def write(g: ColouredGraph, name: str = "graph.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(graph_to_json(g)), encoding="utf-8")
        return path

    return write
