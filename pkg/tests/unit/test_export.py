"""Tests for DOT and SVG drawings."""

import pytest

from src.gemcraft.exceptions import PreconditionError
from src.gemcraft.export import to_dot, to_svg
from src.gemcraft.graph import ColouredGraph


class TestDot:
    """Graphviz output."""

    def test_sphere(self, sphere: ColouredGraph) -> None:
        text = to_dot(sphere)
        assert text.startswith('graph "S3" {\n')
        assert text.count(" -- ") == 4
        assert "0 -- 1 [color=darkgreen, style=bold, label=\"3\"];" in text
        assert text.endswith("}\n")

    def test_every_edge_is_drawn(self, trefoil: ColouredGraph) -> None:
        assert to_dot(trefoil).count(" -- ") == 40

    def test_boundary_vertices_are_doubled(self, ball: ColouredGraph) -> None:
        assert to_dot(ball).count("peripheries=2") == 2

    def test_faces_as_comments(self, sphere: ColouredGraph) -> None:
        text = to_dot(sphere, (0, 1, 2, 3))
        assert "  // embedding (0,1,2,3)" in text
        assert text.count("  // face ") == 4
        assert "  // face 0 (0, 1) cycle: 0 1" in text

    def test_labels(self, sphere: ColouredGraph) -> None:
        assert '0 [label="A&#x27;1"]' in to_dot(sphere, labels=["A'1", "B"])


class TestSvg:
    """Circular SVG drawings."""

    def test_draws_every_edge(self, trefoil: ColouredGraph) -> None:
        text = to_svg(trefoil)
        assert text.startswith("<svg ")
        assert text.count("<path ") == 40
        assert text.count("<circle ") == 20

    def test_size_limit(self, trefoil: ColouredGraph) -> None:
        with pytest.raises(PreconditionError, match="limited to 10 vertices"):
            to_svg(trefoil, max_vertices=10)
