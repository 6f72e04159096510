"""Tests for the pseudocomplex, singular vertices, capping and desingularization."""

import pytest

from src.gemcraft.complex import (
    boundary_surface,
    build_complex,
    cap_off,
    complex_to_json,
    desingularize,
    singular_vertices,
)
from src.gemcraft.embedding import embed
from src.gemcraft.exceptions import PreconditionError
from src.gemcraft.graph import SPHERE, ColouredGraph, census, classify, colour_isomorphic, residues
from src.gemcraft.seifert import TORUS


class TestPseudocomplex:
    """Counts and Euler characteristic of K(Γ)."""

    def test_sphere_complex(self, sphere: ColouredGraph) -> None:
        k = build_complex(sphere)
        assert k.tetrahedron_count == 2
        assert k.vertex_count == 4
        assert k.edge_count == 6
        assert k.face_count == 4
        assert k.euler_characteristic == 0

    def test_ball_complex(self, ball: ColouredGraph) -> None:
        k = build_complex(ball)
        assert k.face_count == 5
        assert k.euler_characteristic == 1
        assert boundary_surface(k).surfaces == [SPHERE]

    def test_closed_complex_has_no_boundary(self, sphere: ColouredGraph) -> None:
        assert boundary_surface(build_complex(sphere)).components == ()

    def test_debug_dump(self, sphere: ColouredGraph) -> None:
        dump = complex_to_json(build_complex(sphere))
        assert len(dump["tetrahedra"]) == 2
        assert dump["vertex_classes"] == {"0": 1, "1": 1, "2": 1, "3": 1}
        assert dump["euler_characteristic"] == 0


class TestSingularVertices:
    """Vertices of K(Γ) with non-spherical links."""

    def test_gem_has_none(self, sphere: ColouredGraph) -> None:
        found = singular_vertices(sphere)
        assert len(found) == 0
        assert found.euler_characteristic == 0

    def test_trefoil_has_one_torus_link(self, trefoil: ColouredGraph) -> None:
        found = singular_vertices(trefoil)
        assert len(found) == 1
        (vertex,) = found.members
        assert vertex.label == 0
        assert vertex.link == TORUS
        assert found.euler_characteristic == 1

    def test_needs_a_regular_graph(self, ball: ColouredGraph) -> None:
        with pytest.raises(PreconditionError):
            singular_vertices(ball)


class TestCapOff:
    """Coning off the boundary of a gem."""

    def test_capping_the_ball_gives_the_sphere(
        self, ball: ColouredGraph, sphere: ColouredGraph
    ) -> None:
        capped = cap_off(ball, 0)
        assert capped.is_regular
        assert classify(capped).label() == "ClosedGem"
        assert colour_isomorphic(capped, sphere) is not None
        assert capped.name == "cap0(ball)"

    @pytest.mark.parametrize("colour", [3, -1])
    def test_rejects_bad_colour(self, ball: ColouredGraph, colour: int) -> None:
        with pytest.raises(PreconditionError):
            cap_off(ball, colour)

    def test_rejects_closed_graph(self, sphere: ColouredGraph) -> None:
        with pytest.raises(PreconditionError, match="boundary"):
            cap_off(sphere, 0)


class TestDesingularize:
    """Truncation of the singular 0-vertices of Λ((3,2),(2,1))."""

    def test_result_is_a_gem_with_torus_boundary(self, trefoil: ColouredGraph) -> None:
        result = desingularize(trefoil)
        assert classify(result.graph).label() == "BoundaryGem"
        assert boundary_surface(build_complex(result.graph)).surfaces == [TORUS]
        assert result.graph.vertex_count == 60

    def test_regular_genus_is_kept(self, trefoil: ColouredGraph) -> None:
        result = desingularize(trefoil)
        before = embed(trefoil, (0, 1, 2, 3)).surface.genus
        assert embed(result.graph, (0, 1, 2, 3)).surface.genus == before

    def test_collar_and_inner_cycles(self, trefoil: ColouredGraph) -> None:
        result = desingularize(trefoil)
        assert census(result.graph)["g02"] == 7
        kinds = sorted(
            result.residue_type((0, 2), residue.vertices)
            for residue in residues(result.graph, (0, 2))
        )
        assert kinds == ["1'-3"] * 4 + ["1-3"] * 3

    def test_pieces_of_a_truncated_vertex(self, trefoil: ColouredGraph) -> None:
        result = desingularize(trefoil)
        assert result.pieces_of(0) == {"T1": 0, "T2": 1, "T3": 2}
        assert result.source is trefoil

    def test_needs_a_singular_graph(self, sphere: ColouredGraph) -> None:
        with pytest.raises(PreconditionError, match="SingularRegular"):
            desingularize(sphere)
