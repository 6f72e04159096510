"""Tests for cyclic permutations and regular embeddings."""

import pytest

from src.gemcraft.embedding import (
    CyclicPermutation,
    all_permutations,
    embed,
    genus_formula_variants,
    genus_table,
    regular_genus_formula,
)
from src.gemcraft.exceptions import PreconditionError
from src.gemcraft.graph import DISK, SPHERE, ColouredGraph


class TestCyclicPermutation:
    """Normalization of cyclic colour orders."""

    @pytest.mark.parametrize(
        "order, expected",
        [
            ((0, 1, 2, 3), (0, 1, 2, 3)),
            ((3, 2, 1, 0), (0, 1, 2, 3)),
            ((1, 3, 0, 2), (0, 2, 1, 3)),
        ],
    )
    def test_normalized_up_to_rotation_and_reversal(
        self, order: tuple[int, ...], expected: tuple[int, ...]
    ) -> None:
        assert CyclicPermutation.of(order).order == expected

    def test_parse(self) -> None:
        assert CyclicPermutation.parse("0,2,1,3") == CyclicPermutation.parse("0213")
        assert str(CyclicPermutation.parse("0,2,1,3")) == "(0,2,1,3)"

    def test_pairs_and_rotation(self) -> None:
        eps = CyclicPermutation.of((0, 1, 2, 3))
        assert eps.pairs() == ((0, 1), (1, 2), (2, 3), (3, 0))
        assert eps.ending_with(3) == (0, 1, 2, 3)
        assert eps.ending_with(1) == (2, 3, 0, 1)

    def test_rejects_non_permutation(self) -> None:
        with pytest.raises(PreconditionError):
            CyclicPermutation.of((0, 0, 1, 2))

    def test_three_essentially_distinct(self) -> None:
        assert len(set(all_permutations())) == 3


class TestEmbedding:
    """Faces, Euler characteristic and genus of regular embeddings."""

    def test_sphere_embeds_in_the_sphere(self, sphere: ColouredGraph) -> None:
        table = genus_table(sphere)
        assert len(table) == 3
        assert set(table.values()) == {SPHERE}

    def test_ball_embeds_in_a_disk(self, ball: ColouredGraph) -> None:
        emb = embed(ball, (0, 1, 2, 3))
        assert emb.surface == DISK
        assert len(emb.boundary_circles) == 1
        assert len(emb.boundary_faces()) == 2

    def test_face_lookup(self, sphere: ColouredGraph) -> None:
        emb = embed(sphere, (0, 1, 2, 3))
        assert len(emb.faces) == 4
        assert emb.faces[emb.face_at(0, 0)].colours == (0, 1)

    @pytest.mark.parametrize("fixture", ["sphere", "ball", "trefoil", "torus_boundary_gem"])
    def test_euler_identity(self, fixture: str, request: pytest.FixtureRequest) -> None:
        g = request.getfixturevalue(fixture)
        for eps in all_permutations():
            emb = embed(g, eps)
            chi = emb.vertex_count - emb.edge_count + len(emb.faces)
            assert chi == emb.surface.euler_characteristic
            assert emb.euler_characteristic == chi

    def test_genus_formula_on_the_sphere(self, sphere: ColouredGraph) -> None:
        assert genus_formula_variants(sphere, (0, 1, 2, 3)) == (0, 0)
        assert regular_genus_formula(sphere, (0, 2, 1, 3)) == 0

    def test_genus_formula_refuses_singular_graphs(self, trefoil: ColouredGraph) -> None:
        with pytest.raises(PreconditionError, match="gems only"):
            genus_formula_variants(trefoil, (0, 1, 2, 3))


    @pytest.mark.parametrize(
        "eps, genus", [((0, 1, 2, 3), 2), ((0, 1, 3, 2), 8), ((0, 2, 1, 3), 10)]
    )
    def test_genus_formula_on_a_torus_boundary_gem(
        self, torus_boundary_gem: ColouredGraph, eps: tuple[int, ...], genus: int
    ) -> None:
        """Both variants count the disk residues met by the boundary."""
        assert genus_formula_variants(torus_boundary_gem, eps) == (genus, genus)
        assert regular_genus_formula(torus_boundary_gem, eps) == genus
        assert embed(torus_boundary_gem, eps).genus == genus

    def test_genus_formula_on_the_ball(self, ball: ColouredGraph) -> None:
        for eps in all_permutations():
            assert genus_formula_variants(ball, eps) == (0, 0)
            assert regular_genus_formula(ball, eps) == 0
