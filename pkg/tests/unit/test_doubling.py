"""Tests for doubling planar diagrams into coloured graphs."""

from dataclasses import replace

import pytest

from src.gemcraft.diagram import PlanarPresentation
from src.gemcraft.doubling import (
    DOUBLING_PERMUTATION,
    augmented_connected,
    double_diagram,
    doubled_ids,
    doubled_labels,
    shifted_axis,
)
from src.gemcraft.embedding import embed
from src.gemcraft.exceptions import PreconditionError
from src.gemcraft.graph import ColouredGraph, classify, colour_isomorphic
from src.gemcraft.heegaard import diagram_from_singular
from src.gemcraft.seifert import LambdaParams, planar_presentation, standard_diagram


def test_doubling_the_standard_diagram(trefoil: ColouredGraph) -> None:
    doubled = double_diagram(standard_diagram(LambdaParams(3, 2, 2, 1)))
    assert doubled.vertex_count == 20
    assert classify(doubled).label() == "SingularRegular(0)"
    assert colour_isomorphic(doubled, trefoil) is not None
    assert doubled.name == "double(H((3,2),(2,1)))"


def test_parallel_copies_are_adjacent_ids() -> None:
    planar = planar_presentation(LambdaParams(3, 2, 2, 1))
    ids = doubled_ids(planar)
    assert sorted(ids.values()) == list(range(0, 20, 2))
    labels = doubled_labels(planar)
    first = ids[0]
    assert labels[first] == "A1"
    assert labels[first + 1] == "A1~"


@pytest.mark.parametrize(
    "w_orders, message",
    [
        (((0,),), "lie on no W-curve"),
        (((0, 1), (1,)), "lies on two W-curves"),
    ],
)
def test_points_must_lie_on_one_w_curve(
    w_orders: tuple[tuple[int, ...], ...], message: str
) -> None:
    planar = PlanarPresentation(
        point_labels=("x", "y"),
        v_orders=(),
        axis=(),
        w_orders=w_orders,
        w_arcs=tuple(("upper",) * len(order) for order in w_orders),
    )
    with pytest.raises(PreconditionError, match=message):
        doubled_ids(planar)


def test_needs_a_planar_presentation(trefoil: ColouredGraph) -> None:
    with pytest.raises(PreconditionError, match="planar presentation"):
        double_diagram(diagram_from_singular(trefoil, 1))


def _split_presentation() -> PlanarPresentation:
    """Trefoil points with the b crossings moved off the axis onto the second V-curve."""
    base = planar_presentation(LambdaParams(3, 2, 2, 1))
    return PlanarPresentation(
        point_labels=base.point_labels,
        v_orders=(
            ((0, True), (1, True), (2, True)),
            ((3, True), (4, True), (8, True), (9, True)),
        ),
        axis=((5, True), (6, True), (7, True)),
        w_orders=((5, 0, 6, 1, 7, 2), (8, 3, 9, 4)),
        w_arcs=(("upper", "lower") * 3, ("upper", "lower") * 2),
    )


class TestAxisChecks:
    """The axis must join the curve family and leave a graph of the diagram's genus."""

    @pytest.mark.parametrize(
        "params", [LambdaParams(3, 2, 2, 1), LambdaParams(4, 1, 3, 1), LambdaParams(5, 2, 2, 1)]
    )
    def test_doubled_graph_embeds_in_the_diagram_surface(self, params: LambdaParams) -> None:
        d = standard_diagram(params)
        doubled = double_diagram(d)

        assert d.planar is not None
        assert augmented_connected(d.planar)
        surface = embed(doubled, DOUBLING_PERMUTATION).surface
        assert surface.orientable
        assert surface.genus == d.genus == 2

    def test_disconnected_family_is_detected(self) -> None:
        assert not augmented_connected(_split_presentation())

    def test_disconnected_family_is_refused(self) -> None:
        d = standard_diagram(LambdaParams(3, 2, 2, 1))
        with pytest.raises(PreconditionError, match="with the axis added is disconnected"):
            double_diagram(replace(d, planar=_split_presentation()))

    def test_no_valid_offset(self) -> None:
        d = standard_diagram(LambdaParams(3, 2, 2, 1))
        assert d.planar is not None
        broken = replace(
            d.planar, w_arcs=tuple(("upper",) * len(order) for order in d.planar.w_orders)
        )
        with pytest.raises(PreconditionError, match=r"no axis offset .* must alternate"):
            double_diagram(replace(d, planar=broken))

    def test_shifted_axis_rotates_crossing_sides(self) -> None:
        planar = replace(_split_presentation(), axis=((5, True), (6, False), (7, False)))

        assert shifted_axis(planar, 0) is planar
        assert shifted_axis(planar, 3) is planar
        assert shifted_axis(planar, 1).axis == ((5, False), (6, False), (7, True))
        assert [point for point, _ in shifted_axis(planar, 2).axis] == [5, 6, 7]
