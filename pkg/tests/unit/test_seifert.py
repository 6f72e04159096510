"""Tests for the Λ family, Seifert invariants and the closed-form bound."""

import pytest

from src.gemcraft.exceptions import PreconditionError
from src.gemcraft.graph import ColouredGraph, classify, pair_census
from src.gemcraft.seifert import (
    LambdaParams,
    SeifertParams,
    canonical_reduction,
    complexity_bound,
    lambda_graph,
    lambda_vertex_names,
    planar_presentation,
    seifert_of,
    standard_diagram,
    torus_knot_graph,
    valid_parameter_tuples,
)


class TestParameters:
    """Validation of parameter tuples."""

    def test_str_and_crossings(self, trefoil_params: LambdaParams) -> None:
        assert str(trefoil_params) == "((3,2),(2,1))"
        assert trefoil_params.crossing_count == 5

    @pytest.mark.parametrize(
        "values, message",
        [
            ((4, 2, 3, 1), "not a coprime pair"),
            ((3, 4, 2, 1), "need 1 <= 4 <= 3"),
            ((3, 0, 2, 1), "need 1 <= 0 <= 3"),
        ],
    )
    def test_rejects_bad_tuples(self, values: tuple[int, int, int, int], message: str) -> None:
        with pytest.raises(PreconditionError, match=message):
            LambdaParams(*values)

    def test_seifert_params_need_coprime_fibres(self) -> None:
        with pytest.raises(PreconditionError):
            SeifertParams(4, 2, 3, 1)

    def test_valid_tuples_smallest_sweep(self) -> None:
        assert list(valid_parameter_tuples(4)) == [LambdaParams(2, 1, 2, 1)]

    def test_valid_tuples_are_lexicographic(self) -> None:
        assert list(valid_parameter_tuples(5)) == [
            LambdaParams(2, 1, 2, 1),
            LambdaParams(2, 1, 3, 1),
            LambdaParams(2, 1, 3, 2),
            LambdaParams(3, 1, 2, 1),
            LambdaParams(3, 2, 2, 1),
        ]

    def test_sweep_bounds(self) -> None:
        for params in valid_parameter_tuples(9):
            assert params.p >= 2 and params.q >= 2
            assert params.p + params.q <= 9


class TestBound:
    """Fibre invariants and the closed-form bound."""

    @pytest.mark.parametrize(
        "params, fibres, value",
        [
            (LambdaParams(3, 2, 2, 1), "(D2; (3,2),(2,1))", 0),
            (LambdaParams(4, 3, 3, 1), "(D2; (4,3),(3,1))", 1),
            (LambdaParams(5, 2, 2, 1), "(D2; (5,3),(2,1))", 1),
            (LambdaParams(5, 3, 3, 2), "(D2; (5,2),(3,2))", 1),
            (LambdaParams(2, 1, 2, 1), "(D2; (2,1),(2,1))", 0),
            (LambdaParams(3, 1, 3, 1), "(D2; (3,1),(3,1))", 0),
        ],
    )
    def test_torus_knot_and_small_bounds(
        self, params: LambdaParams, fibres: str, value: int
    ) -> None:
        s = seifert_of(params)
        assert s.describe() == fibres
        assert complexity_bound(s).value == value

    def test_inverse_twist_relation(self) -> None:
        for params in valid_parameter_tuples(10):
            s = seifert_of(params)
            assert (s.alpha * params.h) % params.p == 1 % params.p
            assert (s.beta * params.k) % params.q == 1 % params.q

    @pytest.mark.parametrize(
        "s, expected",
        [
            (SeifertParams(7, 2, 5, 2), (4, 0, 0)),
            (SeifertParams(7, 1, 5, 4), (6, 1, 1)),
            (SeifertParams(7, 6, 2, 1), (4, 1, 1)),
        ],
    )
    def test_deltas(self, s: SeifertParams, expected: tuple[int, int, int]) -> None:
        result = complexity_bound(s)
        assert (result.value, result.delta_alpha, result.delta_beta) == expected

    def test_fibers(self) -> None:
        assert SeifertParams(5, 3, 2, 1).fibers == ((5, 3), (2, 1))


class TestLambdaGraph:
    """Generation of Λ((p,h),(q,k)) by doubling."""

    def test_vertex_names(self, trefoil_params: LambdaParams) -> None:
        names = lambda_vertex_names(trefoil_params)
        assert len(names) == 20
        assert names[:4] == ["A1", "A'1", "C1", "C'1"]
        assert names[12:16] == ["B1", "B'1", "D1", "D'1"]

    def test_colour_three_adjacencies(self, trefoil: ColouredGraph) -> None:
        names = lambda_vertex_names(LambdaParams(3, 2, 2, 1))
        index = {name: vertex for vertex, name in enumerate(names)}
        assert trefoil.neighbour(index["A'1"], 3) == index["A3"]
        assert trefoil.neighbour(index["A'3"], 3) == index["B1"]
        assert trefoil.neighbour(index["B'2"], 3) == index["A2"]

    @pytest.mark.parametrize("params", list(valid_parameter_tuples(7)), ids=str)
    def test_census_of_the_family(self, params: LambdaParams) -> None:
        g = lambda_graph(params)
        s = params.crossing_count
        assert g.vertex_count == 4 * s
        assert pair_census(g) == (s, 3, s, s - 1, 2, s - 1)
        assert classify(g).label() == "SingularRegular(0)"

    def test_torus_knot_graph(self, trefoil: ColouredGraph) -> None:
        g = torus_knot_graph(3, 2)
        assert g == trefoil
        assert g.name == "Lambda((3,2),(2,1))"

    @pytest.mark.parametrize("p, q", [(4, 2), (2, 3), (3, 1)])
    def test_torus_knot_needs_coprime_p_above_q(self, p: int, q: int) -> None:
        with pytest.raises(PreconditionError):
            torus_knot_graph(p, q)

    def test_standard_diagram(self, trefoil_params: LambdaParams) -> None:
        d = standard_diagram(trefoil_params)
        assert d.genus == 2
        assert len(d.crossings()) == 5
        assert len(d.system_curves("V")) == 2
        assert len(d.system_curves("W")) == 1
        assert d.vertex_labels == ("A1", "A2", "A3", "B1", "B2")

    def test_planar_presentation(self, trefoil_params: LambdaParams) -> None:
        planar = planar_presentation(trefoil_params)
        assert len(planar.point_labels) == 10
        assert len(planar.w_orders) == 1
        assert sorted(planar.w_orders[0]) == list(range(10))


class TestCanonicalReduction:
    """The fixed reduction of the α = 1 diagram."""

    def test_trefoil(self, trefoil_params: LambdaParams) -> None:
        report = canonical_reduction(trefoil_params)
        assert report.value == 0
        assert report.n_singular == 5
        assert report.witness.kind == "singular"
        assert report.witness.alpha == 1
        assert len(report.witness.removed_v) == 1
        assert len(report.witness.removed_w) == 1
