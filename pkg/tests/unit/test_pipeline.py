"""Tests for report builders and their rendering."""

import io
import json
from pathlib import Path

import pytest
from rich.console import Console

from src.analyzer.pipeline import (
    bound_report,
    gm_report,
    invariants_report,
    replay_report,
    run_gm,
    table_row,
    validate_report,
    witness_dict,
    witness_from_dict,
)
from src.analyzer.reporter import (
    TABLE_COLUMNS,
    ComplexityReporter,
    canonical_json,
    table_tsv,
    write_output,
)
from src.gemcraft.exceptions import GraphFormatError
from src.gemcraft.graph import ColouredGraph
from src.gemcraft.heegaard import Witness, replay
from src.gemcraft.models import TableRow
from src.gemcraft.seifert import LambdaParams, SeifertParams
from src.utils.config import RunConfig


def _row(**values: object) -> TableRow:
    row = {
        "p": 2,
        "h": 1,
        "q": 2,
        "k": 1,
        "alpha": 1,
        "beta": 1,
        "delta_alpha": 1,
        "delta_beta": 1,
        "formula": 0,
        "exhaustive_gm": 0,
        "match_flag": True,
        "seifert": "(D2; (2,1),(2,1))",
        "canonical": 0,
        "canonical_singular": 4,
        "truncated": False,
    }
    row.update(values)
    return row  # type: ignore[return-value]


def test_validate_report_of_a_closed_gem(sphere: ColouredGraph) -> None:
    """Closed gems report contraction and no boundary."""
    report = validate_report(sphere)

    assert report["report"] == "validate"
    assert report["classification"] == "ClosedGem"
    assert report["contracted"] is True
    assert report["boundary"] == []
    assert report["singular_colour"] is None
    assert set(report["census"].values()) == {1}
    assert report["software"]["name"] == "gemcraft"


def test_validate_report_of_a_boundary_gem(ball: ColouredGraph) -> None:
    """The boundary of the 3-ball is one 2-sphere."""
    (surface,) = validate_report(ball)["boundary"]

    assert surface["name"] == "S2"
    assert surface["euler_characteristic"] == 2


def test_validate_report_of_a_singular_graph(trefoil: ColouredGraph) -> None:
    """Singular graphs name their offending residues and skip contraction."""
    report = validate_report(trefoil)

    assert report["classification"] == "SingularRegular(0)"
    assert report["contracted"] is None
    assert [item["colour"] for item in report["offending"]] == [0]
    assert report["offending"][0]["surface"]["name"] == "T2"


def test_invariants_of_the_sphere(sphere: ColouredGraph) -> None:
    report = invariants_report(sphere)

    assert report["report"] == "invariants"
    assert report["regular_genus"] == 0
    assert report["tetrahedra"] == 2
    assert report["euler_characteristic"] == 0
    assert report["singular_vertices"] == []
    assert sorted(report["genus_table"]) == ["(0,1,2,3)", "(0,1,3,2)", "(0,2,1,3)"]


def test_invariants_of_the_trefoil_graph(trefoil: ColouredGraph) -> None:
    report = invariants_report(trefoil)

    assert report["regular_genus"] is None
    assert report["euler_characteristic"] == 1
    (vertex,) = report["singular_vertices"]
    assert vertex["label"] == 0
    assert vertex["link"]["name"] == "T2"


def test_invariants_of_a_boundary_gem(ball: ColouredGraph) -> None:
    """Singular vertices are only listed for regular graphs."""
    report = invariants_report(ball)

    assert report["regular_genus"] == 0
    assert "singular_vertices" not in report
    assert {s["name"] for s in report["genus_table"].values()} == {"D2"}


def test_invariants_of_a_torus_boundary_gem(torus_boundary_gem: ColouredGraph) -> None:
    report = invariants_report(torus_boundary_gem)

    assert report["classification"] == "BoundaryGem"
    assert report["regular_genus"] == 2
    assert [surface["name"] for surface in report["boundary"]] == ["T2"]


def test_gm_report_round_trips_its_witness(trefoil: ColouredGraph) -> None:
    """A gm report carries a witness that replays to the same value."""
    config = RunConfig(command="gm", alpha=1)
    result = run_gm(trefoil, config)
    report = gm_report(trefoil, result, config)
    document = json.loads(canonical_json(report))

    assert document["value"] == result.value
    assert document["config"]["limit"] == config.limit
    assert document["witness"]["alpha"] == 1
    witness = witness_from_dict(document)
    assert witness == result.witness
    replayed = replay_report(trefoil, witness, replay(trefoil, witness))
    assert replayed["value"] == report["value"]
    assert replayed["witness"] == witness_dict(witness)


@pytest.mark.parametrize(
    "data, where",
    [
        ([], "witness: expected a JSON object"),
        ({"kind": "other"}, "witness.kind"),
        ({"kind": "gem", "alpha": "1"}, "witness.alpha"),
        ({"kind": "gem", "alpha": 1, "removed_v": [True], "removed_w": []}, "removed_v"),
        (
            {"kind": "gem", "alpha": 1, "removed_v": [], "removed_w": [], "recolour": [0, 0]},
            "witness.recolour",
        ),
    ],
)
def test_witness_errors_name_the_field(data: object, where: str) -> None:
    with pytest.raises(GraphFormatError, match=where):
        witness_from_dict(data)


def test_bare_witness_is_accepted() -> None:
    data = {"kind": "singular", "alpha": 2, "removed_v": [1], "removed_w": [0], "recolour": None}
    assert witness_from_dict(data) == Witness("singular", 2, (1,), (0,), None)


def test_bound_report() -> None:
    report = bound_report(SeifertParams(4, 3, 3, 1))

    assert report["seifert"] == "(D2; (4,3),(3,1))"
    assert report["fibers"] == [[4, 3], [3, 1]]
    assert (report["value"], report["delta_alpha"], report["delta_beta"]) == (1, 1, 1)


def test_table_row_of_the_trefoil() -> None:
    row = table_row((LambdaParams(3, 2, 2, 1), 1_000_000, 2_000, 0, "exhaustive"))

    assert row["seifert"] == "(D2; (3,2),(2,1))"
    assert (row["alpha"], row["beta"], row["delta_alpha"], row["delta_beta"]) == (2, 1, 1, 1)
    assert (row["formula"], row["canonical"], row["exhaustive_gm"]) == (0, 0, 0)
    assert row["match_flag"] is True
    assert row["truncated"] is False


def test_table_tsv() -> None:
    text = table_tsv([_row(), _row(p=3, match_flag=False)])
    lines = text.splitlines()

    header = lines[0].split("\t")
    assert header[:11] == [
        "p",
        "h",
        "q",
        "k",
        "alpha",
        "beta",
        "delta_alpha",
        "delta_beta",
        "formula",
        "exhaustive_gm",
        "match_flag",
    ]
    assert header == TABLE_COLUMNS
    assert lines[1] == "2\t1\t2\t1\t1\t1\t1\t1\t0\t0\tTrue\t(D2; (2,1),(2,1))\t0\t4\tFalse"
    assert lines[2].startswith("3\t")
    assert text.endswith("\n")


def test_canonical_json_is_stable() -> None:
    first = canonical_json({"b": (1, 2), "a": 1})
    second = canonical_json({"a": 1, "b": [1, 2]})

    assert first == second
    assert first.index('"a"') < first.index('"b"')


def test_write_output(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Documents go to a file, or to stdout for ``-``."""
    target = tmp_path / "out" / "report.json"

    assert write_output("{}\n", str(target)) == target
    assert target.read_text(encoding="utf-8") == "{}\n"
    assert write_output("text\n", "-") is None
    assert capsys.readouterr().out == "text\n"


def test_reporter_renders_tables(sphere: ColouredGraph) -> None:
    buffer = io.StringIO()
    reporter = ComplexityReporter(Console(file=buffer, width=200))

    reporter.print_validation(invariants_report(sphere))
    reporter.print_bound_table([_row(), _row(match_flag=False)])
    output = buffer.getvalue()

    assert "ClosedGem" in output
    assert "(0,1,2,3)" in output
    assert "1 rows disagree with the formula" in output
