"""Tests for the command-line driver."""

import json
from collections.abc import Callable
from pathlib import Path

import pytest

from src import __version__
from src.cli import EXIT_FORMAT, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_USAGE, main
from src.gemcraft.formats import diagram_to_json, load_graph, parse_compact
from src.gemcraft.graph import ColouredGraph, classify
from src.gemcraft.heegaard import diagram_from_singular
from src.gemcraft.seifert import torus_knot_graph

Runner = Callable[..., str]


@pytest.fixture
def run(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> Runner:
    """Run the tool without a configuration file and return its standard output."""

    def invoke(*argv: str) -> str:
        main(["--config", str(tmp_path / "absent.json"), *argv])
        return capsys.readouterr().out

    return invoke


def _exit_code(run: Runner, *argv: str) -> int | str | None:
    with pytest.raises(SystemExit) as excinfo:
        run(*argv)
    return excinfo.value.code


def test_generated_graph_validates(run: Runner, tmp_path: Path) -> None:
    """gen writes a file that validate classifies."""
    path = tmp_path / "lambda.json"
    run("gen", "lambda", "3", "2", "2", "1", "-o", str(path))

    report = json.loads(run("validate", str(path)))

    assert report["classification"] == "SingularRegular(0)"
    assert report["vertex_count"] == 20
    assert report["name"] == "Lambda((3,2),(2,1))"


def test_compact_output(run: Runner) -> None:
    g = parse_compact(run("gen", "torus-knot", "3", "2", "-f", "compact"))

    assert g.vertex_count == 20
    assert classify(g).label() == "SingularRegular(0)"


def test_gm_is_deterministic(run: Runner, graph_file: Callable[..., Path]) -> None:
    """Identical settings give byte-identical reports."""
    path = str(graph_file(torus_knot_graph(3, 2)))
    argv = ("gm", path, "--mode", "heuristic", "--heuristic-budget", "20", "--seed", "7")

    first = run(*argv)
    second = run(*argv)

    assert first == second
    report = json.loads(first)
    assert report["search_mode"] == "heuristic"
    assert report["config"]["seed"] == 7


def test_replay_of_a_stored_report(
    run: Runner, trefoil: ColouredGraph, graph_file: Callable[..., Path], tmp_path: Path
) -> None:
    path = str(graph_file(trefoil))
    stored = tmp_path / "gm.json"
    run("gm", path, "--alpha", "1", "-o", str(stored))
    value = json.loads(stored.read_text(encoding="utf-8"))["value"]

    assert json.loads(run("replay", path, str(stored)))["value"] == value
    assert json.loads(run("gm", path, "--replay", str(stored)))["value"] == value


def test_replay_detects_a_tampered_value(
    run: Runner, trefoil: ColouredGraph, graph_file: Callable[..., Path], tmp_path: Path
) -> None:
    path = str(graph_file(trefoil))
    stored = tmp_path / "gm.json"
    run("gm", path, "--alpha", "1", "-o", str(stored))
    report = json.loads(stored.read_text(encoding="utf-8"))
    report["value"] += 1
    stored.write_text(json.dumps(report), encoding="utf-8")

    assert _exit_code(run, "replay", path, str(stored)) == EXIT_INTERNAL


def test_bound(run: Runner) -> None:
    report = json.loads(run("bound", "4", "3", "3", "1"))

    assert report["value"] == 1
    assert report["seifert"] == "(D2; (4,3),(3,1))"
    assert "at most 1" in run("bound", "4", "3", "3", "1", "-f", "text")


def test_smallest_table(run: Runner) -> None:
    lines = run("table", "--max", "4").splitlines()

    assert lines[0].startswith("p\th\tq\tk\talpha\tbeta\tdelta_alpha\tdelta_beta\tformula")
    assert len(lines) == 2
    assert lines[1].startswith("2\t1\t2\t1\t1\t1\t1\t1\t0\t0\tTrue\t")


def test_double_matches_lambda(run: Runner, tmp_path: Path) -> None:
    diagram = tmp_path / "h.json"
    graph = tmp_path / "lambda.json"
    run("gen", "diagram", "3", "2", "2", "1", "-o", str(diagram))
    run("gen", "lambda", "3", "2", "2", "1", "-o", str(graph))

    doubled = parse_compact(run("double", str(diagram), "--check", str(graph), "-f", "compact"))

    assert doubled.vertex_count == load_graph(graph).vertex_count


def test_cap_and_desingularize(
    run: Runner, ball: ColouredGraph, trefoil: ColouredGraph, graph_file: Callable[..., Path]
) -> None:
    capped = parse_compact(run("cap", str(graph_file(ball, "ball.json")), "-f", "compact"))
    assert classify(capped).label() == "ClosedGem"

    desing = json.loads(run("desingularize", str(graph_file(trefoil, "lambda.json"))))
    assert desing["vertices"] == 60


def test_export_formats(
    run: Runner, trefoil: ColouredGraph, graph_file: Callable[..., Path]
) -> None:
    path = str(graph_file(trefoil))

    dot = run("export", path, "--permutation", "0", "1", "2", "3")
    assert dot.count(" -- ") == 40
    assert 'label="A&#x27;1"' in dot
    assert "// face " in dot
    assert run("export", path, "-f", "svg").startswith("<svg ")


def test_version(run: Runner, capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        run("--version")

    assert excinfo.value.code == 0
    assert capsys.readouterr().out == f"gemcraft {__version__}\n"


@pytest.mark.parametrize(
    "argv, code",
    [
        (("gen", "lambda", "3", "2"), EXIT_USAGE),
        (("table", "--max", "3"), EXIT_USAGE),
        (("bound", "4", "2", "3", "1"), EXIT_PRECONDITION),
        (("gen", "lambda", "4", "2", "3", "1"), EXIT_PRECONDITION),
        (("validate", "missing.json"), EXIT_FORMAT),
    ],
)
def test_exit_codes(run: Runner, argv: tuple[str, ...], code: int) -> None:
    assert _exit_code(run, *argv) == code


def test_precondition_failures_exit_three(
    run: Runner, sphere: ColouredGraph, graph_file: Callable[..., Path]
) -> None:
    path = str(graph_file(sphere))

    assert _exit_code(run, "cap", path) == EXIT_PRECONDITION
    assert _exit_code(run, "desingularize", path) == EXIT_PRECONDITION


def test_malformed_graph_exits_two(run: Runner, tmp_path: Path) -> None:
    path = tmp_path / "bad.txt"
    path.write_text("0: (0 1)\n", encoding="utf-8")

    assert _exit_code(run, "validate", str(path)) == EXIT_FORMAT


def test_bad_configuration(tmp_path: Path) -> None:
    config = tmp_path / "gemcraft.json"
    config.write_text('{"limit": "many"}', encoding="utf-8")

    with pytest.raises(SystemExit) as excinfo:
        main(["--config", str(config), "bound", "4", "3", "3", "1"])

    assert excinfo.value.code == EXIT_USAGE


def test_bad_thread_environment(run: Runner, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("GEMCRAFT_THREADS", "none")

    assert _exit_code(run, "bound", "4", "3", "3", "1") == EXIT_USAGE


def test_out_of_range_map_index_exits_two(
    run: Runner, trefoil: ColouredGraph, tmp_path: Path
) -> None:
    data = diagram_to_json(diagram_from_singular(trefoil, 1))
    data["map"]["edges"][0]["ends"] = [0, 99]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")

    assert _exit_code(run, "double", str(path)) == EXIT_FORMAT


def test_export_the_pseudocomplex(
    run: Runner, sphere: ColouredGraph, graph_file: Callable[..., Path]
) -> None:
    dump = json.loads(run("export", str(graph_file(sphere, "s3.json")), "-f", "complex"))

    assert len(dump["tetrahedra"]) == 2
    assert dump["vertex_classes"] == {"0": 1, "1": 1, "2": 1, "3": 1}
    assert dump["euler_characteristic"] == 0
