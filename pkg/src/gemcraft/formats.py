"""Reading and writing graphs and diagrams.

Graphs are stored as gem-v1 JSON or in the compact text form::

    # comment
    0: (0 1)(2 3)
    1: (0 2)(1 3)
    2: (0 3)(1 2)
    3: (0 1)(2 -)(3 -)

Diagrams are stored as hdiag-v1 JSON, either as a rotation system (orientable
surfaces) or as the full map with per-edge sides.
"""

import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, cast

from .diagram import (
    ArcTag,
    Curve,
    HeegaardDiagram,
    MapEdge,
    PlanarPresentation,
    Side,
    System,
)
from .exceptions import ConsistencyError, GraphFormatError
from .graph import COLOURS, ColouredGraph, SurfaceType

logger = logging.getLogger(__name__)

GRAPH_FORMAT = "gem-v1"
DIAGRAM_FORMAT = "hdiag-v1"

_CYCLE = re.compile(r"\(([^()]*)\)")
_LINE = re.compile(r"^\s*(\d+)\s*:(.*)$")


def _expect(condition: bool, where: str, message: str) -> None:
    if not condition:
        raise GraphFormatError(f"{where}: {message}")


def _is_int(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def graph_to_json(g: ColouredGraph) -> dict[str, Any]:
    data: dict[str, Any] = {
        "format": GRAPH_FORMAT,
        "vertices": g.vertex_count,
        "edges": [list(edge) for edge in g.edges()],
    }
    if g.name:
        data["name"] = g.name
    return data


def graph_from_json(data: Any) -> ColouredGraph:
    """Build a graph from a parsed gem-v1 document."""
    _expect(isinstance(data, dict), "document", "expected a JSON object")
    _expect(data.get("format") == GRAPH_FORMAT, "format", f"expected {GRAPH_FORMAT!r}")
    n = data.get("vertices")
    _expect(_is_int(n) and n > 0, "vertices", "expected a positive integer")
    edges = data.get("edges")
    _expect(isinstance(edges, list), "edges", "expected a list")
    triples = []
    for index, edge in enumerate(edges):
        _expect(
            isinstance(edge, list) and len(edge) == 3 and all(_is_int(x) for x in edge),
            f"edges[{index}]",
            "expected [u, v, colour]",
        )
        triples.append((edge[0], edge[1], edge[2]))
    name = data.get("name")
    return ColouredGraph.from_edges(n, triples, name if isinstance(name, str) else None)


def parse_compact(text: str, name: str | None = None) -> ColouredGraph:
    """Parse the compact text form; vertices are 0-based."""
    pairs: dict[int, list[tuple[int, int | None, int]]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        _expect(match is not None, f"line {number}", "expected 'colour: (u v)...'")
        assert match is not None
        colour = int(match.group(1))
        _expect(colour in COLOURS, f"line {number}", f"colour {colour} not in 0..3")
        _expect(colour not in pairs, f"line {number}", f"colour {colour} given twice")
        body = match.group(2)
        _expect(
            not _CYCLE.sub("", body).strip(), f"line {number}", "text outside parentheses"
        )
        entries: list[tuple[int, int | None, int]] = []
        for cycle in _CYCLE.findall(body):
            items = cycle.split()
            _expect(len(items) == 2, f"line {number}", f"({cycle}) is not a transposition")
            try:
                u = int(items[0])
                v = None if items[1] == "-" else int(items[1])
            except ValueError as exc:
                raise GraphFormatError(f"line {number}: bad vertex in ({cycle})") from exc
            _expect(v is not None or colour == 3, f"line {number}", "'-' only on colour 3")
            entries.append((u, v, number))
        pairs[colour] = entries
    for colour in COLOURS:
        _expect(colour in pairs, "document", f"missing line for colour {colour}")
    n = 1 + max(
        max(u, -1 if v is None else v) for entries in pairs.values() for u, v, _ in entries
    )
    edges = []
    for colour in COLOURS:
        for u, v, number in pairs[colour]:
            _expect(u >= 0 and (v is None or v >= 0), f"line {number}", "negative vertex")
            if v is not None:
                edges.append((u, v, colour))
    return ColouredGraph.from_edges(n, edges, name)


def format_compact(g: ColouredGraph) -> str:
    lines = [f"# {g.name}"] if g.name else []
    for colour in COLOURS:
        cycles = []
        for vertex, partner in enumerate(g.matchings[colour]):
            if partner is None:
                cycles.append(f"({vertex} -)")
            elif vertex < partner:
                cycles.append(f"({vertex} {partner})")
        lines.append(f"{colour}: " + "".join(cycles))
    return "\n".join(lines) + "\n"


def _planar_to_json(planar: PlanarPresentation) -> dict[str, Any]:
    return {
        "points": list(planar.point_labels),
        "v": [[[point, before] for point, before in order] for order in planar.v_orders],
        "axis": [[point, before] for point, before in planar.axis],
        "w": [
            {"points": list(order), "arcs": list(tags)}
            for order, tags in zip(planar.w_orders, planar.w_arcs, strict=True)
        ],
    }


def _planar_from_json(data: Any) -> PlanarPresentation:
    _expect(isinstance(data, dict), "planar", "expected an object")
    points = data.get("points")
    _expect(
        isinstance(points, list) and all(isinstance(p, str) for p in points),
        "planar.points",
        "expected a list of labels",
    )

    def order(value: Any, where: str) -> tuple[tuple[int, bool], ...]:
        _expect(isinstance(value, list), where, "expected a list")
        result = []
        for index, item in enumerate(value):
            _expect(
                isinstance(item, list)
                and len(item) == 2
                and _is_int(item[0])
                and 0 <= item[0] < len(points)
                and isinstance(item[1], bool),
                f"{where}[{index}]",
                "expected [point, before]",
            )
            result.append((item[0], item[1]))
        return tuple(result)

    v_data = data.get("v")
    _expect(isinstance(v_data, list), "planar.v", "expected a list")
    w_data = data.get("w")
    _expect(isinstance(w_data, list), "planar.w", "expected a list")
    w_orders = []
    w_arcs = []
    for index, item in enumerate(w_data):
        where = f"planar.w[{index}]"
        _expect(isinstance(item, dict), where, "expected an object")
        pts, arcs = item.get("points"), item.get("arcs")
        _expect(
            isinstance(pts, list) and all(_is_int(p) and 0 <= p < len(points) for p in pts),
            f"{where}.points",
            "expected point indices",
        )
        _expect(
            isinstance(arcs, list) and all(a in ("upper", "lower") for a in arcs),
            f"{where}.arcs",
            "expected 'upper'/'lower' tags",
        )
        w_orders.append(tuple(pts))
        w_arcs.append(tuple(cast(list[ArcTag], arcs)))
    return PlanarPresentation(
        point_labels=tuple(points),
        v_orders=tuple(order(item, f"planar.v[{i}]") for i, item in enumerate(v_data)),
        axis=order(data.get("axis"), "planar.axis"),
        w_orders=tuple(w_orders),
        w_arcs=tuple(w_arcs),
    )


def diagram_to_json(d: HeegaardDiagram) -> dict[str, Any]:
    """Serialize a diagram; rotation systems are kept when the diagram has one."""
    data: dict[str, Any] = {
        "format": DIAGRAM_FORMAT,
        "genus": d.surface.genus,
        "orientable": d.surface.orientable,
        "labels": list(d.vertex_labels),
    }
    curves = []
    for curve in d.curves:
        entry: dict[str, Any] = {"system": curve.system, "crossings": list(curve.vertices)}
        if curve.face is not None:
            entry["face"] = curve.face
        if d.rotations is None:
            entry["label"] = curve.label
            if curve.colours is not None:
                entry["colours"] = list(curve.colours)
        curves.append(entry)
    data["curves"] = curves
    if d.rotations is not None:
        data["rotations"] = [[list(end) for end in rotation] for rotation in d.rotations]
    else:
        data["map"] = {
            "vertices": d.vertex_count,
            "corners": list(d.corner_vertex),
            "faces": d.face_count,
            "edges": [
                {
                    "ends": list(edge.ends),
                    "curve": edge.curve,
                    "sides": [[side.face, list(side.corners)] for side in edge.sides],
                }
                for edge in d.edges
            ],
        }
    if d.alpha is not None:
        data["alpha"] = d.alpha
    if d.permutation is not None:
        data["permutation"] = list(d.permutation)
    if d.planar is not None:
        data["planar"] = _planar_to_json(d.planar)
    if d.name:
        data["name"] = d.name
    return data


def _curves_from_json(data: Any) -> list[dict[str, Any]]:
    _expect(isinstance(data, list), "curves", "expected a list")
    for index, curve in enumerate(data):
        where = f"curves[{index}]"
        _expect(isinstance(curve, dict), where, "expected an object")
        _expect(curve.get("system") in ("V", "W"), f"{where}.system", "expected 'V' or 'W'")
        crossings = curve.get("crossings")
        _expect(
            isinstance(crossings, list) and all(_is_int(x) for x in crossings),
            f"{where}.crossings",
            "expected a list of crossing indices",
        )
        if "face" in curve:
            _expect(_is_int(curve["face"]), f"{where}.face", "expected a face index")
    return data


def _map_from_json(data: dict[str, Any], surface: SurfaceType) -> HeegaardDiagram:
    block = data["map"]
    _expect(isinstance(block, dict), "map", "expected an object")
    n, corners, faces = block.get("vertices"), block.get("corners"), block.get("faces")
    _expect(_is_int(n) and n > 0, "map.vertices", "expected a positive integer")
    _expect(
        isinstance(corners, list) and all(_is_int(c) and 0 <= c < n for c in corners),
        "map.corners",
        "expected the vertex of every corner",
    )
    _expect(_is_int(faces) and faces > 0, "map.faces", "expected a positive integer")
    raw_curves = _curves_from_json(data.get("curves"))
    for index, item in enumerate(raw_curves):
        where = f"curves[{index}]"
        bad = [x for x in item["crossings"] if not 0 <= x < n]
        _expect(not bad, f"{where}.crossings", f"crossings {bad} out of range")
        face = item.get("face")
        _expect(face is None or 0 <= face < faces, f"{where}.face", f"face {face} out of range")
    labels = data.get("labels") or [str(x) for x in range(n)]
    _expect(
        isinstance(labels, list) and len(labels) == n, "labels", f"expected {n} vertex labels"
    )
    edges = []
    edge_data = block.get("edges")
    _expect(isinstance(edge_data, list), "map.edges", "expected a list")
    for index, item in enumerate(edge_data):
        where = f"map.edges[{index}]"
        try:
            ends = (int(item["ends"][0]), int(item["ends"][1]))
            curve = item["curve"]
            sides = tuple(
                Side(int(face), (int(pair[0]), int(pair[1]))) for face, pair in item["sides"]
            )
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"{where}: expected ends, curve and two sides") from exc
        _expect(len(sides) == 2, where, "expected two sides")
        _expect(all(0 <= end < n for end in ends), where, f"ends {ends} out of range")
        known = curve is None or (_is_int(curve) and 0 <= curve < len(raw_curves))
        _expect(known, where, f"curve {curve} out of range")
        for side in sides:
            _expect(0 <= side.face < faces, where, f"face {side.face} out of range")
            for corner in side.corners:
                _expect(0 <= corner < len(corners), where, f"corner {corner} out of range")
        edges.append(MapEdge(ends, curve, (sides[0], sides[1])))
    curves = []
    for index, item in enumerate(raw_curves):
        colours = item.get("colours")
        pair = (int(colours[0]), int(colours[1])) if isinstance(colours, list) else None
        label = str(item.get("label", f"{item['system']}{index}"))
        system = cast(System, item["system"])
        curves.append(Curve(system, tuple(item["crossings"]), label, pair, item.get("face")))
    try:
        return HeegaardDiagram(
            surface=surface,
            vertex_count=n,
            corner_vertex=tuple(corners),
            face_count=faces,
            curves=tuple(curves),
            edges=tuple(edges),
            vertex_labels=tuple(str(label) for label in labels),
            planar=_planar_from_json(data["planar"]) if "planar" in data else None,
            alpha=data.get("alpha"),
            permutation=tuple(data["permutation"]) if "permutation" in data else None,
            name=data.get("name"),
        )
    except ConsistencyError as exc:
        raise GraphFormatError(f"map: {exc}") from exc


def diagram_from_json(data: Any) -> HeegaardDiagram:
    """Build a diagram from a parsed hdiag-v1 document."""
    _expect(isinstance(data, dict), "document", "expected a JSON object")
    _expect(data.get("format") == DIAGRAM_FORMAT, "format", f"expected {DIAGRAM_FORMAT!r}")
    genus = data.get("genus")
    _expect(_is_int(genus) and genus >= 0, "genus", "expected a non-negative integer")
    orientable = data.get("orientable", True)
    _expect(isinstance(orientable, bool), "orientable", "expected a boolean")
    if "map" in data:
        return _map_from_json(data, SurfaceType(orientable, genus))
    _expect(orientable, "orientable", "a rotation system describes an orientable surface only")
    curves = _curves_from_json(data.get("curves"))
    rotations = data.get("rotations")
    _expect(isinstance(rotations, list), "rotations", "expected a list")
    for x, rotation in enumerate(rotations):
        _expect(
            isinstance(rotation, list)
            and all(
                isinstance(end, list) and len(end) == 3 and all(_is_int(v) for v in end)
                for end in rotation
            ),
            f"rotations[{x}]",
            "expected four [curve, arc, end] triples",
        )
    free_faces = {i: curve["face"] for i, curve in enumerate(curves) if "face" in curve}
    labels = data.get("labels")
    return HeegaardDiagram.from_rotations(
        genus,
        [(curve["system"], curve["crossings"]) for curve in curves],
        [[tuple(end) for end in rotation] for rotation in rotations],
        free_faces=free_faces,
        vertex_labels=[str(label) for label in labels] if labels else None,
        planar=_planar_from_json(data["planar"]) if "planar" in data else None,
        name=data.get("name"),
    )


def read_text(path: str | Path) -> str:
    """Read a file, or standard input for ``-``."""
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"{path}: {exc.strerror}") from exc


def parse_document(text: str, source: str = "<input>") -> ColouredGraph | HeegaardDiagram:
    """Parse JSON (gem-v1 or hdiag-v1) or the compact text form."""
    if not text.lstrip().startswith("{"):
        return parse_compact(text, Path(source).stem if source != "-" else None)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        where = f"{source}: line {exc.lineno} column {exc.colno}"
        raise GraphFormatError(f"{where}: {exc.msg}") from exc
    kind = data.get("format") if isinstance(data, dict) else None
    if kind == DIAGRAM_FORMAT:
        return diagram_from_json(data)
    return graph_from_json(data)


def load_document(path: str | Path) -> ColouredGraph | HeegaardDiagram:
    document = parse_document(read_text(path), str(path))
    logger.debug("loaded %s from %s", type(document).__name__, path)
    return document


def load_graph(path: str | Path) -> ColouredGraph:
    document = load_document(path)
    if not isinstance(document, ColouredGraph):
        raise GraphFormatError(f"{path}: expected a graph, found a diagram")
    return document


def load_diagram(path: str | Path) -> HeegaardDiagram:
    document = load_document(path)
    if not isinstance(document, HeegaardDiagram):
        raise GraphFormatError(f"{path}: expected a diagram, found a graph")
    return document


def dumps(document: ColouredGraph | HeegaardDiagram, fmt: str = "json") -> str:
    """Serialize to ``json`` or, for graphs, ``compact`` text."""
    if fmt == "compact":
        if not isinstance(document, ColouredGraph):
            raise GraphFormatError("only graphs have a compact text form")
        return format_compact(document)
    if isinstance(document, ColouredGraph):
        data = graph_to_json(document)
    else:
        data = diagram_to_json(document)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
