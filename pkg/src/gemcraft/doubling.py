"""Doubling the W-curves of a planar diagram into a regular 4-coloured graph."""

import logging
from dataclasses import replace

import networkx as nx

from .diagram import HeegaardDiagram, PlanarPresentation, condition_star
from .embedding import embed
from .exceptions import GraphFormatError, PreconditionError
from .graph import ColouredGraph, classify

logger = logging.getLogger(__name__)

DOUBLING_PERMUTATION = (0, 1, 2, 3)


def doubled_ids(planar: PlanarPresentation) -> dict[int, int]:
    """Vertex of each point in the doubled graph; its parallel copy is the next id.

    Points are numbered by their position along the W-curves, taken in order.
    """
    ids: dict[int, int] = {}
    for order in planar.w_orders:
        for point in order:
            if point in ids:
                raise PreconditionError(f"point {point} lies on two W-curves")
            ids[point] = 2 * len(ids)
    missing = set(range(len(planar.point_labels))) - ids.keys()
    if missing:
        raise PreconditionError(f"points {sorted(missing)} lie on no W-curve")
    return ids


def doubled_labels(planar: PlanarPresentation) -> list[str]:
    labels = [""] * (2 * len(planar.point_labels))
    for point, vertex in doubled_ids(planar).items():
        labels[vertex] = planar.point_labels[point]
        labels[vertex + 1] = planar.point_labels[point] + "~"
    return labels


def augmented_connected(planar: PlanarPresentation) -> bool:
    """Whether the V-curves, the axis and the W-curves meet in one connected family."""
    family: nx.Graph[tuple[str, int]] = nx.Graph()
    owners: dict[int, list[tuple[str, int]]] = {}
    carriers = [("V", index, order) for index, order in enumerate(planar.v_orders)]
    carriers.append(("axis", 0, planar.axis))
    for kind, index, order in carriers:
        family.add_node((kind, index))
        for point, _ in order:
            owners.setdefault(point, []).append((kind, index))
    for index, w_order in enumerate(planar.w_orders):
        family.add_node(("W", index))
        for point in w_order:
            owners.setdefault(point, []).append(("W", index))
    for curves in owners.values():
        family.add_edges_from(zip(curves, curves[1:]))
    return nx.is_connected(family)


def shifted_axis(planar: PlanarPresentation, offset: int) -> PlanarPresentation:
    """The presentation with the axis crossing sides rotated by ``offset`` places."""
    m = len(planar.axis)
    if not m or offset % m == 0:
        return planar
    axis = tuple(
        (point, planar.axis[(i + offset) % m][1]) for i, (point, _) in enumerate(planar.axis)
    )
    return replace(planar, axis=axis)


def _double(d: HeegaardDiagram, planar: PlanarPresentation, ids: dict[int, int]) -> ColouredGraph:
    edges: list[tuple[int, int, int]] = []
    for index, (order, tags) in enumerate(zip(planar.w_orders, planar.w_arcs, strict=True)):
        m = len(order)
        if len(tags) != m:
            raise PreconditionError(f"W-curve {index}: {m} points but {len(tags)} arc tags")
        if any(tags[i] == tags[(i + 1) % m] for i in range(m)):
            raise PreconditionError(f"W-curve {index}: upper and lower arcs must alternate")
        for i, point in enumerate(order):
            after = order[(i + 1) % m]
            colour = 1 if tags[i] == "upper" else 3
            edges.append((ids[point], ids[after], colour))
            edges.append((ids[point] + 1, ids[after] + 1, colour))

    for order in (*planar.v_orders, planar.axis):
        sequence: list[int] = []
        for point, before in order:
            x = ids[point]
            sequence.extend((x + 1, x) if before else (x, x + 1))
        size = len(sequence)
        edges.extend((sequence[j], sequence[j + 1], 0) for j in range(0, size, 2))
        edges.extend((sequence[j], sequence[(j + 1) % size], 2) for j in range(1, size, 2))

    name = f"double({d.name})" if d.name else None
    try:
        graph = ColouredGraph.from_edges(2 * len(ids), edges, name)
    except GraphFormatError as exc:
        raise PreconditionError(f"doubling gives no valid graph: {exc}") from exc
    graph_class = classify(graph)
    if not (
        graph_class.tag == "ClosedGem"
        or (graph_class.tag == "SingularRegular" and graph_class.singular_colour == 0)
    ):
        raise PreconditionError(f"doubling produced a {graph_class.label()} graph")
    surface = embed(graph, DOUBLING_PERMUTATION).surface
    if not surface.orientable or surface.genus != d.genus:
        raise PreconditionError(
            f"doubled graph embeds in {surface.describe()}, the diagram lives in genus {d.genus}"
        )
    return graph


def double_diagram(d: HeegaardDiagram) -> ColouredGraph:
    """Build the regular graph of the singular manifold of a planar diagram.

    Each W-curve gets a parallel copy. The crossings of both copies with the
    V-curves and the axis become vertices; arcs along the W-curves are coloured
    1 in the upper half-plane and 3 in the lower one, arcs along the V-curves and
    the axis alternate 0 and 2 with colour 0 between a W-curve and its copy.

    Axis offsets are tried in turn until the result is a closed gem or a
    SingularRegular(0) graph whose (0,1,2,3) embedding has the genus of ``d``.
    """
    planar = d.planar
    if planar is None:
        raise PreconditionError("double_diagram needs a diagram with a planar presentation")
    if not condition_star(d):
        raise PreconditionError("condition (*) fails: a curve meets no curve of the other system")
    ids = doubled_ids(planar)
    seen = [point for order in (*planar.v_orders, planar.axis) for point, _ in order]
    if sorted(seen) != sorted(ids):
        raise PreconditionError("every point must lie on exactly one V-curve or the axis")
    if len(planar.w_arcs) != len(planar.w_orders):
        raise PreconditionError("every W-curve needs its arc tags")
    if not augmented_connected(planar):
        raise PreconditionError("the diagram with the axis added is disconnected")

    failures: list[str] = []
    for offset in range(max(1, len(planar.axis))):
        try:
            graph = _double(d, shifted_axis(planar, offset), ids)
        except PreconditionError as exc:
            failures.append(f"offset {offset}: {exc}")
            continue
        logger.info(
            "doubled %d points into a %s graph at axis offset %d",
            len(ids),
            classify(graph).label(),
            offset,
        )
        return graph
    raise PreconditionError(
        f"no axis offset gives a valid doubling ({len(failures)} tried); {failures[0]}"
    )
