"""DOT and SVG drawings of coloured graphs.

Edge styles by colour: 0 solid, 1 dashed, 2 dotted, 3 bold.
"""

import logging
import math
from collections.abc import Sequence
from html import escape

import networkx as nx

from .embedding import CyclicPermutation, embed
from .exceptions import PreconditionError
from .graph import ColouredGraph, to_multigraph

logger = logging.getLogger(__name__)

EDGE_STYLES: dict[int, str] = {0: "solid", 1: "dashed", 2: "dotted", 3: "bold"}
EDGE_COLOURS: dict[int, str] = {0: "black", 1: "red", 2: "blue", 3: "darkgreen"}
_SVG_DASHES: dict[int, str] = {0: "", 1: "6,4", 2: "2,3", 3: ""}
DEFAULT_SVG_MAX_VERTICES = 200


def to_dot(
    g: ColouredGraph,
    eps: CyclicPermutation | Sequence[int] | None = None,
    labels: Sequence[str] | None = None,
) -> str:
    """Render ``g`` in Graphviz DOT.

    With ``eps`` the faces of the regular embedding are listed as comments, one
    per bicoloured cycle or path.
    """
    title = escape(g.name or "gem", quote=True)
    lines = [f'graph "{title}" {{', "  node [shape=circle, fontsize=10];"]
    for vertex in range(g.vertex_count):
        label = labels[vertex] if labels else str(vertex)
        shape = ", peripheries=2" if g.neighbour(vertex, 3) is None else ""
        lines.append(f'  {vertex} [label="{escape(label, quote=True)}"{shape}];')
    for u, v, colour in g.edges():
        lines.append(
            f"  {u} -- {v} [color={EDGE_COLOURS[colour]}, style={EDGE_STYLES[colour]}, "
            f'label="{colour}"];'
        )
    if eps is not None:
        emb = embed(g, eps)
        lines.append(f"  // embedding {emb.permutation}: {emb.surface.describe()}")
        for index, face in enumerate(emb.faces):
            kind = "path" if face.boundary else "cycle"
            members = " ".join(str(v) for v in face.vertices)
            lines.append(f"  // face {index} {face.colours} {kind}: {members}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(
    g: ColouredGraph,
    labels: Sequence[str] | None = None,
    max_vertices: int = DEFAULT_SVG_MAX_VERTICES,
    size: int = 640,
) -> str:
    """Draw ``g`` on a circle; parallel edges bend apart by colour."""
    if g.vertex_count > max_vertices:
        raise PreconditionError(
            f"SVG export is limited to {max_vertices} vertices, graph has {g.vertex_count}"
        )
    centre = size / 2
    radius = size * 0.42
    layout = nx.circular_layout(to_multigraph(g))
    points = {
        vertex: (centre + radius * float(pos[0]), centre + radius * float(pos[1]))
        for vertex, pos in layout.items()
    }
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(g.name or 'gem')}</title>",
    ]
    for u, v, colour in g.edges():
        (x1, y1), (x2, y2) = points[u], points[v]
        length = math.hypot(x2 - x1, y2 - y1) or 1.0
        bend = (colour - 1.5) * 0.15 * length
        cx = (x1 + x2) / 2 - bend * (y2 - y1) / length
        cy = (y1 + y2) / 2 + bend * (x2 - x1) / length
        dash = f' stroke-dasharray="{_SVG_DASHES[colour]}"' if _SVG_DASHES[colour] else ""
        width = 3 if colour == 3 else 1.5
        parts.append(
            f'<path d="M {x1:.1f} {y1:.1f} Q {cx:.1f} {cy:.1f} {x2:.1f} {y2:.1f}" '
            f'fill="none" stroke="{EDGE_COLOURS[colour]}" stroke-width="{width}"{dash}/>'
        )
    for vertex, (x, y) in sorted(points.items()):
        label = labels[vertex] if labels else str(vertex)
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="9" fill="white" stroke="black"/>')
        parts.append(
            f'<text x="{x:.1f}" y="{y + 3:.1f}" font-size="8" text-anchor="middle">'
            f"{escape(label)}</text>"
        )
    parts.append("</svg>")
    logger.debug("drew %d vertices as SVG", g.vertex_count)
    return "\n".join(parts) + "\n"
