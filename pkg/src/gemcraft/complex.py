"""The pseudocomplex K(Γ), its boundary, singular vertices, capping and desingularization."""

import logging
from dataclasses import dataclass
from typing import Any, Literal

import networkx as nx

from .embedding import embed
from .exceptions import ConsistencyError, PreconditionError
from .graph import (
    COLOURS,
    SPHERE,
    ColouredGraph,
    ResidueSurface,
    SurfaceType,
    boundary_components,
    boundary_pairings,
    census,
    classify,
    complement,
    residue_index,
    residues,
    surface_of_residue,
)

logger = logging.getLogger(__name__)

Piece = Literal["kept", "T1", "T2", "T3"]


@dataclass(frozen=True)
class Pseudocomplex:
    """One tetrahedron per graph vertex, glued along faces by the colour matchings.

    ``gluings[t][c]`` is the tetrahedron glued to ``t`` along the face opposite
    its ``c``-labelled corner, or ``None`` for a boundary face.
    ``vertex_classes[c][t]`` is the class of the ``c``-labelled corner of ``t``.
    """

    source: ColouredGraph
    gluings: tuple[tuple[int | None, ...], ...]
    vertex_classes: tuple[tuple[int, ...], ...]

    @property
    def tetrahedron_count(self) -> int:
        return len(self.gluings)

    def class_count(self, label: int) -> int:
        return max(self.vertex_classes[label]) + 1

    @property
    def vertex_count(self) -> int:
        return sum(self.class_count(label) for label in COLOURS)

    @property
    def edge_count(self) -> int:
        return sum(census(self.source)[f"g{i}{j}"] for i, j in _pairs())

    @property
    def face_count(self) -> int:
        glued = sum(1 for row in self.gluings for partner in row if partner is not None) // 2
        return glued + len(self.source.boundary_vertices)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count - self.tetrahedron_count


def _pairs() -> list[tuple[int, int]]:
    return [(i, j) for i in COLOURS for j in COLOURS if i < j]


@dataclass(frozen=True)
class BoundaryComponent:
    surface: SurfaceType
    faces: tuple[int, ...]


@dataclass(frozen=True)
class BoundarySurface:
    components: tuple[BoundaryComponent, ...]

    @property
    def surfaces(self) -> list[SurfaceType]:
        return [component.surface for component in self.components]


@dataclass(frozen=True)
class SingularVertex:
    label: int
    residue: tuple[int, ...]
    link: SurfaceType


@dataclass(frozen=True)
class SingularVertexSet:
    members: tuple[SingularVertex, ...]
    euler_characteristic: int

    def __len__(self) -> int:
        return len(self.members)


def build_complex(g: ColouredGraph) -> Pseudocomplex:
    """Realize K(Γ): tetrahedron ``v`` has corners labelled 0..3."""
    gluings = tuple(
        tuple(g.neighbour(vertex, colour) for colour in COLOURS)
        for vertex in range(g.vertex_count)
    )
    classes = tuple(tuple(residue_index(g, complement(label))) for label in COLOURS)
    return Pseudocomplex(g, gluings, classes)


def boundary_surface(k: Pseudocomplex) -> BoundarySurface:
    """Return the components of the complex formed by the unglued faces."""
    g = k.source
    pairings = boundary_pairings(g)
    components = []
    for faces in boundary_components(g):
        members = set(faces)
        links = [(u, w, i) for u, w, i in pairings if u in members]
        corners = 0
        for label in (0, 1, 2):
            groups = nx.utils.UnionFind(faces)
            for u, w, i in links:
                if i != label:
                    groups.union(u, w)
            corners += len(list(groups.to_sets()))
        chi = corners - len(links) + len(faces)
        adjacency: nx.MultiGraph[int] = nx.MultiGraph()
        adjacency.add_nodes_from(faces)
        adjacency.add_edges_from((u, w) for u, w, _ in links)
        orientable = bool(nx.is_bipartite(adjacency))
        defect = 2 - chi
        if defect < 0 or (orientable and defect % 2):
            raise ConsistencyError(f"boundary component at face {faces[0]} has chi={chi}")
        surface = SurfaceType(orientable, defect // 2 if orientable else defect)
        components.append(BoundaryComponent(surface, tuple(faces)))
    return BoundarySurface(tuple(components))


def singular_vertices(g: ColouredGraph) -> SingularVertexSet:
    """Return the vertices of K(Γ) whose links are not 2-spheres."""
    if not g.is_regular:
        raise PreconditionError("singular_vertices needs a regular graph")
    members = []
    for label in COLOURS:
        for residue in residues(g, complement(label)):
            link = surface_of_residue(g, residue)
            if link != SPHERE:
                members.append(SingularVertex(label, residue.vertices, link))
    chi = build_complex(g).euler_characteristic
    return SingularVertexSet(tuple(members), chi)


def cap_off(g: ColouredGraph, i: int) -> ColouredGraph:
    """Join the two ends of every {i,3}-path by a 3-edge, coning off the boundary."""
    if i not in (0, 1, 2):
        raise PreconditionError(f"cap_off colour must be 0, 1 or 2, got {i}")
    if g.is_regular:
        raise PreconditionError("cap_off needs a graph with boundary")
    third = list(g.matchings[3])
    for u, w, colour in boundary_pairings(g):
        if colour != i:
            continue
        if third[u] is not None or third[w] is not None:
            raise ConsistencyError(f"boundary vertices {u}, {w} already capped")
        third[u], third[w] = w, u
    if any(partner is None for partner in third):
        raise ConsistencyError("some {%d,3}-path endpoints were left unmatched" % i)
    matchings = g.matchings[:3] + (tuple(third),)
    name = f"cap{i}({g.name})" if g.name else None
    return ColouredGraph(g.vertex_count, matchings, name)


@dataclass(frozen=True)
class Desingularization:
    """A gem with boundary obtained by removing the stars of singular 0-vertices.

    ``origin[x]`` gives the source vertex and the prism piece of new vertex ``x``.
    ``residue_types`` maps ``(colour pair, least vertex)`` of every {0,2}- and
    {1,3}-residue to the type of the dual edge of the new complex.
    """

    graph: ColouredGraph
    source: ColouredGraph
    origin: tuple[tuple[int, Piece], ...]
    residue_types: dict[tuple[tuple[int, int], int], str]

    def pieces_of(self, vertex: int) -> dict[Piece, int]:
        """Return the new vertices produced from source ``vertex``."""
        return {
            piece: index
            for index, (source, piece) in enumerate(self.origin)
            if source == vertex
        }

    def residue_type(self, pair: tuple[int, int], vertices: tuple[int, ...]) -> str:
        return self.residue_types[(pair, min(vertices))]


def desingularize(g: ColouredGraph) -> Desingularization:
    """Truncate the tetrahedra at singular 0-vertices into three-piece prisms.

    Each tetrahedron with a singular 0-corner is cut near that corner; the prism
    left over is split into pieces T1, T2, T3, with the new truncation points
    labelled 0, 2, 1. T1 carries the boundary face.
    """
    graph_class = classify(g)
    if graph_class.tag != "SingularRegular" or graph_class.singular_colour != 0:
        raise PreconditionError(
            f"desingularize needs a SingularRegular(0) graph, got {graph_class.label()}"
        )
    truncated = {
        vertex
        for item in graph_class.residues
        if item.colour == 0 and item.surface != SPHERE
        for vertex in item.vertices
    }
    origin: list[tuple[int, Piece]] = []
    ids: dict[tuple[int, Piece], int] = {}
    for vertex in range(g.vertex_count):
        pieces: tuple[Piece, ...] = ("T1", "T2", "T3") if vertex in truncated else ("kept",)
        for piece in pieces:
            ids[(vertex, piece)] = len(origin)
            origin.append((vertex, piece))

    def bottom(vertex: int) -> int:
        return ids[(vertex, "T3")] if vertex in truncated else ids[(vertex, "kept")]

    def nb(vertex: int, colour: int) -> int:
        partner = g.neighbour(vertex, colour)
        assert partner is not None
        return partner

    table: list[list[int | None]] = [[None] * len(origin) for _ in COLOURS]
    for vertex in range(g.vertex_count):
        if vertex not in truncated:
            own = ids[(vertex, "kept")]
            table[0][own] = bottom(nb(vertex, 0))
            for colour in (1, 2, 3):
                table[colour][own] = ids[(nb(vertex, colour), "kept")]
            continue
        t1, t2, t3 = (ids[(vertex, piece)] for piece in ("T1", "T2", "T3"))
        table[0][t1] = ids[(nb(vertex, 2), "T1")]
        table[1][t1] = t2
        table[2][t1] = ids[(nb(vertex, 1), "T1")]
        table[0][t2] = ids[(nb(vertex, 2), "T2")]
        table[1][t2] = t1
        table[2][t2] = t3
        table[3][t2] = ids[(nb(vertex, 3), "T2")]
        table[0][t3] = bottom(nb(vertex, 0))
        table[1][t3] = ids[(nb(vertex, 1), "T3")]
        table[2][t3] = t2
        table[3][t3] = ids[(nb(vertex, 3), "T3")]

    name = f"desing({g.name})" if g.name else None
    result = ColouredGraph(len(origin), tuple(tuple(row) for row in table), name)
    _check_desingularization(g, result, graph_class.residues)
    types = _residue_types(result, origin)
    logger.info(
        "desingularized %d tetrahedra into a gem with %d vertices",
        len(truncated),
        result.vertex_count,
    )
    return Desingularization(result, g, tuple(origin), types)


def _residue_types(
    g: ColouredGraph, origin: list[tuple[int, Piece]]
) -> dict[tuple[tuple[int, int], int], str]:
    types: dict[tuple[tuple[int, int], int], str] = {}
    for residue in residues(g, (0, 2)):
        collar = all(origin[v][1] == "T1" for v in residue.vertices)
        types[((0, 2), min(residue.vertices))] = "1'-3" if collar else "1-3"
    for residue in residues(g, (1, 3)):
        if not residue.is_cycle:
            kind = "0'-2'"
        elif any(origin[v][1] == "T3" for v in residue.vertices):
            kind = "0'-2"
        else:
            kind = "0-2"
        types[((1, 3), min(residue.vertices))] = kind
    return types


def _check_desingularization(
    source: ColouredGraph, result: ColouredGraph, links: tuple[ResidueSurface, ...]
) -> None:
    result_class = classify(result)
    if result_class.tag != "BoundaryGem":
        raise ConsistencyError(f"desingularization produced {result_class.label()}")
    removed = sorted(
        (item.surface for item in links if item.colour == 0 and item.surface != SPHERE),
        key=repr,
    )
    found = sorted(boundary_surface(build_complex(result)).surfaces, key=repr)
    if removed != found:
        raise ConsistencyError(f"boundary {found} does not match the removed links {removed}")
    before = embed(source, (0, 1, 2, 3)).surface.genus
    after = embed(result, (0, 1, 2, 3)).surface.genus
    if before != after:
        raise ConsistencyError(f"desingularization changed the regular genus {before} -> {after}")


def complex_to_json(k: Pseudocomplex) -> dict[str, Any]:
    """Debug dump of a pseudocomplex; not a stable interchange format."""
    return {
        "tetrahedra": [
            {"corners": [k.vertex_classes[label][t] for label in COLOURS]}
            for t in range(k.tetrahedron_count)
        ],
        "gluings": [list(row) for row in k.gluings],
        "vertex_classes": {str(label): k.class_count(label) for label in COLOURS},
        "euler_characteristic": k.euler_characteristic,
    }
