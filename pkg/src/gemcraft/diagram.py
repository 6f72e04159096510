"""Generalized Heegaard diagrams as combinatorial maps.

A diagram is a cellular map on a closed surface. Every map edge lies on a V- or
W-curve, or is auxiliary structure (edges of {α,3}-paths, boundary arcs) that
only takes part in region merging. Each edge records its two sides: the face on
that side and the corner it occupies at either end. Corners are the angular
sectors around a vertex, so cutting along any set of edges is an exact
union-find computation on faces and corners.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import networkx as nx

from .exceptions import ConsistencyError, GraphFormatError
from .graph import SurfaceType

logger = logging.getLogger(__name__)

System = Literal["V", "W"]
ArcTag = Literal["upper", "lower"]


@dataclass(frozen=True)
class Side:
    face: int
    corners: tuple[int, int]


@dataclass(frozen=True)
class MapEdge:
    """An edge of the map; ``curve`` is ``None`` for auxiliary edges."""

    ends: tuple[int, int]
    curve: int | None
    sides: tuple[Side, Side]


@dataclass(frozen=True)
class Curve:
    """A curve of one of the two systems.

    ``vertices`` lists the map vertices along the curve in order. A free circle
    has no vertices and sits inside face ``face``.
    """

    system: System
    vertices: tuple[int, ...]
    label: str
    colours: tuple[int, int] | None = None
    face: int | None = None

    @property
    def is_free(self) -> bool:
        return not self.vertices


@dataclass(frozen=True)
class PlanarPresentation:
    """A planar drawing of a diagram, enough to double its W-curves.

    Points ``0..n-1`` are the diagram crossings; the remaining points are the
    crossings of the W-curves with the horizontal axis curve. ``v_orders`` gives,
    for every V-curve and then the axis, the points along it paired with whether
    the parallel copy of the W-curve meets that curve just before the point.
    ``w_orders`` lists the points along every W-curve and ``w_arcs`` tags the arc
    leaving each of them as running through the upper or the lower half-plane.
    """

    point_labels: tuple[str, ...]
    v_orders: tuple[tuple[tuple[int, bool], ...], ...]
    axis: tuple[tuple[int, bool], ...]
    w_orders: tuple[tuple[int, ...], ...]
    w_arcs: tuple[tuple[ArcTag, ...], ...]


@dataclass(frozen=True)
class HeegaardDiagram:
    """A map on a closed surface carrying a V and a W curve system."""

    surface: SurfaceType
    vertex_count: int
    corner_vertex: tuple[int, ...]
    face_count: int
    curves: tuple[Curve, ...]
    edges: tuple[MapEdge, ...]
    vertex_labels: tuple[str, ...]
    planar: PlanarPresentation | None = None
    alpha: int | None = None
    permutation: tuple[int, ...] | None = None
    rotations: tuple[tuple[tuple[int, int, int], ...], ...] | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        chi = self.vertex_count - len(self.edges) + self.face_count
        if chi != self.surface.euler_characteristic:
            raise ConsistencyError(
                f"map has V-E+F = {chi}, surface {self.surface.describe()} needs "
                f"{self.surface.euler_characteristic}"
            )
        for index, edge in enumerate(self.edges):
            for side in edge.sides:
                for end, corner in zip(edge.ends, side.corners, strict=True):
                    if self.corner_vertex[corner] != end:
                        raise ConsistencyError(f"edge {index}: corner {corner} not at vertex {end}")

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def corner_count(self) -> int:
        return len(self.corner_vertex)

    def system_curves(self, system: System) -> tuple[int, ...]:
        return tuple(i for i, curve in enumerate(self.curves) if curve.system == system)

    @cached_property
    def corner_face(self) -> tuple[int, ...]:
        faces = [-1] * self.corner_count
        for edge in self.edges:
            for side in edge.sides:
                for corner in side.corners:
                    if faces[corner] not in (-1, side.face):
                        raise ConsistencyError(f"corner {corner} lies in two faces")
                    faces[corner] = side.face
        return tuple(faces)

    @cached_property
    def face_vertices(self) -> tuple[frozenset[int], ...]:
        members: list[set[int]] = [set() for _ in range(self.face_count)]
        for corner, face in enumerate(self.corner_face):
            if face >= 0:
                members[face].add(self.corner_vertex[corner])
        return tuple(frozenset(item) for item in members)

    @cached_property
    def curve_edges(self) -> tuple[tuple[int, ...], ...]:
        table: list[list[int]] = [[] for _ in self.curves]
        for index, edge in enumerate(self.edges):
            if edge.curve is not None:
                table[edge.curve].append(index)
        return tuple(tuple(row) for row in table)

    @cached_property
    def vertex_curves(self) -> tuple[frozenset[int], ...]:
        table: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for index, curve in enumerate(self.curves):
            for vertex in curve.vertices:
                table[vertex].add(index)
        return tuple(frozenset(row) for row in table)

    def crossings(self) -> tuple[int, ...]:
        """Vertices lying on both a V-curve and a W-curve."""
        return singular_vertices_after(self, frozenset())

    def free_circles(self) -> tuple[int, ...]:
        return tuple(i for i, curve in enumerate(self.curves) if curve.is_free)

    @classmethod
    def from_rotations(
        cls,
        genus: int,
        curves: Sequence[tuple[System, Sequence[int]]],
        rotations: Sequence[Sequence[tuple[int, int, int]]],
        *,
        free_faces: dict[int, int] | None = None,
        vertex_labels: Sequence[str] | None = None,
        planar: PlanarPresentation | None = None,
        name: str | None = None,
    ) -> "HeegaardDiagram":
        """Build an orientable diagram from curve crossing orders and rotations.

        Arc ``k`` of a curve runs from its ``k``-th crossing to the next one.
        ``rotations[x]`` lists the four arc ends ``(curve, arc, end)`` around
        crossing ``x`` counter-clockwise; ``end`` is 0 at the arc's start.
        """
        n = len(rotations)
        arc_ids: dict[tuple[int, int], int] = {}
        ends: list[tuple[int, int]] = []
        arc_curve: list[int] = []
        for c, (_, crossings) in enumerate(curves):
            m = len(crossings)
            for k in range(m):
                u, v = crossings[k], crossings[(k + 1) % m]
                for x in (u, v):
                    if not 0 <= x < n:
                        raise GraphFormatError(f"curves[{c}]: crossing {x} out of range")
                arc_ids[(c, k)] = len(ends)
                ends.append((u, v))
                arc_curve.append(c)

        position: dict[tuple[int, int], int] = {}
        for x, rotation in enumerate(rotations):
            if len(rotation) != 4:
                raise GraphFormatError(f"rotations[{x}]: expected 4 arc ends, got {len(rotation)}")
            systems = []
            for p, (c, k, t) in enumerate(rotation):
                if (c, k) not in arc_ids or t not in (0, 1):
                    raise GraphFormatError(f"rotations[{x}][{p}]: unknown arc end {[c, k, t]}")
                e = arc_ids[(c, k)]
                if ends[e][t] != x:
                    raise GraphFormatError(f"rotations[{x}][{p}]: arc end {[c, k, t]} is elsewhere")
                if (e, t) in position:
                    raise GraphFormatError(f"rotations[{x}][{p}]: arc end repeated")
                position[(e, t)] = 4 * x + p
                systems.append(curves[c][0])
            if any(systems[p] == systems[(p + 1) % 4] for p in range(4)):
                raise GraphFormatError(f"rotations[{x}]: curves must alternate V, W, V, W")
        if len(position) != 2 * len(ends):
            raise GraphFormatError("rotations do not cover every arc end exactly once")

        def corner(x: int, p: int) -> int:
            return 4 * x + p % 4

        def opposite(dart: tuple[int, int]) -> tuple[int, int]:
            return dart[0], 1 - dart[1]

        dart_at = {pos: dart for dart, pos in position.items()}
        face_of: dict[tuple[int, int], int] = {}
        faces = 0
        for start in sorted(position, key=position.__getitem__):
            if start in face_of:
                continue
            dart = start
            while dart not in face_of:
                face_of[dart] = faces
                arriving = position[opposite(dart)]
                y = arriving // 4
                dart = dart_at[corner(y, arriving + 1)]
            faces += 1

        edges = []
        for e, (u, v) in enumerate(ends):
            p0, p1 = position[(e, 0)], position[(e, 1)]
            side0 = Side(face_of[(e, 0)], (corner(u, p0 - 1), p1))
            side1 = Side(face_of[(e, 1)], (p0, corner(v, p1 - 1)))
            edges.append(MapEdge((u, v), arc_curve[e], (side0, side1)))

        chi = n - len(edges) + faces
        if chi != 2 - 2 * genus:
            raise GraphFormatError(
                f"rotation system traces {faces} faces (chi={chi}), genus {genus} needs "
                f"chi={2 - 2 * genus}"
            )
        curve_list = []
        for c, (system, crossings) in enumerate(curves):
            face = None
            if not crossings:
                if free_faces is None or c not in free_faces:
                    raise GraphFormatError(f"curves[{c}]: free circle needs a face")
                face = free_faces[c]
                if not 0 <= face < faces:
                    raise GraphFormatError(f"curves[{c}]: face {face} out of range")
            curve_list.append(Curve(system, tuple(crossings), f"{system}{c}", None, face))
        labels = tuple(vertex_labels) if vertex_labels else tuple(str(x) for x in range(n))
        return cls(
            surface=SurfaceType(True, genus, 0),
            vertex_count=n,
            corner_vertex=tuple(x for x in range(n) for _ in range(4)),
            face_count=faces,
            curves=tuple(curve_list),
            edges=tuple(edges),
            vertex_labels=labels,
            planar=planar,
            rotations=tuple(tuple(tuple(end) for end in rotation) for rotation in rotations),
            name=name,
        )


@dataclass(frozen=True)
class CutPiece:
    """A component of the surface cut along a set of curves."""

    faces: tuple[int, ...]
    euler_characteristic: int
    boundary_circles: int
    orientable: bool

    @property
    def deficit(self) -> int:
        """``2 - χ - b``: twice the genus, or the non-orientable genus."""
        return 2 - self.euler_characteristic - self.boundary_circles

    @property
    def surface(self) -> SurfaceType:
        genus = self.deficit // 2 if self.orientable else self.deficit
        return SurfaceType(self.orientable, genus, self.boundary_circles)


@dataclass(frozen=True)
class CutDualGraph:
    """Pieces of the surface cut along ``curves``, joined by one edge per curve.

    ``edges`` holds ``(curve, piece, piece)`` triples.
    """

    curves: tuple[int, ...]
    nodes: tuple[CutPiece, ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def plus_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, node in enumerate(self.nodes) if node.deficit > 0)

    @property
    def is_proper(self) -> bool:
        return not self.plus_nodes

    @property
    def is_reduced(self) -> bool:
        return len(self.nodes) == 1 or all(node.deficit > 0 for node in self.nodes)

    @property
    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.nodes) + 1

    def multigraph(self) -> "nx.MultiGraph[int]":
        graph: nx.MultiGraph[int] = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        for curve, a, b in self.edges:
            graph.add_edge(a, b, key=curve)
        return graph


def cut(d: HeegaardDiagram, curves: Iterable[int]) -> CutDualGraph:
    """Cut the surface of ``d`` along ``curves`` and return the dual graph."""
    chosen = tuple(sorted(set(curves)))
    cutting = set(chosen)
    faces = nx.utils.UnionFind(range(d.face_count))
    corners = nx.utils.UnionFind(range(d.corner_count))
    for edge in d.edges:
        if edge.curve in cutting:
            continue
        first, second = edge.sides
        faces.union(first.face, second.face)
        corners.union(first.corners[0], second.corners[0])
        corners.union(first.corners[1], second.corners[1])

    piece_of_root: dict[int, int] = {}
    for f in range(d.face_count):
        piece_of_root.setdefault(faces[f], len(piece_of_root))

    def piece(face: int) -> int:
        return piece_of_root[faces[face]]

    count = len(piece_of_root)
    chi = [0] * count
    members: list[list[int]] = [[] for _ in range(count)]
    for f in range(d.face_count):
        members[piece(f)].append(f)
        chi[piece(f)] += 1
    classes: list[set[int]] = [set() for _ in range(count)]
    for corner, face in enumerate(d.corner_face):
        if face >= 0:
            classes[piece(face)].add(corners[corner])
    for index in range(count):
        chi[index] += len(classes[index])
    rims = nx.utils.UnionFind()
    touched: list[set[int]] = [set() for _ in range(count)]
    for edge in d.edges:
        if edge.curve in cutting:
            for side in edge.sides:
                a, b = corners[side.corners[0]], corners[side.corners[1]]
                rims.union(a, b)
                touched[piece(side.face)].update((a, b))
                chi[piece(side.face)] -= 1
        else:
            chi[piece(edge.sides[0].face)] -= 1
    boundary = [len({rims[c] for c in group}) for group in touched]

    nodes = [
        CutPiece(tuple(members[i]), chi[i], boundary[i], d.surface.orientable)
        for i in range(count)
    ]
    edges = []
    for curve in chosen:
        host = d.curves[curve]
        if host.is_free:
            assert host.face is not None
            home = piece(host.face)
            old = nodes[home]
            nodes[home] = CutPiece(
                old.faces, old.euler_characteristic - 1, old.boundary_circles + 1, old.orientable
            )
            nodes.append(CutPiece((), 1, 1, True))
            edges.append((curve, home, len(nodes) - 1))
            continue
        first = d.edges[d.curve_edges[curve][0]]
        edges.append((curve, piece(first.sides[0].face), piece(first.sides[1].face)))
    return CutDualGraph(chosen, tuple(nodes), tuple(edges))


def system_cut(d: HeegaardDiagram, system: System, removed: Iterable[int] = ()) -> CutDualGraph:
    """Cut along the curves of ``system`` that are not in ``removed``."""
    gone = set(removed)
    return cut(d, (c for c in d.system_curves(system) if c not in gone))


def singular_vertices_after(d: HeegaardDiagram, removed: frozenset[int]) -> tuple[int, ...]:
    """Vertices where a surviving V-curve meets a surviving W-curve."""
    result = []
    for vertex, through in enumerate(d.vertex_curves):
        systems = {d.curves[c].system for c in through if c not in removed}
        if len(systems) == 2:
            result.append(vertex)
    return tuple(result)


@dataclass(frozen=True)
class Region:
    """A region of the surface minus the surviving curves."""

    index: int
    faces: tuple[int, ...]
    singular: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.singular)


def regions(d: HeegaardDiagram, removed: Iterable[int] = ()) -> list[Region]:
    """Merge faces across auxiliary and removed edges and count singular vertices.

    Surviving free circles each bound one extra region with no vertices.
    """
    gone = frozenset(removed)
    faces = nx.utils.UnionFind(range(d.face_count))
    for edge in d.edges:
        if edge.curve is None or edge.curve in gone:
            faces.union(edge.sides[0].face, edge.sides[1].face)
    groups: dict[int, list[int]] = {}
    for f in range(d.face_count):
        groups.setdefault(faces[f], []).append(f)
    singular = set(singular_vertices_after(d, gone))
    result = []
    for members in sorted(groups.values()):
        seen: set[int] = set()
        for f in members:
            seen |= d.face_vertices[f]
        result.append(Region(len(result), tuple(members), tuple(sorted(seen & singular))))
    for curve in d.free_circles():
        if curve not in gone:
            result.append(Region(len(result), (), ()))
    return result


def condition_star(d: HeegaardDiagram) -> bool:
    """Every curve of either system meets at least one curve of the other system."""
    crossing = set(d.crossings())
    return all(any(v in crossing for v in curve.vertices) for curve in d.curves)


def is_connected_diagram(d: HeegaardDiagram) -> bool:
    """Whether cutting along every curve leaves only disks."""
    if d.free_circles():
        return False
    pieces = cut(d, range(len(d.curves)))
    return all(node.deficit == 0 and node.boundary_circles == 1 for node in pieces.nodes)
