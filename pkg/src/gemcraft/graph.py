"""Four-coloured graphs: residues, classification, isomorphism and extension.

A :class:`ColouredGraph` is stored as four per-colour matchings over the dense
vertex range ``0..n-1``. Colours 0, 1 and 2 are total; colour 3 may be partial
and the vertices lacking it are the boundary vertices.
"""

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cache
from typing import Literal

import networkx as nx

from .exceptions import ConsistencyError, GraphFormatError, PreconditionError

logger = logging.getLogger(__name__)

COLOURS: tuple[int, ...] = (0, 1, 2, 3)
COLOUR_PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(COLOURS, 2))

GraphTag = Literal["ClosedGem", "BoundaryGem", "SingularRegular", "Invalid"]


@dataclass(frozen=True)
class ColouredGraph:
    """A connected 4-coloured graph given by its per-colour matchings.

    ``matchings[c][v]`` is the ``c``-neighbour of ``v``, or ``None`` when ``v``
    is a boundary vertex and ``c == 3``.
    """

    vertex_count: int
    matchings: tuple[tuple[int | None, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 1:
            raise GraphFormatError("a coloured graph needs at least one vertex")
        if len(self.matchings) != 4:
            raise GraphFormatError(f"expected 4 colour matchings, got {len(self.matchings)}")
        for colour, matching in enumerate(self.matchings):
            if len(matching) != n:
                raise GraphFormatError(
                    f"colour {colour}: matching has {len(matching)} entries for {n} vertices"
                )
            for vertex, partner in enumerate(matching):
                if partner is None:
                    if colour != 3:
                        raise GraphFormatError(f"vertex {vertex} has no {colour}-coloured edge")
                    continue
                if not 0 <= partner < n:
                    raise GraphFormatError(
                        f"colour {colour}: vertex {vertex} paired with {partner} out of range"
                    )
                if partner == vertex:
                    raise GraphFormatError(f"colour {colour}: vertex {vertex} paired with itself")
                if matching[partner] != vertex:
                    raise GraphFormatError(
                        f"colour {colour}: pairing {vertex}-{partner} is not symmetric"
                    )
        if not nx.is_connected(to_multigraph(self)):
            raise GraphFormatError("coloured graph is not connected")

    @classmethod
    def from_edges(
        cls, vertex_count: int, edges: Iterable[tuple[int, int, int]], name: str | None = None
    ) -> "ColouredGraph":
        """Build a graph from ``(u, v, colour)`` triples."""
        table: list[list[int | None]] = [[None] * vertex_count for _ in COLOURS]
        for index, (u, v, colour) in enumerate(edges):
            if colour not in COLOURS:
                raise GraphFormatError(f"edges[{index}]: colour {colour} not in 0..3")
            for end in (u, v):
                if not 0 <= end < vertex_count:
                    raise GraphFormatError(f"edges[{index}]: vertex {end} out of range")
            if u == v:
                raise GraphFormatError(f"edges[{index}]: loop at vertex {u}")
            for end in (u, v):
                if table[colour][end] is not None:
                    raise GraphFormatError(
                        f"edges[{index}]: vertex {end} already has a {colour}-coloured edge"
                    )
            table[colour][u] = v
            table[colour][v] = u
        return cls(vertex_count, tuple(tuple(row) for row in table), name)

    def neighbour(self, vertex: int, colour: int) -> int | None:
        """Return the ``colour``-neighbour of ``vertex``."""
        return self.matchings[colour][vertex]

    def edges(self) -> list[tuple[int, int, int]]:
        """Return every edge once as ``(u, v, colour)`` with ``u < v``, sorted."""
        result = [
            (vertex, partner, colour)
            for colour in COLOURS
            for vertex, partner in enumerate(self.matchings[colour])
            if partner is not None and vertex < partner
        ]
        return sorted(result)

    @property
    def boundary_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, partner in enumerate(self.matchings[3]) if partner is None)

    @property
    def is_regular(self) -> bool:
        return all(partner is not None for partner in self.matchings[3])


@dataclass(frozen=True)
class Residue:
    """A connected component of a graph restricted to ``colours``.

    Two-colour residues list their vertices in walking order, starting from the
    least vertex of a cycle or the least endpoint of a path.
    """

    colours: tuple[int, ...]
    vertices: tuple[int, ...]
    is_cycle: bool


@dataclass(frozen=True)
class SurfaceType:
    """A compact surface: orientability, genus and boundary circle count.

    ``genus`` is the non-orientable genus when ``orientable`` is false.
    """

    orientable: bool
    genus: int
    boundary_components: int = 0

    @property
    def euler_characteristic(self) -> int:
        handles = 2 * self.genus if self.orientable else self.genus
        return 2 - handles - self.boundary_components

    def describe(self) -> str:
        """Return a short human-readable name such as ``S2`` or ``T2``."""
        if self.orientable and self.genus == 0:
            return {0: "S2", 1: "D2", 2: "annulus"}.get(
                self.boundary_components, f"S2-{self.boundary_components}"
            )
        if self.orientable and self.genus == 1 and self.boundary_components == 0:
            return "T2"
        prefix = "S" if self.orientable else "U"
        suffix = f"-{self.boundary_components}" if self.boundary_components else ""
        return f"{prefix}{self.genus}{suffix}"


SPHERE = SurfaceType(True, 0, 0)
DISK = SurfaceType(True, 0, 1)


@dataclass(frozen=True)
class ResidueSurface:
    """Surface type of one ĉ-residue; ``colour`` is the missing colour c."""

    colour: int
    vertices: tuple[int, ...]
    surface: SurfaceType


@dataclass(frozen=True)
class GraphClass:
    tag: GraphTag
    singular_colour: int | None
    residues: tuple[ResidueSurface, ...]

    @property
    def offending(self) -> tuple[ResidueSurface, ...]:
        """Residues that are neither spheres nor (for boundary graphs) disks."""
        allowed = {SPHERE} if self.tag != "BoundaryGem" else {SPHERE, DISK}
        return tuple(item for item in self.residues if item.surface not in allowed)

    @property
    def is_gem(self) -> bool:
        return self.tag in ("ClosedGem", "BoundaryGem")

    def label(self) -> str:
        if self.tag == "SingularRegular":
            return f"SingularRegular({self.singular_colour})"
        return self.tag


@dataclass(frozen=True)
class ExtendedGraph:
    """A graph with boundary plus one degree-1 vertex per boundary vertex.

    ``star[u]`` is the new vertex joined to boundary vertex ``u`` by a 3-edge;
    the new vertices are numbered after the original ones.
    """

    base: ColouredGraph
    star: dict[int, int]

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count + len(self.star)

    def neighbour(self, vertex: int, colour: int) -> int | None:
        n = self.base.vertex_count
        if vertex >= n:
            if colour != 3:
                return None
            return self.boundary_of(vertex)
        partner = self.base.neighbour(vertex, colour)
        if partner is None and colour == 3:
            return self.star[vertex]
        return partner

    def boundary_of(self, star_vertex: int) -> int:
        for vertex, image in self.star.items():
            if image == star_vertex:
                return vertex
        raise KeyError(star_vertex)

    def edges(self) -> list[tuple[int, int, int]]:
        extra = [(vertex, image, 3) for vertex, image in self.star.items()]
        return sorted(self.base.edges() + extra)


def to_multigraph(g: ColouredGraph) -> "nx.MultiGraph[int]":
    """Return ``g`` as a networkx multigraph keyed by colour."""
    multigraph: nx.MultiGraph[int] = nx.MultiGraph()
    multigraph.add_nodes_from(range(g.vertex_count))
    for colour in COLOURS:
        for vertex, partner in enumerate(g.matchings[colour]):
            if partner is not None and vertex < partner:
                multigraph.add_edge(vertex, partner, key=colour, colour=colour)
    return multigraph


def _normalize_colours(colours: Iterable[int]) -> tuple[int, ...]:
    result = tuple(sorted(set(colours)))
    if not result or len(result) > 3 or any(c not in COLOURS for c in result):
        raise PreconditionError(f"residue colours must be 1 to 3 colours of 0..3, got {result}")
    return result


def _walk(g: ColouredGraph, start: int, colours: tuple[int, int]) -> tuple[list[int], bool]:
    """Walk the two-colour component of ``start``; return its vertices and cycle flag."""
    a, b = colours
    forward = [start]
    colour, current = a, start
    while True:
        nxt = g.neighbour(current, colour)
        if nxt is None:
            break
        if nxt == start:
            least = min(forward)
            if least == start:
                return forward, True
            return _walk(g, least, colours)
        forward.append(nxt)
        current, colour = nxt, b if colour == a else a
    backward: list[int] = []
    colour, current = b, start
    while (nxt := g.neighbour(current, colour)) is not None:
        backward.append(nxt)
        current, colour = nxt, b if colour == a else a
    path = backward[::-1] + forward
    if path[-1] < path[0]:
        path.reverse()
    return path, False


@cache
def _residues(g: ColouredGraph, colours: tuple[int, ...]) -> tuple[Residue, ...]:
    seen = [False] * g.vertex_count
    found: list[Residue] = []
    for seed in range(g.vertex_count):
        if seen[seed]:
            continue
        if len(colours) == 2:
            members, is_cycle = _walk(g, seed, (colours[0], colours[1]))
        else:
            members = []
            queue = deque([seed])
            seen_local = {seed}
            while queue:
                vertex = queue.popleft()
                members.append(vertex)
                for colour in colours:
                    partner = g.neighbour(vertex, colour)
                    if partner is not None and partner not in seen_local:
                        seen_local.add(partner)
                        queue.append(partner)
            members.sort()
            is_cycle = False
        for vertex in members:
            seen[vertex] = True
        found.append(Residue(colours, tuple(members), is_cycle))
    return tuple(found)


def residues(g: ColouredGraph, colours: Iterable[int]) -> list[Residue]:
    """Return the residues of ``g`` for ``colours``, ordered by least vertex.

    >>> g = ColouredGraph.from_edges(2, [(0, 1, c) for c in range(4)])
    >>> [r.vertices for r in residues(g, {0, 1})]
    [(0, 1)]
    """
    return list(_residues(g, _normalize_colours(colours)))


def residue_index(g: ColouredGraph, colours: Iterable[int]) -> list[int]:
    """Return, per vertex, the position of its residue in :func:`residues`."""
    index = [0] * g.vertex_count
    for position, residue in enumerate(residues(g, colours)):
        for vertex in residue.vertices:
            index[vertex] = position
    return index


def census(g: ColouredGraph) -> dict[str, int]:
    """Return the residue counts ``g_ij`` for colour pairs and ``g_ĉ`` for triples."""
    counts = {f"g{i}{j}": len(residues(g, (i, j))) for i, j in COLOUR_PAIRS}
    for colour in COLOURS:
        counts[f"g{colour}^"] = len(residues(g, complement(colour)))
    return counts


def pair_census(g: ColouredGraph) -> tuple[int, ...]:
    """Return ``(g01, g02, g03, g12, g13, g23)``."""
    return tuple(len(residues(g, pair)) for pair in COLOUR_PAIRS)


def complement(*colours: int) -> tuple[int, ...]:
    return tuple(c for c in COLOURS if c not in colours)


def _bipartite_on(g: ColouredGraph, vertices: Sequence[int], colours: Sequence[int]) -> bool:
    sub: nx.MultiGraph[int] = nx.MultiGraph()
    sub.add_nodes_from(vertices)
    for vertex in vertices:
        for colour in colours:
            partner = g.neighbour(vertex, colour)
            if partner is not None:
                sub.add_edge(vertex, partner)
    return bool(nx.is_bipartite(sub))


def is_bipartite(g: ColouredGraph) -> bool:
    """Return whether ``g`` admits a proper 2-colouring of its vertices."""
    return bool(nx.is_bipartite(to_multigraph(g)))


def surface_of_residue(g: ColouredGraph, r: Residue) -> SurfaceType:
    """Return the surface of the 2-dimensional complex dual to a 3-colour residue."""
    if len(r.colours) != 3:
        raise PreconditionError(f"surface_of_residue needs a 3-colour residue, got {r.colours}")
    members = set(r.vertices)
    bicoloured = 0
    path_of: dict[tuple[tuple[int, int], int], int] = {}
    paths: list[Residue] = []
    for pair in itertools.combinations(r.colours, 2):
        for residue in residues(g, pair):
            if residue.vertices[0] not in members:
                continue
            bicoloured += 1
            if not residue.is_cycle:
                for vertex in residue.vertices:
                    path_of[(pair, vertex)] = len(paths)
                paths.append(residue)
    edges = 0
    missing: list[int] = []
    for vertex in r.vertices:
        for colour in r.colours:
            if g.neighbour(vertex, colour) is None:
                missing.append(vertex)
            else:
                edges += 1
    edges //= 2
    chi = bicoloured - (edges + len(missing)) + len(r.vertices)

    circles = nx.utils.UnionFind(range(len(paths)))
    others = [c for c in r.colours if c != 3]
    for vertex in missing:
        ends = [path_of[((c, 3), vertex)] for c in others]
        circles.union(*ends)
    boundary = len(list(circles.to_sets())) if paths else 0

    orientable = _bipartite_on(g, r.vertices, r.colours)
    defect = 2 - chi - boundary
    if defect < 0 or (orientable and defect % 2):
        raise ConsistencyError(
            f"residue {r.colours} at vertex {r.vertices[0]} is not a surface (chi={chi})"
        )
    return SurfaceType(orientable, defect // 2 if orientable else defect, boundary)


@cache
def _classify(g: ColouredGraph) -> GraphClass:
    reports = tuple(
        ResidueSurface(colour, r.vertices, surface_of_residue(g, r))
        for colour in COLOURS
        for r in residues(g, complement(colour))
    )
    if g.is_regular:
        bad = {item.colour for item in reports if item.surface != SPHERE}
        if not bad:
            return GraphClass("ClosedGem", None, reports)
        if len(bad) == 1:
            return GraphClass("SingularRegular", bad.pop(), reports)
        return GraphClass("Invalid", None, reports)
    if all(item.surface in (SPHERE, DISK) for item in reports):
        return GraphClass("BoundaryGem", None, reports)
    return GraphClass("Invalid", None, reports)


def classify(g: ColouredGraph) -> GraphClass:
    """Classify ``g`` as a closed gem, gem with boundary, singular graph or invalid."""
    result = _classify(g)
    logger.debug("classified %s as %s", g.name or "graph", result.label())
    return result


def boundary_pairings(g: ColouredGraph) -> list[tuple[int, int, int]]:
    """Return ``(u, w, i)`` for every {i,3}-path, ``u < w`` its endpoints, ``i`` in 0..2."""
    result = []
    for i in (0, 1, 2):
        for residue in residues(g, (i, 3)):
            if not residue.is_cycle:
                u, w = residue.vertices[0], residue.vertices[-1]
                result.append((min(u, w), max(u, w), i))
    return sorted(result)


def boundary_components(g: ColouredGraph) -> list[list[int]]:
    """Group boundary vertices into the components of the boundary surface."""
    boundary = g.boundary_vertices
    if not boundary:
        return []
    groups = nx.utils.UnionFind(boundary)
    for u, w, _ in boundary_pairings(g):
        groups.union(u, w)
    return sorted(sorted(group) for group in groups.to_sets())


def is_contracted(g: ColouredGraph) -> bool:
    """Return whether a gem has the minimal residue counts of a crystallization."""
    graph_class = classify(g)
    if not graph_class.is_gem:
        raise PreconditionError(f"is_contracted needs a gem, got {graph_class.label()}")
    counts = census(g)
    h = len(boundary_components(g))
    if h <= 1:
        return all(counts[f"g{c}^"] == 1 for c in COLOURS)
    return counts["g3^"] == 1 and all(counts[f"g{c}^"] == h for c in (0, 1, 2))


def permute_colours(g: ColouredGraph, permutation: Sequence[int]) -> ColouredGraph:
    """Recolour edges: colour ``c`` becomes ``permutation[c]``."""
    if sorted(permutation) != list(COLOURS):
        raise PreconditionError(f"not a permutation of 0..3: {tuple(permutation)}")
    table: list[tuple[int | None, ...]] = [()] * 4
    for colour in COLOURS:
        table[permutation[colour]] = g.matchings[colour]
    if any(partner is None for c in (0, 1, 2) for partner in table[c]):
        raise PreconditionError("colour permutation moves missing 3-edges onto a total colour")
    return ColouredGraph(g.vertex_count, tuple(table), g.name)


def relabel(g: ColouredGraph, mapping: Sequence[int], name: str | None = None) -> ColouredGraph:
    """Return the graph with vertex ``v`` renamed ``mapping[v]``."""
    n = g.vertex_count
    if sorted(mapping) != list(range(n)):
        raise PreconditionError("relabelling is not a bijection")
    table: list[list[int | None]] = [[None] * n for _ in COLOURS]
    for colour in COLOURS:
        for vertex, partner in enumerate(g.matchings[colour]):
            if partner is not None:
                table[colour][mapping[vertex]] = mapping[partner]
    return ColouredGraph(n, tuple(tuple(row) for row in table), name or g.name)


def _signatures(g: ColouredGraph) -> list[tuple[int, ...]]:
    lengths = []
    for pair in COLOUR_PAIRS:
        per_vertex = [0] * g.vertex_count
        for residue in residues(g, pair):
            size = len(residue.vertices) * (1 if residue.is_cycle else -1)
            for vertex in residue.vertices:
                per_vertex[vertex] = size
        lengths.append(per_vertex)
    return [
        (int(g.neighbour(v, 3) is None), *(column[v] for column in lengths))
        for v in range(g.vertex_count)
    ]


def _invariants(g: ColouredGraph) -> tuple[object, ...]:
    return (
        g.vertex_count,
        len(g.boundary_vertices),
        pair_census(g),
        tuple(sorted(_signatures(g))),
    )


def _extend_from(
    g1: ColouredGraph, g2: ColouredGraph, image: int
) -> tuple[int, ...] | None:
    mapping: list[int | None] = [None] * g1.vertex_count
    used = [False] * g2.vertex_count
    mapping[0] = image
    used[image] = True
    queue = deque([0])
    while queue:
        vertex = queue.popleft()
        target = mapping[vertex]
        assert target is not None
        for colour in COLOURS:
            a = g1.neighbour(vertex, colour)
            b = g2.neighbour(target, colour)
            if (a is None) != (b is None):
                return None
            if a is None or b is None:
                continue
            known = mapping[a]
            if known is None:
                if used[b]:
                    return None
                mapping[a] = b
                used[b] = True
                queue.append(a)
            elif known != b:
                return None
    return tuple(m for m in mapping if m is not None)


def colour_isomorphic(
    g1: ColouredGraph,
    g2: ColouredGraph,
    *,
    permute_colours_allowed: bool = False,
    fix_colour_3: bool = True,
) -> tuple[int, ...] | None:
    """Return the lexicographically least colour-preserving isomorphism, if any.

    With ``permute_colours_allowed`` colours may also be renamed; permutations are
    tried in lexicographic order (fixing colour 3 unless ``fix_colour_3`` is off).
    """
    if permute_colours_allowed:
        found = colour_permuting_isomorphism(g1, g2, fix_colour_3=fix_colour_3)
        return None if found is None else found[1]
    if _invariants(g1) != _invariants(g2):
        return None
    wanted = _signatures(g1)[0]
    signatures = _signatures(g2)
    for image in range(g2.vertex_count):
        if signatures[image] != wanted:
            continue
        mapping = _extend_from(g1, g2, image)
        if mapping is not None:
            return mapping
    return None


def colour_permutations(fix_colour_3: bool = True) -> Iterator[tuple[int, ...]]:
    for permutation in itertools.permutations(COLOURS):
        if not fix_colour_3 or permutation[3] == 3:
            yield permutation


def colour_permuting_isomorphism(
    g1: ColouredGraph, g2: ColouredGraph, *, fix_colour_3: bool = True
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Return ``(colour permutation, vertex map)`` for the first permutation that works."""
    for permutation in colour_permutations(fix_colour_3):
        try:
            recoloured = permute_colours(g1, permutation)
        except PreconditionError:
            continue
        mapping = colour_isomorphic(recoloured, g2)
        if mapping is not None:
            return permutation, mapping
    return None


def extended_graph(g: ColouredGraph) -> ExtendedGraph:
    """Attach a new degree-1 vertex by a 3-edge to every boundary vertex."""
    boundary = g.boundary_vertices
    if not boundary:
        raise PreconditionError("extended_graph needs a graph with boundary vertices")
    star = {vertex: g.vertex_count + offset for offset, vertex in enumerate(boundary)}
    return ExtendedGraph(g, star)
