"""Regular embeddings of coloured graphs into surfaces."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache

import networkx as nx

from .exceptions import ConsistencyError, PreconditionError
from .graph import (
    COLOURS,
    ColouredGraph,
    SurfaceType,
    census,
    classify,
    is_bipartite,
    residues,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclicPermutation:
    """A cyclic order of the four colours, up to rotation and reversal.

    >>> CyclicPermutation.of((2, 1, 0, 3)).order
    (0, 1, 2, 3)
    """

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(COLOURS):
            raise PreconditionError(f"not a permutation of 0..3: {self.order}")
        start = self.order.index(0)
        rotated = self.order[start:] + self.order[:start]
        reverse = (rotated[0],) + tuple(reversed(rotated[1:]))
        object.__setattr__(self, "order", min(rotated, reverse))

    @classmethod
    def of(cls, order: Iterable[int]) -> "CyclicPermutation":
        return cls(tuple(order))

    @classmethod
    def parse(cls, text: str) -> "CyclicPermutation":
        """Parse ``"0,1,2,3"`` or ``"0123"``."""
        digits = [int(ch) for ch in text if ch.isdigit()]
        return cls(tuple(digits))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """The four consecutive pairs ``(ε_i, ε_{i+1})``."""
        return tuple((self.order[i], self.order[(i + 1) % 4]) for i in range(4))

    def position(self, colour: int) -> int:
        return self.order.index(colour)

    def ending_with(self, colour: int) -> tuple[int, ...]:
        """A representative of the cyclic order whose last entry is ``colour``."""
        start = (self.position(colour) + 1) % 4
        return self.order[start:] + self.order[:start]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.order) + ")"


def all_permutations() -> tuple[CyclicPermutation, ...]:
    """The three essentially distinct cyclic permutations of the colours."""
    return (
        CyclicPermutation((0, 1, 2, 3)),
        CyclicPermutation((0, 1, 3, 2)),
        CyclicPermutation((0, 2, 1, 3)),
    )


@dataclass(frozen=True)
class Face:
    """A face of a regular embedding.

    ``position`` is the index ``i`` of the colour pair ``(ε_i, ε_{i+1})``;
    ``boundary`` marks a path residue closed by a boundary arc.
    """

    position: int
    colours: tuple[int, int]
    vertices: tuple[int, ...]
    boundary: bool


@dataclass(frozen=True)
class RegularEmbedding:
    """The face census of a regular embedding and the surface it determines.

    For graphs with boundary the census is taken on the extended graph: one
    extra vertex and 3-edge per boundary vertex, one boundary arc per boundary
    region. ``boundary_circles`` lists the boundary vertices around each boundary
    circle of the resulting surface.
    """

    source: ColouredGraph
    permutation: CyclicPermutation
    faces: tuple[Face, ...]
    corner_faces: tuple[tuple[int, ...], ...]
    boundary_circles: tuple[tuple[int, ...], ...]
    vertex_count: int
    edge_count: int
    surface: SurfaceType

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces)

    @property
    def genus(self) -> int:
        return self.surface.genus

    def face_at(self, vertex: int, position: int) -> int:
        """Index of the face in corner ``position`` of ``vertex``."""
        return self.corner_faces[vertex][position]

    def boundary_faces(self) -> tuple[int, ...]:
        return tuple(index for index, face in enumerate(self.faces) if face.boundary)


@cache
def _embed(g: ColouredGraph, eps: CyclicPermutation) -> RegularEmbedding:
    faces: list[Face] = []
    corner_faces = [[0] * 4 for _ in range(g.vertex_count)]
    for position, pair in enumerate(eps.pairs()):
        for residue in residues(g, pair):
            for vertex in residue.vertices:
                corner_faces[vertex][position] = len(faces)
            faces.append(Face(position, pair, residue.vertices, not residue.is_cycle))

    boundary = g.boundary_vertices
    boundary_regions = [face for face in faces if face.boundary]
    circles: list[tuple[int, ...]] = []
    if boundary:
        groups = nx.utils.UnionFind(boundary)
        for face in boundary_regions:
            groups.union(face.vertices[0], face.vertices[-1])
        circles = sorted(tuple(sorted(group)) for group in groups.to_sets())

    vertex_count = g.vertex_count + len(boundary)
    edge_count = len(g.edges()) + len(boundary) + len(boundary_regions)
    chi = vertex_count - edge_count + len(faces)
    orientable = is_bipartite(g)
    defect = 2 - chi - len(circles)
    if defect < 0 or (orientable and defect % 2):
        raise ConsistencyError(f"embedding of {g.name or 'graph'} along {eps} has chi={chi}")
    surface = SurfaceType(orientable, defect // 2 if orientable else defect, len(circles))
    return RegularEmbedding(
        source=g,
        permutation=eps,
        faces=tuple(faces),
        corner_faces=tuple(tuple(row) for row in corner_faces),
        boundary_circles=tuple(circles),
        vertex_count=vertex_count,
        edge_count=edge_count,
        surface=surface,
    )


def embed(g: ColouredGraph, eps: CyclicPermutation | Sequence[int]) -> RegularEmbedding:
    """Return the regular embedding of ``g`` determined by ``eps``.

    >>> g = ColouredGraph.from_edges(2, [(0, 1, c) for c in range(4)])
    >>> embed(g, (0, 1, 2, 3)).surface.genus
    0
    """
    if not isinstance(eps, CyclicPermutation):
        eps = CyclicPermutation.of(eps)
    return _embed(g, eps)


def genus_formula_variants(
    g: ColouredGraph, eps: CyclicPermutation | Sequence[int]
) -> tuple[int, int]:
    """Evaluate both residue-count expressions for the regular genus of a gem.

    With ``ε = (ε0, ε1, ε2, 3)`` the first is ``g(ε0,ε2) - g(ε1^) - g(3^) + 1``
    and the second ``g(ε1,3) - g(ε0^) - g(ε2^) + 1``. On gems with boundary the
    second is corrected by ``(d(ε0) + d(ε2) - d(ε1) - b/2) / 2``, where ``d(c)``
    counts the disk ĉ-residues and ``b`` the boundary vertices.
    """
    graph_class = classify(g)
    if not graph_class.is_gem:
        raise PreconditionError(
            f"the regular genus formula applies to gems only, not {graph_class.label()}"
        )
    if not isinstance(eps, CyclicPermutation):
        eps = CyclicPermutation.of(eps)
    e0, e1, e2, _ = eps.ending_with(3)
    counts = census(g)

    def pair(i: int, j: int) -> int:
        return counts[f"g{min(i, j)}{max(i, j)}"]

    def hat(c: int) -> int:
        return counts[f"g{c}^"]

    def disks(c: int) -> int:
        return sum(
            1
            for item in graph_class.residues
            if item.colour == c and item.surface.boundary_components
        )

    first = pair(e0, e2) - hat(e1) - hat(3) + 1
    correction = disks(e0) + disks(e2) - disks(e1) - len(g.boundary_vertices) // 2
    if correction % 2:
        raise ConsistencyError(f"odd boundary correction {correction} along {eps}")
    second = pair(e1, 3) - hat(e0) - hat(e2) + 1 + correction // 2
    return first, second


def regular_genus_formula(g: ColouredGraph, eps: CyclicPermutation | Sequence[int]) -> int:
    """Return the regular genus of a gem from residue counts, checked against χ."""
    first, second = genus_formula_variants(g, eps)
    surface = embed(g, eps).surface
    embedded = surface.genus if surface.orientable else surface.genus / 2
    logger.debug("genus formula %d/%d, embedding genus %s", first, second, embedded)
    if not first == second == embedded:
        raise ConsistencyError(
            f"regular genus formula gives {first} and {second}, embedding gives {embedded}"
        )
    return first


def genus_table(g: ColouredGraph) -> dict[str, SurfaceType]:
    """Return the embedding surface for each of the three cyclic permutations."""
    return {str(eps): embed(g, eps).surface for eps in all_permutations()}
