"""Heegaard diagrams extracted from coloured graphs, and GM-complexity of graphs."""

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal

from .complex import Desingularization
from .diagram import Curve, HeegaardDiagram, MapEdge, Side, System
from .embedding import embed
from .exceptions import PreconditionError
from .graph import ColouredGraph, SurfaceType, classify, permute_colours, residue_index, residues
from .reduction import (
    DEFAULT_HEURISTIC_BUDGET,
    DEFAULT_LIMIT,
    ChmResult,
    SearchMode,
    SearchResult,
    chm_diagram,
    chm_reduced,
)

logger = logging.getLogger(__name__)

DiagramKind = Literal["singular", "gem"]

SINGULAR_ALPHAS: tuple[int, ...] = (1, 2, 3)
GEM_ALPHAS: tuple[int, ...] = (0, 1, 2)


def singular_permutation(alpha: int) -> tuple[int, int, int, int]:
    """``(β, α, 0, α′)`` with ``β = α mod 3 + 1``."""
    if alpha not in SINGULAR_ALPHAS:
        raise PreconditionError(f"alpha must be 1, 2 or 3 for a singular graph, got {alpha}")
    beta = alpha % 3 + 1
    (other,) = {1, 2, 3} - {alpha, beta}
    return beta, alpha, 0, other


def gem_permutation(alpha: int) -> tuple[int, int, int, int]:
    """``(β, α, β′, 3)`` with ``β < β′`` the other colours of 0..2."""
    if alpha not in GEM_ALPHAS:
        raise PreconditionError(f"alpha must be 0, 1 or 2 for a gem, got {alpha}")
    beta, beta_prime = sorted({0, 1, 2} - {alpha})
    return beta, alpha, beta_prime, 3


def _graph_diagram(
    g: ColouredGraph,
    eps: tuple[int, int, int, int],
    v_pair: tuple[int, int],
    w_pair: tuple[int, int],
    alpha: int,
    vertex_labels: Sequence[str] | None,
) -> HeegaardDiagram:
    """Turn the embedding of ``g`` along ``eps`` into a map carrying the two systems.

    Only cycles of ``w_pair`` become W-curves; its paths, the extra 3-edges and
    the boundary arcs stay in the map as auxiliary edges, and every boundary
    circle is capped by a disk face.
    """
    emb = embed(g, eps)
    normalized = [frozenset(pair) for pair in emb.permutation.pairs()]
    own_pairs = [frozenset((eps[j], eps[(j + 1) % 4])) for j in range(4)]
    position = [normalized.index(pair) for pair in own_pairs]
    n = g.vertex_count

    def face(vertex: int, j: int) -> int:
        return emb.face_at(vertex, position[j % 4])

    def corner(vertex: int, j: int) -> int:
        return 4 * vertex + j % 4

    curves: list[Curve] = []
    curve_at: dict[tuple[tuple[int, int], int], int] = {}
    systems: tuple[tuple[System, tuple[int, int]], ...] = (("V", v_pair), ("W", w_pair))
    for kind, pair in systems:
        for place, residue in enumerate(residues(g, pair)):
            if not residue.is_cycle:
                continue
            curve_at[(pair, place)] = len(curves)
            label = f"{{{pair[0]},{pair[1]}}}@{min(residue.vertices)}"
            curves.append(Curve(kind, residue.vertices, label, pair))
    index_of = {pair: residue_index(g, pair) for pair in (v_pair, w_pair)}

    def curve_of(u: int, colour: int) -> int | None:
        pair = v_pair if colour in v_pair else w_pair
        return curve_at.get((pair, index_of[pair][u]))

    edges: list[MapEdge] = []
    for u, v, colour in g.edges():
        j = eps.index(colour)
        sides = (
            Side(face(u, j - 1), (corner(u, j - 1), corner(v, j - 1))),
            Side(face(u, j), (corner(u, j), corner(v, j))),
        )
        edges.append(MapEdge((u, v), curve_of(u, colour), sides))

    corner_vertex = [vertex for vertex in range(n) for _ in range(4)]
    labels = list(vertex_labels) if vertex_labels else [str(vertex) for vertex in range(n)]
    face_count = len(emb.faces)
    boundary = g.boundary_vertices
    if boundary:
        j3 = eps.index(3)
        star = {u: n + s for s, u in enumerate(boundary)}
        base = {u: 4 * n + 3 * s for s, u in enumerate(boundary)}
        disk = {}
        for k, circle in enumerate(emb.boundary_circles):
            for u in circle:
                disk[u] = face_count + k
        for u in boundary:
            corner_vertex.extend([star[u]] * 3)
            labels.append(f"{labels[u]}*")
            sides = (
                Side(face(u, j3 - 1), (corner(u, j3 - 1), base[u])),
                Side(face(u, j3), (corner(u, j3), base[u] + 1)),
            )
            edges.append(MapEdge((u, star[u]), None, sides))
        before = own_pairs[(j3 - 1) % 4]
        for index in emb.boundary_faces():
            region = emb.faces[index]
            u, w = region.vertices[0], region.vertices[-1]
            k = 0 if frozenset(region.colours) == before else 1
            sides = (
                Side(index, (base[u] + k, base[w] + k)),
                Side(disk[u], (base[u] + 2, base[w] + 2)),
            )
            edges.append(MapEdge((star[u], star[w]), None, sides))
        face_count += len(emb.boundary_circles)
    surface = SurfaceType(emb.surface.orientable, emb.surface.genus, 0)
    return HeegaardDiagram(
        surface=surface,
        vertex_count=n + len(boundary),
        corner_vertex=tuple(corner_vertex),
        face_count=face_count,
        curves=tuple(curves),
        edges=tuple(edges),
        vertex_labels=tuple(labels),
        alpha=alpha,
        permutation=eps,
        name=g.name,
    )


def diagram_from_singular(
    g: ColouredGraph, alpha: int, vertex_labels: Sequence[str] | None = None
) -> HeegaardDiagram:
    """Diagram of a graph whose only singular vertices are 0-labelled.

    V-curves are the {β,0}-cycles and W-curves the {α,α′}-cycles, drawn on the
    surface of the embedding along ``(β, α, 0, α′)``.
    """
    graph_class = classify(g)
    if graph_class.tag != "SingularRegular" or graph_class.singular_colour != 0:
        raise PreconditionError(
            f"diagram_from_singular needs a SingularRegular(0) graph, got {graph_class.label()}"
        )
    eps = singular_permutation(alpha)
    beta, _, _, other = eps
    v_pair = (min(beta, 0), max(beta, 0))
    w_pair = (min(alpha, other), max(alpha, other))
    return _graph_diagram(g, eps, v_pair, w_pair, alpha, vertex_labels)


def diagram_from_gem(
    g: ColouredGraph, alpha: int, vertex_labels: Sequence[str] | None = None
) -> HeegaardDiagram:
    """Diagram of a gem: {β,β′}-cycles against the closed {α,3}-residues."""
    graph_class = classify(g)
    if not graph_class.is_gem:
        raise PreconditionError(f"diagram_from_gem needs a gem, got {graph_class.label()}")
    eps = gem_permutation(alpha)
    beta, _, beta_prime, _ = eps
    return _graph_diagram(g, eps, (beta, beta_prime), (alpha, 3), alpha, vertex_labels)


@dataclass(frozen=True)
class Witness:
    """Everything needed to recompute a reported complexity value."""

    kind: DiagramKind
    alpha: int
    removed_v: tuple[int, ...]
    removed_w: tuple[int, ...]
    recolour: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ComplexityReport:
    value: int
    n_singular: int
    best_region_size: int
    witness: Witness
    permutation: tuple[int, ...]
    region: int
    removed_labels: tuple[str, ...]
    search_mode: SearchMode
    choices_examined: int
    truncated: bool

    @property
    def alpha(self) -> int:
        return self.witness.alpha

    @property
    def sort_key(self) -> tuple[int, int, tuple[int, ...], tuple[int, ...], int]:
        w = self.witness
        return self.value, w.alpha, w.removed_v, w.removed_w, self.region

    @classmethod
    def from_search(
        cls,
        d: HeegaardDiagram,
        kind: DiagramKind,
        search: SearchResult,
        recolour: tuple[int, ...] | None = None,
    ) -> "ComplexityReport":
        best = search.best
        assert d.alpha is not None and d.permutation is not None
        return cls(
            value=best.value,
            n_singular=best.singular_count,
            best_region_size=best.region_size,
            witness=Witness(kind, d.alpha, best.removed_v, best.removed_w, recolour),
            permutation=d.permutation,
            region=best.region,
            removed_labels=tuple(d.curves[c].label for c in best.removed_v + best.removed_w),
            search_mode=search.search_mode,
            choices_examined=search.choices_examined,
            truncated=search.truncated,
        )


def _swap_to_zero(colour: int) -> tuple[int, ...]:
    permutation = [0, 1, 2, 3]
    permutation[0], permutation[colour] = colour, 0
    return tuple(permutation)


def prepare(g: ColouredGraph) -> tuple[ColouredGraph, DiagramKind, tuple[int, ...] | None]:
    """Route ``g`` to a diagram kind, recolouring singular colours onto 0."""
    graph_class = classify(g)
    if graph_class.tag == "SingularRegular":
        assert graph_class.singular_colour is not None
        if graph_class.singular_colour == 0:
            return g, "singular", None
        recolour = _swap_to_zero(graph_class.singular_colour)
        logger.info("recolouring %s by %s", g.name or "graph", recolour)
        return permute_colours(g, recolour), "singular", recolour
    if graph_class.is_gem:
        return g, "gem", None
    raise PreconditionError(f"GM-complexity is undefined for {graph_class.label()} graphs")


def build_diagram(g: ColouredGraph, kind: DiagramKind, alpha: int) -> HeegaardDiagram:
    if kind == "singular":
        return diagram_from_singular(g, alpha)
    return diagram_from_gem(g, alpha)


def _search_alpha(
    task: tuple[ColouredGraph, DiagramKind, int, int, int, int, SearchMode, tuple[int, ...] | None],
) -> ComplexityReport:
    g, kind, alpha, limit, budget, seed, mode, recolour = task
    d = build_diagram(g, kind, alpha)
    search = chm_diagram(d, limit=limit, heuristic_budget=budget, seed=seed, mode=mode)
    logger.info(
        "alpha=%d: %d crossings, value %d over %d choices",
        alpha,
        len(d.crossings()),
        search.best.value,
        search.choices_examined,
    )
    return ComplexityReport.from_search(d, kind, search, recolour)


def gm_complexity(
    g: ColouredGraph,
    *,
    limit: int = DEFAULT_LIMIT,
    heuristic_budget: int = DEFAULT_HEURISTIC_BUDGET,
    seed: int = 0,
    mode: SearchMode = "exhaustive",
    alphas: Iterable[int] | None = None,
    workers: int = 1,
) -> ComplexityReport:
    """Minimize the diagram complexity over the admissible colours α.

    Gems use α in 0..2 and singular graphs α in 1..3. With ``workers > 1`` the
    colours are searched in separate processes; the result does not depend on it.
    """
    prepared, kind, recolour = prepare(g)
    admissible = SINGULAR_ALPHAS if kind == "singular" else GEM_ALPHAS
    chosen = tuple(admissible if alphas is None else sorted(set(alphas)))
    for alpha in chosen:
        if alpha not in admissible:
            raise PreconditionError(f"alpha {alpha} is not admissible for a {kind} graph")
    if not chosen:
        raise PreconditionError("no alpha to search")
    tasks = [
        (prepared, kind, alpha, limit, heuristic_budget, seed, mode, recolour) for alpha in chosen
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            reports = list(pool.map(_search_alpha, tasks))
    else:
        reports = [_search_alpha(task) for task in tasks]
    best = min(reports, key=lambda report: report.sort_key)
    heuristic = any(report.search_mode == "heuristic" for report in reports)
    return replace(
        best,
        choices_examined=sum(report.choices_examined for report in reports),
        truncated=any(report.truncated for report in reports),
        search_mode="heuristic" if heuristic else "exhaustive",
    )


def replay(g: ColouredGraph, witness: Witness) -> ChmResult:
    """Recompute the complexity recorded in ``witness`` without searching."""
    prepared, kind, recolour = prepare(g)
    if kind != witness.kind or recolour != witness.recolour:
        raise PreconditionError(f"witness is for a {witness.kind} graph, input is a {kind} graph")
    d = build_diagram(prepared, kind, witness.alpha)
    return chm_reduced(d, witness.removed_v, witness.removed_w)


def case_a_choice(
    desing: Desingularization, removed_v: Iterable[int], removed_w: Iterable[int]
) -> tuple[HeegaardDiagram, ChmResult]:
    """Carry a reduction of the α = 1 diagram of a singular graph to its desingularization.

    Collar {0,2}-cycles are removed; every other curve of the new diagram follows
    the source curve its vertices came from.
    """
    source = diagram_from_singular(desing.source, 1)
    target = diagram_from_gem(desing.graph, 1)
    gone = set(removed_v) | set(removed_w)
    new_v: list[int] = []
    new_w: list[int] = []
    for index, curve in enumerate(target.curves):
        pair = curve.colours
        assert pair is not None
        if curve.system == "V" and desing.residue_type(pair, curve.vertices) == "1'-3":
            new_v.append(index)
            continue
        origin = desing.origin[curve.vertices[0]][0]
        (match,) = (
            c for c in source.vertex_curves[origin] if source.curves[c].system == curve.system
        )
        if match in gone:
            (new_v if curve.system == "V" else new_w).append(index)
    return target, chm_reduced(target, new_v, new_w)
