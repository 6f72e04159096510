"""Reductions of Heegaard diagrams and the complexity of reduced diagrams."""

import itertools
import logging
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Literal

import networkx as nx

from .diagram import CutDualGraph, HeegaardDiagram, System, regions, system_cut
from .exceptions import ConsistencyError, PreconditionError

logger = logging.getLogger(__name__)

SearchMode = Literal["exhaustive", "heuristic"]

DEFAULT_LIMIT = 1_000_000
DEFAULT_HEURISTIC_BUDGET = 2_000


@dataclass(frozen=True)
class ReductionChoice:
    removed_v: tuple[int, ...]
    removed_w: tuple[int, ...]


@dataclass(frozen=True)
class ChmResult:
    """Complexity of one reduced diagram.

    ``value`` is the number of singular vertices outside the best region.
    """

    value: int
    singular_count: int
    region: int
    region_size: int
    removed_v: tuple[int, ...]
    removed_w: tuple[int, ...]

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...], tuple[int, ...], int]:
        return self.value, self.removed_v, self.removed_w, self.region


@dataclass(frozen=True)
class SearchResult:
    best: ChmResult
    choices_examined: int
    truncated: bool
    search_mode: SearchMode


def _contracted(dual: CutDualGraph) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Collapse the positive-genus pieces into one node; drop the resulting loops."""
    plus = dual.plus_nodes
    target = list(range(len(dual.nodes)))
    for node in plus:
        target[node] = plus[0]
    nodes = sorted(set(target))
    edges = [
        (curve, target[a], target[b]) for curve, a, b in dual.edges if target[a] != target[b]
    ]
    return nodes, edges


def _check_forest_size(d: HeegaardDiagram, dual: CutDualGraph, size: int) -> None:
    # 2|E(T)| = 2|C| - (2 - χ) - 2 max(0, h - 1) + Σ deficits over the positive pieces
    plus = dual.plus_nodes
    doubled = (
        2 * len(dual.curves)
        - (2 - d.surface.euler_characteristic)
        - 2 * max(0, len(plus) - 1)
        + sum(dual.nodes[node].deficit for node in plus)
    )
    if doubled != 2 * size:
        raise ConsistencyError(
            f"reducing forest has {size} curves, the cut surface predicts {doubled / 2}"
        )


def system_forests(
    d: HeegaardDiagram, system: System, limit: int = DEFAULT_LIMIT
) -> tuple[list[tuple[int, ...]], bool]:
    """List the curve sets whose removal reduces one system of ``d``.

    Each set is the edge set of a forest in the cut-dual graph that spans it and
    has exactly one positive-genus piece per tree. Sets come in order of
    increasing binary weight of the curve ranks; the flag reports truncation.
    """
    dual = system_cut(d, system)
    nodes, edges = _contracted(dual)
    if len(nodes) == 1:
        _check_forest_size(d, dual, 0)
        return [()], False
    graph: nx.MultiGraph[int] = nx.MultiGraph()
    graph.add_nodes_from(nodes)
    rank = {curve: index for index, curve in enumerate(dual.curves)}
    for curve, a, b in edges:
        graph.add_edge(a, b, key=curve, weight=2.0 ** rank[curve])
    forests: list[tuple[int, ...]] = []
    truncated = False
    for tree in nx.SpanningTreeIterator(graph, weight="weight", minimum=True):
        if len(forests) >= limit:
            truncated = True
            break
        forests.append(tuple(sorted(key for _, _, key in tree.edges(keys=True))))
    if not forests:
        raise ConsistencyError(f"{system}-system of the diagram admits no reducing forest")
    _check_forest_size(d, dual, len(forests[0]))
    logger.debug("%s-system: %d reducing forests (truncated=%s)", system, len(forests), truncated)
    return forests, truncated


class ReductionStream:
    """Iterate the reducing choices of a diagram, at most ``limit`` of them.

    Choices come in lexicographic order of their V and W curve sets.

    ``truncated`` becomes true once iteration stops at the limit with choices
    left over.
    """

    def __init__(self, d: HeegaardDiagram, limit: int = DEFAULT_LIMIT) -> None:
        if limit < 1:
            raise PreconditionError(f"reduction limit must be positive, got {limit}")
        self.diagram = d
        self.limit = limit
        self.truncated = False

    def __iter__(self) -> Iterator[ReductionChoice]:
        v_forests, v_cut = system_forests(self.diagram, "V", self.limit)
        w_forests, w_cut = system_forests(self.diagram, "W", self.limit)
        emitted = 0
        for removed_v, removed_w in itertools.product(sorted(v_forests), sorted(w_forests)):
            if emitted >= self.limit:
                self.truncated = True
                return
            emitted += 1
            yield ReductionChoice(removed_v, removed_w)
        self.truncated = v_cut or w_cut


def enumerate_reductions(d: HeegaardDiagram, limit: int = DEFAULT_LIMIT) -> ReductionStream:
    return ReductionStream(d, limit)


def _evaluate(
    d: HeegaardDiagram, removed_v: tuple[int, ...], removed_w: tuple[int, ...]
) -> ChmResult:
    found = regions(d, removed_v + removed_w)
    singular = {v for region in found for v in region.singular}
    best = max(found, key=lambda region: (region.size, -region.index))
    return ChmResult(
        value=len(singular) - best.size,
        singular_count=len(singular),
        region=best.index,
        region_size=best.size,
        removed_v=removed_v,
        removed_w=removed_w,
    )


class RegionCounter:
    """Reduced complexity values of many reductions of one diagram.

    Faces joined by auxiliary edges are merged once, each V-forest's merge is
    cached, and only the W-curves of a choice are merged per evaluation.
    """

    def __init__(self, d: HeegaardDiagram) -> None:
        self.diagram = d
        base = nx.utils.UnionFind(range(d.face_count))
        joins: dict[int, list[tuple[int, int]]] = {}
        for edge in d.edges:
            a, b = edge.sides[0].face, edge.sides[1].face
            if edge.curve is None:
                base.union(a, b)
            else:
                joins.setdefault(edge.curve, []).append((a, b))
        self._base = [base[f] for f in range(d.face_count)]
        self._joins = joins
        vertex_faces: list[list[int]] = [[] for _ in range(d.vertex_count)]
        for face, members in enumerate(d.face_vertices):
            for vertex in members:
                vertex_faces[vertex].append(face)
        self._vertex_faces = vertex_faces
        self._on_faces = frozenset(v for v, faces in enumerate(vertex_faces) if faces)
        self._labels: dict[tuple[int, ...], list[int]] = {}
        self._alive: dict[tuple[System, tuple[int, ...]], frozenset[int]] = {}

    def _v_labels(self, removed_v: tuple[int, ...]) -> list[int]:
        labels = self._labels.get(removed_v)
        if labels is None:
            merged = nx.utils.UnionFind()
            for curve in removed_v:
                for a, b in self._joins.get(curve, ()):
                    merged.union(self._base[a], self._base[b])
            labels = [merged[label] for label in self._base]
            self._labels[removed_v] = labels
        return labels

    def _surviving(self, system: System, removed: tuple[int, ...]) -> frozenset[int]:
        """Vertices still crossed by a curve of ``system``."""
        key = (system, removed)
        alive = self._alive.get(key)
        if alive is None:
            d = self.diagram
            gone = set(removed)
            alive = frozenset(
                vertex
                for vertex, through in enumerate(d.vertex_curves)
                if any(d.curves[c].system == system and c not in gone for c in through)
            )
            self._alive[key] = alive
        return alive

    def value(self, removed_v: tuple[int, ...], removed_w: tuple[int, ...]) -> int:
        """Singular vertices outside the fullest region; agrees with ``_evaluate``."""
        labels = self._v_labels(removed_v)
        merged = nx.utils.UnionFind()
        for curve in removed_w:
            for a, b in self._joins.get(curve, ()):
                merged.union(labels[a], labels[b])
        singular = (
            self._surviving("V", removed_v) & self._surviving("W", removed_w) & self._on_faces
        )
        sizes: dict[int, int] = {}
        for vertex in singular:
            for region in {merged[labels[f]] for f in self._vertex_faces[vertex]}:
                sizes[region] = sizes.get(region, 0) + 1
        return len(singular) - max(sizes.values(), default=0)


def chm_reduced(
    d: HeegaardDiagram, removed_v: Iterable[int] = (), removed_w: Iterable[int] = ()
) -> ChmResult:
    """Complexity of ``d`` after removing the given curves.

    Raises :class:`PreconditionError` when a curve is unknown or belongs to the
    wrong system, or when a system is not reduced afterwards.
    """
    chosen: dict[System, tuple[int, ...]] = {
        "V": tuple(sorted(set(removed_v))),
        "W": tuple(sorted(set(removed_w))),
    }
    for system, curves in chosen.items():
        own = set(d.system_curves(system))
        for curve in curves:
            if curve not in own:
                raise PreconditionError(f"curve {curve} is not a {system}-curve of the diagram")
        if not system_cut(d, system, curves).is_reduced:
            raise PreconditionError(f"{system}-system is not reduced after removing {list(curves)}")
    return _evaluate(d, chosen["V"], chosen["W"])


def random_forest(dual: CutDualGraph, rng: random.Random) -> tuple[int, ...]:
    """A reducing forest grown by Kruskal's rule over shuffled curves."""
    nodes, edges = _contracted(dual)
    rng.shuffle(edges)
    trees = nx.utils.UnionFind(nodes)
    chosen = []
    for curve, a, b in edges:
        if trees[a] != trees[b]:
            trees.union(a, b)
            chosen.append(curve)
    return tuple(sorted(chosen))


def heuristic_search(d: HeegaardDiagram, budget: int, seed: int) -> tuple[ChmResult, int]:
    """Sample ``budget`` random reductions; return the best and the sample count."""
    if budget < 1:
        raise PreconditionError(f"heuristic budget must be positive, got {budget}")
    rng = random.Random(seed)
    v_dual, w_dual = system_cut(d, "V"), system_cut(d, "W")
    best: ChmResult | None = None
    for _ in range(budget):
        result = _evaluate(d, random_forest(v_dual, rng), random_forest(w_dual, rng))
        if best is None or result.sort_key < best.sort_key:
            best = result
    assert best is not None
    return best, budget


def chm_diagram(
    d: HeegaardDiagram,
    *,
    limit: int = DEFAULT_LIMIT,
    heuristic_budget: int = DEFAULT_HEURISTIC_BUDGET,
    seed: int = 0,
    mode: SearchMode = "exhaustive",
) -> SearchResult:
    """Minimize the reduced complexity over the reductions of ``d``.

    In exhaustive mode the enumeration stops after ``limit`` choices, or at the
    first choice of value 0; a truncated enumeration is then topped up with a
    seeded heuristic search.
    """
    if mode == "heuristic":
        best, examined = heuristic_search(d, heuristic_budget, seed)
        return SearchResult(best, examined, False, "heuristic")
    stream = enumerate_reductions(d, limit)
    counter = RegionCounter(d)
    chosen: tuple[int, ReductionChoice] | None = None
    examined = 0
    for choice in stream:
        examined += 1
        value = counter.value(choice.removed_v, choice.removed_w)
        if chosen is None or value < chosen[0]:
            chosen = value, choice
            if value == 0:
                break
    assert chosen is not None
    found = _evaluate(d, chosen[1].removed_v, chosen[1].removed_w)
    if found.value != chosen[0]:
        raise ConsistencyError(f"region count gave {chosen[0]}, full evaluation {found.value}")
    if not stream.truncated:
        return SearchResult(found, examined, False, "exhaustive")
    logger.warning("reduction enumeration stopped at %d choices", examined)
    if heuristic_budget < 1:
        return SearchResult(found, examined, True, "exhaustive")
    sampled, extra = heuristic_search(d, heuristic_budget, seed)
    best = min(found, sampled, key=lambda item: item.sort_key)
    return SearchResult(best, examined + extra, True, "heuristic")
