"""The graph family Λ((p,h),(q,k)) of Seifert manifolds over the disk.

Λ is generated by doubling the standard genus-2 diagram H((p,h),(q,k)), then
checked against its colour-3 adjacencies and residue census.
"""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

from .diagram import ArcTag, HeegaardDiagram, PlanarPresentation, System
from .doubling import double_diagram, doubled_ids
from .exceptions import ConsistencyError, PreconditionError
from .graph import SPHERE, ColouredGraph, SurfaceType, classify, pair_census, relabel
from .heegaard import ComplexityReport, diagram_from_singular
from .reduction import SearchResult, chm_reduced

logger = logging.getLogger(__name__)

TORUS = SurfaceType(True, 1)


@dataclass(frozen=True)
class LambdaParams:
    """Two coprime pairs ``(p, h)`` and ``(q, k)`` with ``1 <= h <= p``, ``1 <= k <= q``."""

    p: int
    h: int
    q: int
    k: int

    def __post_init__(self) -> None:
        for top, step in ((self.p, self.h), (self.q, self.k)):
            if not 1 <= step <= top:
                raise PreconditionError(f"need 1 <= {step} <= {top}")
            if math.gcd(top, step) != 1:
                raise PreconditionError(f"({top},{step}) is not a coprime pair")

    def __str__(self) -> str:
        return f"(({self.p},{self.h}),({self.q},{self.k}))"

    @property
    def crossing_count(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class SeifertParams:
    """Seifert manifold over the disk with two exceptional fibres ``(p, α)``, ``(q, β)``."""

    p: int
    alpha: int
    q: int
    beta: int

    def __post_init__(self) -> None:
        for top, twist in ((self.p, self.alpha), (self.q, self.beta)):
            if top < 1 or math.gcd(top, twist) != 1:
                raise PreconditionError(f"fibre ({top},{twist}) is not a coprime pair")

    @property
    def fibers(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.p, self.alpha), (self.q, self.beta)

    def describe(self) -> str:
        return f"(D2; ({self.p},{self.alpha}),({self.q},{self.beta}))"


@dataclass(frozen=True)
class BoundFormulaResult:
    value: int
    delta_alpha: int
    delta_beta: int


def _wrap(index: int, top: int) -> int:
    """Reduce ``index`` into ``1..top``."""
    return (index - 1) % top + 1


def _handle_order(top: int, step: int) -> list[int]:
    """``step, 2·step, …`` modulo ``top`` up to ``top`` itself."""
    return [_wrap(step * t, top) for t in range(1, top + 1)]


def planar_presentation(params: LambdaParams) -> PlanarPresentation:
    """Planar drawing of H((p,h),(q,k)) with the horizontal axis.

    Points ``0..p-1`` are the crossings A1..Ap, then B1..Bq, then the axis
    points a1..ap and b1..bq.
    """
    p, h, q, k = params.p, params.h, params.q, params.k

    def crossing_a(i: int) -> int:
        return i - 1

    def crossing_b(j: int) -> int:
        return p + j - 1

    def axis_a(i: int) -> int:
        return p + q + i - 1

    def axis_b(j: int) -> int:
        return 2 * p + q + j - 1

    labels = (
        [f"A{i}" for i in range(1, p + 1)]
        + [f"B{j}" for j in range(1, q + 1)]
        + [f"a{i}" for i in range(1, p + 1)]
        + [f"b{j}" for j in range(1, q + 1)]
    )
    first = tuple((crossing_a(i), True) for i in range(1, p + 1))
    second = tuple((crossing_b(j), True) for j in range(1, q + 1))
    axis = tuple((axis_a(_wrap(h + t, p)), True) for t in range(p)) + tuple(
        (axis_b(_wrap(k + t, q)), True) for t in range(q)
    )
    order: list[int] = []
    for i in _handle_order(p, h):
        order.extend((axis_a(i), crossing_a(i)))
    for j in _handle_order(q, k):
        order.extend((axis_b(j), crossing_b(j)))
    tags: tuple[ArcTag, ...] = ("upper", "lower") * (p + q)
    return PlanarPresentation(
        point_labels=tuple(labels),
        v_orders=(first, second),
        axis=axis,
        w_orders=(tuple(order),),
        w_arcs=(tags,),
    )


def standard_diagram(params: LambdaParams) -> HeegaardDiagram:
    """The genus-2 diagram with two V-curves and one W-curve through p + q crossings.

    Around each crossing the rotation is: next V-arc, outgoing W-arc, previous
    V-arc, incoming W-arc.
    """
    p, h, q, k = params.p, params.h, params.q, params.k
    w_crossings = [i - 1 for i in _handle_order(p, h)] + [p + j - 1 for j in _handle_order(q, k)]
    curves: list[tuple[System, list[int]]] = [
        ("V", list(range(p))),
        ("V", list(range(p, p + q))),
        ("W", w_crossings),
    ]
    n = p + q
    w_position = {x: t for t, x in enumerate(w_crossings)}
    rotations = []
    for x in range(n):
        curve, place, size = (0, x, p) if x < p else (1, x - p, q)
        t = w_position[x]
        rotations.append(
            (
                (curve, place, 0),
                (2, t, 0),
                (curve, (place - 1) % size, 1),
                (2, (t - 1) % n, 1),
            )
        )
    labels = [f"A{i}" for i in range(1, p + 1)] + [f"B{j}" for j in range(1, q + 1)]
    return HeegaardDiagram.from_rotations(
        2,
        curves,
        rotations,
        vertex_labels=labels,
        planar=planar_presentation(params),
        name=f"H{params}",
    )


def lambda_vertex_names(params: LambdaParams) -> list[str]:
    """Names in vertex order: A_i, A'_i, C_i, C'_i per i, then B_j, B'_j, D_j, D'_j."""
    names = []
    for i in range(1, params.p + 1):
        names.extend((f"A{i}", f"A'{i}", f"C{i}", f"C'{i}"))
    for j in range(1, params.q + 1):
        names.extend((f"B{j}", f"B'{j}", f"D{j}", f"D'{j}"))
    return names


def _colour_three_pairs(params: LambdaParams) -> list[tuple[str, str]]:
    p, h, q, k = params.p, params.h, params.q, params.k
    pairs = []
    for upper, lower, top, step in (("A", "C", p, h), ("B", "D", q, k)):
        for i in range(1, top):
            pairs.append((f"{upper}'{i}", f"{upper}{_wrap(i + step, top)}"))
            pairs.append((f"{lower}'{i}", f"{lower}{_wrap(i + step, top)}"))
    pairs += [(f"A'{p}", f"B{k}"), (f"C'{p}", f"D{k}"), (f"B'{q}", f"A{h}"), (f"D'{q}", f"C{h}")]
    return pairs


def lambda_graph(params: LambdaParams) -> ColouredGraph:
    """Λ((p,h),(q,k)) on 4(p+q) vertices, named by :func:`lambda_vertex_names`."""
    p = params.p
    planar = planar_presentation(params)
    doubled = double_diagram(standard_diagram(params))
    mapping = [0] * doubled.vertex_count
    for point, vertex in doubled_ids(planar).items():
        label = planar.point_labels[point]
        handle, index = label[0], int(label[1:])
        offset = 4 * (index - 1) if handle in "Aa" else 4 * p + 4 * (index - 1)
        crossing = handle.isupper()
        mapping[vertex] = offset + (1 if crossing else 0)
        mapping[vertex + 1] = offset + (3 if crossing else 2)
    graph = relabel(doubled, mapping, f"Lambda{params}")
    _check_lambda(graph, params)
    return graph


def _check_lambda(g: ColouredGraph, params: LambdaParams) -> None:
    names = lambda_vertex_names(params)
    index = {name: vertex for vertex, name in enumerate(names)}
    for a, b in _colour_three_pairs(params):
        if g.neighbour(index[a], 3) != index[b]:
            raise ConsistencyError(f"Λ{params}: expected a 3-edge {a}-{b}")
    s = params.crossing_count
    expected = (s, 3, s, s - 1, 2, s - 1)
    if pair_census(g) != expected:
        raise ConsistencyError(f"Λ{params}: census {pair_census(g)}, expected {expected}")
    graph_class = classify(g)
    links = [item.surface for item in graph_class.residues if item.colour == 0]
    if graph_class.label() != "SingularRegular(0)" or any(
        link not in (SPHERE, TORUS) for link in links
    ):
        raise ConsistencyError(f"Λ{params} classifies as {graph_class.label()}")


def torus_knot_graph(p: int, q: int) -> ColouredGraph:
    """Λ((p,q),(q,p mod q)), a graph of the complement of the torus knot t(p,q)."""
    if not p > q >= 2 or math.gcd(p, q) != 1:
        raise PreconditionError(f"torus knot needs coprime p > q >= 2, got ({p},{q})")
    return lambda_graph(LambdaParams(p, q, q, p % q))


def seifert_of(params: LambdaParams) -> SeifertParams:
    """Fibre invariants with ``α·h ≡ 1 (mod p)`` and ``β·k ≡ 1 (mod q)``.

    >>> seifert_of(LambdaParams(5, 2, 2, 1)).describe()
    '(D2; (5,3),(2,1))'
    """

    def inverse(step: int, top: int) -> int:
        return _wrap(pow(step, -1, top), top) if top > 1 else 1

    return SeifertParams(
        params.p, inverse(params.h, params.p), params.q, inverse(params.k, params.q)
    )


def complexity_bound(s: SeifertParams) -> BoundFormulaResult:
    """``max(p - 4 + δα, 0) + max(q - 4 + δβ, 0)``.

    δ is 1 exactly when the twist is ±1 modulo the fibre order.

    >>> complexity_bound(SeifertParams(4, 3, 3, 1)).value
    1
    """

    def delta(top: int, twist: int) -> int:
        return int(twist % top in (1 % top, (top - 1) % top))

    delta_alpha, delta_beta = delta(s.p, s.alpha), delta(s.q, s.beta)
    value = max(s.p - 4 + delta_alpha, 0) + max(s.q - 4 + delta_beta, 0)
    return BoundFormulaResult(value, delta_alpha, delta_beta)


def valid_parameter_tuples(max_pq: int) -> Iterator[LambdaParams]:
    """All tuples with ``p, q >= 2`` and ``p + q <= max_pq``, lexicographically."""
    for p in range(2, max_pq - 1):
        for h in range(1, p):
            if math.gcd(p, h) != 1:
                continue
            for q in range(2, max_pq - p + 1):
                for k in range(1, q):
                    if math.gcd(q, k) == 1:
                        yield LambdaParams(p, h, q, k)


def canonical_reduction(params: LambdaParams) -> ComplexityReport:
    """Remove the long {0,2}-cycle of the α = 1 diagram and the better {1,3}-cycle."""
    graph = lambda_graph(params)
    d = diagram_from_singular(graph, 1, lambda_vertex_names(params))
    long_cycle = [
        c
        for c in d.system_curves("V")
        if len(d.curves[c].vertices) == 2 * params.crossing_count
    ]
    if len(long_cycle) != 1:
        raise ConsistencyError(f"Λ{params} has {len(long_cycle)} {{0,2}}-cycles of length 2(p+q)")
    results = [chm_reduced(d, long_cycle, [w]) for w in d.system_curves("W")]
    best = min(results, key=lambda result: result.sort_key)
    return ComplexityReport.from_search(
        d, "singular", SearchResult(best, len(results), False, "exhaustive")
    )
