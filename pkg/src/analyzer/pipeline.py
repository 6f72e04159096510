"""Build the JSON reports of the command-line tool.

Every builder returns a dictionary following :mod:`src.gemcraft.models`. No
timestamps are recorded, so identical inputs and settings give identical bytes.
"""

import logging
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .. import __version__
from ..gemcraft.complex import boundary_surface, build_complex, singular_vertices
from ..gemcraft.embedding import all_permutations, genus_table, regular_genus_formula
from ..gemcraft.exceptions import GraphFormatError
from ..gemcraft.graph import (
    ColouredGraph,
    ResidueSurface,
    SurfaceType,
    census,
    classify,
    is_bipartite,
    is_contracted,
)
from ..gemcraft.heegaard import ComplexityReport, Witness, gm_complexity
from ..gemcraft.models import (
    SCHEMA_VERSION,
    TOOL_NAME,
    BoundReport,
    GmReport,
    InvariantsReport,
    ReplayReport,
    ResidueDict,
    SearchConfigDict,
    SoftwareDict,
    SurfaceDict,
    TableRow,
    ValidateReport,
    WitnessDict,
)
from ..gemcraft.reduction import ChmResult, SearchMode
from ..gemcraft.seifert import (
    LambdaParams,
    SeifertParams,
    canonical_reduction,
    complexity_bound,
    lambda_graph,
    seifert_of,
    valid_parameter_tuples,
)
from ..utils.config import RunConfig

logger = logging.getLogger(__name__)


def _software() -> SoftwareDict:
    return {"name": TOOL_NAME, "version": __version__}


def surface_dict(surface: SurfaceType) -> SurfaceDict:
    return {
        "orientable": surface.orientable,
        "genus": surface.genus,
        "boundary_components": surface.boundary_components,
        "euler_characteristic": surface.euler_characteristic,
        "name": surface.describe(),
    }


def _residue_dict(item: ResidueSurface) -> ResidueDict:
    return {
        "colour": item.colour,
        "vertices": list(item.vertices),
        "surface": surface_dict(item.surface),
    }


def validate_report(g: ColouredGraph) -> ValidateReport:
    """Classification, residue census, residue surfaces and boundary of ``g``."""
    graph_class = classify(g)
    boundary: list[SurfaceDict] = []
    if graph_class.tag == "BoundaryGem":
        boundary = [surface_dict(s) for s in boundary_surface(build_complex(g)).surfaces]
    report: ValidateReport = {
        "schema_version": SCHEMA_VERSION,
        "software": _software(),
        "report": "validate",
        "name": g.name,
        "vertex_count": g.vertex_count,
        "classification": graph_class.label(),
        "singular_colour": graph_class.singular_colour,
        "census": census(g),
        "residues": [_residue_dict(item) for item in graph_class.residues],
        "offending": [_residue_dict(item) for item in graph_class.offending],
        "contracted": is_contracted(g) if graph_class.is_gem else None,
        "bipartite": is_bipartite(g),
        "boundary": boundary,
    }
    logger.info("%s classifies as %s", g.name or "graph", graph_class.label())
    return report


def invariants_report(g: ColouredGraph) -> InvariantsReport:
    """Validation plus genus table, regular genus and the singular vertices of K(Γ)."""
    base = validate_report(g)
    report: InvariantsReport = {**base, "report": "invariants"}
    report["genus_table"] = {eps: surface_dict(s) for eps, s in genus_table(g).items()}
    report["tetrahedra"] = g.vertex_count
    report["regular_genus"] = None
    if classify(g).is_gem:
        report["regular_genus"] = min(
            regular_genus_formula(g, eps) for eps in all_permutations()
        )
    if g.is_regular:
        found = singular_vertices(g)
        report["euler_characteristic"] = found.euler_characteristic
        report["singular_vertices"] = [
            {"label": item.label, "vertices": list(item.residue), "link": surface_dict(item.link)}
            for item in found.members
        ]
    return report


def witness_dict(witness: Witness) -> WitnessDict:
    return {
        "kind": witness.kind,
        "alpha": witness.alpha,
        "removed_v": list(witness.removed_v),
        "removed_w": list(witness.removed_w),
        "recolour": list(witness.recolour) if witness.recolour is not None else None,
    }


def witness_from_dict(data: Any) -> Witness:
    """Read a witness from a ``gm`` report or a bare witness object."""
    if isinstance(data, Mapping) and "witness" in data:
        data = data["witness"]
    if not isinstance(data, Mapping):
        raise GraphFormatError("witness: expected a JSON object")
    kind = data.get("kind")
    if kind not in ("singular", "gem"):
        raise GraphFormatError(f"witness.kind: expected 'singular' or 'gem', got {kind!r}")
    alpha = data.get("alpha")
    if not isinstance(alpha, int) or isinstance(alpha, bool):
        raise GraphFormatError("witness.alpha: expected an integer")
    lists: dict[str, tuple[int, ...]] = {}
    for key in ("removed_v", "removed_w"):
        value = data.get(key)
        if not isinstance(value, list) or not all(
            isinstance(item, int) and not isinstance(item, bool) for item in value
        ):
            raise GraphFormatError(f"witness.{key}: expected a list of integers")
        lists[key] = tuple(value)
    recolour = data.get("recolour")
    if recolour is not None and (
        not isinstance(recolour, list) or sorted(recolour) != [0, 1, 2, 3]
    ):
        raise GraphFormatError("witness.recolour: expected a permutation of 0..3 or null")
    return Witness(
        kind,
        alpha,
        lists["removed_v"],
        lists["removed_w"],
        tuple(recolour) if recolour is not None else None,
    )


def search_config(config: RunConfig) -> SearchConfigDict:
    return {
        "limit": config.limit,
        "heuristic_budget": config.heuristic_budget,
        "seed": config.seed,
        "mode": config.mode,
        "threads": config.threads,
    }


def _mode(config: RunConfig) -> SearchMode:
    return "heuristic" if config.mode == "heuristic" else "exhaustive"


def run_gm(g: ColouredGraph, config: RunConfig) -> ComplexityReport:
    return gm_complexity(
        g,
        limit=config.limit,
        heuristic_budget=config.heuristic_budget,
        seed=config.seed,
        mode=_mode(config),
        alphas=None if config.alpha is None else (config.alpha,),
        workers=config.threads,
    )


def gm_report(g: ColouredGraph, result: ComplexityReport, config: RunConfig) -> GmReport:
    """Serialize a complexity search together with the settings that produced it."""
    return {
        "schema_version": SCHEMA_VERSION,
        "software": _software(),
        "report": "gm",
        "name": g.name,
        "value": result.value,
        "n_singular": result.n_singular,
        "best_region_size": result.best_region_size,
        "region": result.region,
        "permutation": list(result.permutation),
        "removed_labels": list(result.removed_labels),
        "search_mode": result.search_mode,
        "choices_examined": result.choices_examined,
        "truncated": result.truncated,
        "witness": witness_dict(result.witness),
        "config": search_config(config),
    }


def replay_report(g: ColouredGraph, witness: Witness, result: ChmResult) -> ReplayReport:
    return {
        "schema_version": SCHEMA_VERSION,
        "software": _software(),
        "report": "replay",
        "name": g.name,
        "value": result.value,
        "n_singular": result.singular_count,
        "best_region_size": result.region_size,
        "region": result.region,
        "witness": witness_dict(witness),
    }


def bound_report(s: SeifertParams) -> BoundReport:
    result = complexity_bound(s)
    return {
        "schema_version": SCHEMA_VERSION,
        "software": _software(),
        "report": "bound",
        "seifert": s.describe(),
        "fibers": [list(fiber) for fiber in s.fibers],
        "value": result.value,
        "delta_alpha": result.delta_alpha,
        "delta_beta": result.delta_beta,
    }


def table_row(task: tuple[LambdaParams, int, int, int, SearchMode]) -> TableRow:
    """Formula, canonical reduction and searched value for one tuple."""
    params, limit, budget, seed, mode = task
    seifert = seifert_of(params)
    bound = complexity_bound(seifert)
    formula = bound.value
    canonical = canonical_reduction(params)
    searched = gm_complexity(
        lambda_graph(params), limit=limit, heuristic_budget=budget, seed=seed, mode=mode
    )
    logger.info("%s: formula %d, searched %d", params, formula, searched.value)
    return {
        "p": params.p,
        "h": params.h,
        "q": params.q,
        "k": params.k,
        "alpha": seifert.alpha,
        "beta": seifert.beta,
        "delta_alpha": bound.delta_alpha,
        "delta_beta": bound.delta_beta,
        "formula": formula,
        "exhaustive_gm": searched.value,
        "match_flag": searched.value <= formula and canonical.value == formula,
        "seifert": seifert.describe(),
        "canonical": canonical.value,
        "canonical_singular": canonical.n_singular,
        "truncated": searched.truncated,
    }


def bound_table(
    max_pq: int, config: RunConfig, tuples: Iterable[LambdaParams] | None = None
) -> list[TableRow]:
    """Rows for every valid tuple with ``p + q <= max_pq``, in lexicographic order."""
    chosen = list(valid_parameter_tuples(max_pq) if tuples is None else tuples)
    tasks = [
        (params, config.limit, config.heuristic_budget, config.seed, _mode(config))
        for params in chosen
    ]
    if config.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            return list(pool.map(table_row, tasks))
    return [table_row(task) for task in tasks]
