"""Schema of the JSON reports written by the command-line tool.

Reports are plain dictionaries following these shapes so that they serialize
with :func:`json.dumps` directly and compare byte for byte across reruns.
"""

from typing import Literal, TypedDict  # noqa: TYP001

SCHEMA_VERSION = 1
TOOL_NAME = "gemcraft"

ReportKind = Literal["validate", "invariants", "gm", "replay", "bound", "table", "desingularize"]
DiagramKind = Literal["singular", "gem"]


class SurfaceDict(TypedDict, total=False):
    """A compact surface with its Euler characteristic and display name."""

    orientable: bool
    genus: int
    boundary_components: int
    euler_characteristic: int
    name: str


class ResidueDict(TypedDict, total=False):
    """A 3-residue (colour ``ĉ``) with the surface its faces form."""

    colour: int
    vertices: list[int]
    surface: SurfaceDict


class SoftwareDict(TypedDict):
    name: str
    version: str


class ValidateReport(TypedDict, total=False):
    """Classification of an input graph."""

    schema_version: int
    software: SoftwareDict
    report: ReportKind
    name: str | None
    vertex_count: int
    classification: str
    singular_colour: int | None
    census: dict[str, int]
    residues: list[ResidueDict]
    offending: list[ResidueDict]
    contracted: bool | None
    bipartite: bool
    boundary: list[SurfaceDict]


class SingularVertexDict(TypedDict):
    label: int
    vertices: list[int]
    link: SurfaceDict


class InvariantsReport(ValidateReport, total=False):
    """Validation plus the invariants of the associated complex."""

    genus_table: dict[str, SurfaceDict]
    regular_genus: int | None
    euler_characteristic: int
    singular_vertices: list[SingularVertexDict]
    tetrahedra: int


class WitnessDict(TypedDict):
    """Enough to recompute a complexity value with ``replay``."""

    kind: DiagramKind
    alpha: int
    removed_v: list[int]
    removed_w: list[int]
    recolour: list[int] | None


class SearchConfigDict(TypedDict):
    limit: int
    heuristic_budget: int
    seed: int
    mode: str
    threads: int


class GmReport(TypedDict, total=False):
    """Best reduction found by the complexity search."""

    schema_version: int
    software: SoftwareDict
    report: ReportKind
    name: str | None
    value: int
    n_singular: int
    best_region_size: int
    region: int
    permutation: list[int]
    removed_labels: list[str]
    search_mode: str
    choices_examined: int
    truncated: bool
    witness: WitnessDict
    config: SearchConfigDict


class ReplayReport(TypedDict, total=False):
    schema_version: int
    software: SoftwareDict
    report: ReportKind
    name: str | None
    value: int
    n_singular: int
    best_region_size: int
    region: int
    witness: WitnessDict


class BoundReport(TypedDict, total=False):
    """Closed-form upper bound for a Seifert manifold over the disk."""

    schema_version: int
    software: SoftwareDict
    report: ReportKind
    seifert: str
    fibers: list[list[int]]
    value: int
    delta_alpha: int
    delta_beta: int


class TableRow(TypedDict, total=False):
    """One parameter tuple of the bound sweep."""

    p: int
    h: int
    q: int
    k: int
    alpha: int
    beta: int
    delta_alpha: int
    delta_beta: int
    formula: int
    exhaustive_gm: int
    match_flag: bool
    seifert: str
    canonical: int
    canonical_singular: int
    truncated: bool
