"""Edge-coloured graphs of 3-manifolds and upper bounds on their complexity."""

from .complex import build_complex, cap_off, desingularize, singular_vertices
from .diagram import HeegaardDiagram
from .doubling import double_diagram
from .embedding import embed, genus_table, regular_genus_formula
from .exceptions import (
    ConfigurationError,
    ConsistencyError,
    GemcraftError,
    GraphFormatError,
    PreconditionError,
)
from .graph import ColouredGraph, census, classify, colour_isomorphic
from .heegaard import ComplexityReport, Witness, gm_complexity, replay
from .reduction import chm_diagram, chm_reduced
from .seifert import (
    LambdaParams,
    SeifertParams,
    canonical_reduction,
    complexity_bound,
    lambda_graph,
    seifert_of,
    standard_diagram,
    torus_knot_graph,
)

__all__ = [
    "build_complex",
    "cap_off",
    "desingularize",
    "singular_vertices",
    "HeegaardDiagram",
    "double_diagram",
    "embed",
    "genus_table",
    "regular_genus_formula",
    "ConfigurationError",
    "ConsistencyError",
    "GemcraftError",
    "GraphFormatError",
    "PreconditionError",
    "ColouredGraph",
    "census",
    "classify",
    "colour_isomorphic",
    "ComplexityReport",
    "Witness",
    "gm_complexity",
    "replay",
    "chm_diagram",
    "chm_reduced",
    "LambdaParams",
    "SeifertParams",
    "canonical_reduction",
    "complexity_bound",
    "lambda_graph",
    "seifert_of",
    "standard_diagram",
    "torus_knot_graph",
]
