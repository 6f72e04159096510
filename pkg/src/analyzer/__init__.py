"""Report building and rendering for gemcraft."""

from .pipeline import (
    bound_report,
    bound_table,
    gm_report,
    invariants_report,
    replay_report,
    run_gm,
    validate_report,
    witness_from_dict,
)
from .reporter import ComplexityReporter, canonical_json, table_tsv, write_output

__all__ = [
    "bound_report",
    "bound_table",
    "gm_report",
    "invariants_report",
    "replay_report",
    "run_gm",
    "validate_report",
    "witness_from_dict",
    "ComplexityReporter",
    "canonical_json",
    "table_tsv",
    "write_output",
]
