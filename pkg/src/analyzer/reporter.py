"""Console, JSON and TSV rendering of gemcraft reports."""

import io
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import pandas as pd
from rich.console import Console
from rich.table import Table

from ..gemcraft.models import TableRow

logger = logging.getLogger(__name__)

TABLE_COLUMNS = [
    "p",
    "h",
    "q",
    "k",
    "alpha",
    "beta",
    "delta_alpha",
    "delta_beta",
    "formula",
    "exhaustive_gm",
    "match_flag",
    "seifert",
    "canonical",
    "canonical_singular",
    "truncated",
]


def _json_default(value: Any) -> Any:
    if isinstance(value, tuple):
        return list(value)
    if hasattr(value, "item"):
        return value.item()
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def canonical_json(value: Any) -> str:
    """Sorted, indented JSON with a trailing newline."""
    return json.dumps(value, indent=2, sort_keys=True, default=_json_default) + "\n"


def table_tsv(rows: Sequence[TableRow]) -> str:
    """The bound sweep as tab-separated values with a header row."""
    frame = pd.DataFrame(list(rows), columns=TABLE_COLUMNS)
    buffer = io.StringIO()
    frame.to_csv(buffer, sep="\t", index=False, lineterminator="\n")
    return buffer.getvalue()


def write_output(text: str, output: str | None) -> Path | None:
    """Write ``text`` to ``output``, or to standard output when it is None or ``-``."""
    if output is None or output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("wrote %s", path)
    return path


class ComplexityReporter:
    """Human-readable summaries of validation, search and sweep reports."""

    def __init__(self, console: Console | None = None) -> None:
        self.console = console or Console(stderr=True)

    def print_validation(self, report: Mapping[str, Any]) -> None:
        table = Table(title=f"{report.get('name') or 'graph'}: {report['classification']}")
        table.add_column("Residue", style="cyan")
        table.add_column("Count", justify="right")
        for key, count in report["census"].items():
            table.add_row(key, str(count))
        self.console.print(table)
        for item in report.get("offending", []):
            self.console.print(
                f"[red]offending {item['colour']}-hat residue[/red] "
                f"{item['vertices']}: {item['surface']['name']}"
            )
        if "genus_table" in report:
            genus = Table(title="Regular embeddings")
            genus.add_column("Permutation", style="cyan")
            genus.add_column("Surface")
            genus.add_column("Euler characteristic", justify="right")
            for eps, surface in report["genus_table"].items():
                genus.add_row(eps, surface["name"], str(surface["euler_characteristic"]))
            self.console.print(genus)

    def print_complexity(self, report: Mapping[str, Any]) -> None:
        table = Table(title=f"GM-complexity of {report.get('name') or 'graph'}")
        table.add_column("Field", style="cyan")
        table.add_column("Value", justify="right")
        for key in ("value", "n_singular", "best_region_size", "search_mode", "truncated"):
            if key in report:
                table.add_row(key, str(report[key]))
        witness = report["witness"]
        table.add_row("alpha", str(witness["alpha"]))
        if report.get("removed_labels"):
            table.add_row("removed", ", ".join(report["removed_labels"]))
        self.console.print(table)
        if report.get("truncated"):
            self.console.print("[yellow]search was truncated; the value is an upper bound[/yellow]")

    def print_bound_table(self, rows: Sequence[TableRow]) -> None:
        table = Table(title="Complexity bounds for Λ((p,h),(q,k))")
        for column in TABLE_COLUMNS:
            table.add_column(column, justify="right" if column != "seifert" else "left")
        for row in rows:
            style = None if row.get("match_flag") else "red"
            table.add_row(*(str(row.get(column, "")) for column in TABLE_COLUMNS), style=style)
        self.console.print(table)
        disagreeing = sum(1 for row in rows if not row.get("match_flag"))
        if disagreeing:
            self.console.print(f"[red]{disagreeing} rows disagree with the formula[/red]")
        else:
            self.console.print(f"[green]all {len(rows)} rows agree with the formula[/green]")
