"""Serialization of experiment results: CSV tables and a JSON report.

Every output file embeds the fully resolved config and the package version
so a result can always be traced back to what produced it.  Emission is
byte-deterministic: stable key order, shortest-roundtrip float formatting,
LF line endings, no timestamps.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__
from .experiments import ExperimentResult, Table

__all__ = ["emit", "write_report", "write_table", "read_report", "read_table"]


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _config_line(result: ExperimentResult) -> str:
    return json.dumps(result.config, sort_keys=True, separators=(",", ":"))


def write_table(table: Table, result: ExperimentResult, path: Path) -> None:
    """Write one table as UTF-8 CSV with LF endings.

    Provenance lines prefixed with ``#`` precede the header, so the first
    non-comment line is exactly the schema header.
    """
    lines = [
        f"# diffusionlab {__version__}",
        f"# experiment: {result.name}",
        f"# config: {_config_line(result)}",
        ",".join(table.columns),
    ]
    for row in table.rows:
        lines.append(",".join(_format_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_report(result: ExperimentResult, path: Path) -> None:
    """Write the JSON report with stable key order."""
    payload = {
        "version": __version__,
        "experiment": result.name,
        "config": result.config,
        "metrics": result.metrics,
        "verdicts": result.verdicts,
        "passed": result.passed,
        "tables": [t.name for t in result.tables],
    }
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8", newline="\n")


def emit(result: ExperimentResult, out_dir: Path) -> list[Path]:
    """Write the report and every table; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    report_path = out_dir / "report.json"
    write_report(result, report_path)
    written.append(report_path)
    for table in result.tables:
        path = out_dir / f"{table.name}.csv"
        write_table(table, result, path)
        written.append(path)
    return written


def read_report(path: Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def read_table(path: Path) -> tuple[tuple[str, ...], list[list[str]]]:
    """Read a CSV table back as (columns, raw string rows)."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines()
             if not ln.startswith("#") and ln]
    header = tuple(lines[0].split(","))
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows
