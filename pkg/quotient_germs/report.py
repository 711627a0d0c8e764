"""
Rendering results as rich tables or stable JSON.
"""

import io
import json
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from .exact_core import format_rational, is_not_lc
from .resolution_graph import Cycle


@dataclass
class Report:
    """What a subcommand produced: rows of results and a summary."""

    title: str
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    columns: Optional[List[str]] = None

    def add(self, **row: Any):
        self.rows.append(row)


def to_jsonable(value: Any) -> Any:
    """Rationals become "p/q" strings; cycles and tuples become lists."""
    if is_not_lc(value) or isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing to serialise inexact value {value!r}")
    if isinstance(value, Cycle):
        return value.to_list()
    if isinstance(value, Enum):
        return value.value
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def _cell(value: Any) -> str:
    value = to_jsonable(value)
    if isinstance(value, bool):
        return "✅" if value else "❌"
    if isinstance(value, list):
        return "[" + ", ".join(_cell(v) for v in value) + "]"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_cell(v)}" for k, v in value.items())
    return "" if value is None else str(value)


def render_json(report: Report) -> str:
    document = {
        "title": report.title,
        "passed": report.passed,
        "rows": to_jsonable(report.rows),
        "summary": to_jsonable(report.summary),
    }
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def render_human(report: Report, width: int = 120) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=width, color_system=None, highlight=False, soft_wrap=True)
    columns = report.columns or list(dict.fromkeys(k for row in report.rows for k in row))
    if report.rows:
        table = Table(title=report.title, show_lines=False)
        for name in columns:
            table.add_column(name)
        for row in report.rows:
            table.add_row(*(_cell(row.get(name)) for name in columns))
        console.print(table)
    else:
        console.print(report.title)
    for key, value in report.summary.items():
        console.print(f"{key}: {_cell(value)}")
    console.print(("✅ " if report.passed else "❌ ") + ("passed" if report.passed else "FAILED"))
    return buffer.getvalue()


def emit_report(report: Report, output_format: str = "human") -> str:
    """Render a report; JSON output is key-sorted and byte-stable."""
    if output_format == "json":
        return render_json(report)
    return render_human(report)
