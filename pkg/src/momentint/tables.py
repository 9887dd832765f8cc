"""Row tables shared by the sweeps, with CSV / JSON / human renderings.

Machine formats print every float with 17 significant digits, which is
enough to reproduce the double exactly when the text is parsed back.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

__all__ = ["SweepTable", "SkippedRow", "format_machine", "format_human"]

Cell = Any  # float, int, bool, str or None


def format_machine(value: Cell) -> str:
    """Text of one cell for CSV (empty string for missing values)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


def format_human(value: Cell) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _json_cell(value: Cell) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        text = f"{value:.17g}"
        # keep floats recognisable as floats after parsing
        if text.lstrip("-").isdigit():
            text += ".0"
        return text
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


@dataclass(frozen=True)
class SkippedRow:
    """A grid point that produced no row, with the reason."""

    index: int
    parameter: float
    reason: str


@dataclass
class SweepTable:
    """Ordered rows over a parameter grid.

    ``rows`` hold one tuple per admissible grid point, in grid order.  Points
    that were rejected are listed in ``skipped`` instead of the body, so the
    machine formats only ever contain computed rows.
    """

    columns: tuple[str, ...]
    rows: list[tuple[Cell, ...]] = field(default_factory=list)
    skipped: list[SkippedRow] = field(default_factory=list)

    def column(self, name: str) -> list[Cell]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def as_dicts(self) -> list[dict[str, Cell]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines += [",".join(format_machine(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        objects = []
        for row in self.rows:
            body = ", ".join(f"{json.dumps(k)}: {_json_cell(v)}"
                             for k, v in zip(self.columns, row))
            objects.append("  {" + body + "}")
        if not objects:
            return "[]\n"
        return "[\n" + ",\n".join(objects) + "\n]\n"

    def to_human(self) -> str:
        cells = [list(self.columns)]
        cells += [[format_human(v) for v in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        out = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
        for s in self.skipped:
            out.append(f"# skipped {s.parameter:g}: {s.reason}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        if fmt == "human":
            return self.to_human()
        raise ValueError(f"unknown format {fmt!r}")

    @staticmethod
    def parse_json(text: str) -> list[dict[str, Cell]]:
        """Inverse of :meth:`to_json` (null comes back as None)."""
        return json.loads(text)
