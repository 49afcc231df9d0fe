"""Tabular run reports with deterministic CSV and JSON serialization.

The CSV carries a '#'-prefixed header block (command, parameters, metadata)
followed by a plain column/row table, so a report file is both greppable and
directly plottable.  Serialization is byte-deterministic: no timestamps, no
environment-dependent formatting; floats are written with repr and therefore
round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

_HEADER_LINE = "# mondrian-sieve report"

Cell = int | float | str


@dataclass
class ScanReport:
    command: str
    parameters: dict[str, str] = field(default_factory=dict)
    columns: list[str] = field(default_factory=list)
    rows: list[tuple[Cell, ...]] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def has_indeterminate(self) -> bool:
        return any("indeterminate" in row for row in self.rows)

    def to_csv(self) -> str:
        lines = [_HEADER_LINE, f"# command: {self.command}"]
        for key, value in self.parameters.items():
            lines.append(f"# param {key}: {value}")
        for key, value in self.metadata.items():
            lines.append(f"# meta {key}: {value}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_format_cell(cell) for cell in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "ScanReport":
        lines = text.splitlines()
        if not lines or lines[0] != _HEADER_LINE:
            raise ValueError("not a mondrian-sieve report")
        command = ""
        parameters: dict[str, str] = {}
        metadata: dict[str, str] = {}
        i = 1
        while i < len(lines) and lines[i].startswith("#"):
            body = lines[i][1:].strip()
            key, _, value = body.partition(": ")
            if key == "command":
                command = value
            elif key.startswith("param "):
                parameters[key[len("param ") :]] = value
            elif key.startswith("meta "):
                metadata[key[len("meta ") :]] = value
            else:
                raise ValueError(f"unrecognized header line: {lines[i]}")
            i += 1
        if i >= len(lines):
            raise ValueError("report has no column header")
        columns = lines[i].split(",")
        rows = [
            tuple(_parse_cell(cell) for cell in line.split(","))
            for line in lines[i + 1 :]
            if line
        ]
        return cls(
            command=command,
            parameters=parameters,
            columns=columns,
            rows=rows,
            metadata=metadata,
        )

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "columns": self.columns,
            "rows": [list(row) for row in self.rows],
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ScanReport":
        payload = json.loads(text)
        return cls(
            command=payload["command"],
            parameters=dict(payload["parameters"]),
            columns=list(payload["columns"]),
            rows=[tuple(row) for row in payload["rows"]],
            metadata=dict(payload["metadata"]),
        )

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _format_cell(cell: Cell) -> str:
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, float):
        return repr(cell)
    return str(cell)


def _parse_cell(text: str) -> Cell:
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text
