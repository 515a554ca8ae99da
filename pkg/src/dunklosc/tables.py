"""Tabular series data and CSV emission."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DomainError


def format_value(v: float) -> str:
    """Locale-independent decimal rendering with 12 significant digits."""
    return "%.12g" % float(v)


@dataclass(frozen=True)
class SeriesTable:
    """Ordered rows of (abscissa, values...) backing CSV and SVG emission."""

    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]

    def __init__(self, columns: Sequence[str], rows: Sequence[Sequence[float]]):
        cols = tuple(str(c) for c in columns)
        if not cols:
            raise DomainError("SeriesTable needs at least one column")
        frozen_rows = []
        for row in rows:
            t = tuple(float(v) for v in row)
            if len(t) != len(cols):
                raise DomainError(
                    f"row length {len(t)} does not match {len(cols)} columns"
                )
            frozen_rows.append(t)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "rows", tuple(frozen_rows))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> List[float]:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise DomainError(f"no column named {name!r} in {self.columns}") from None
        return [row[idx] for row in self.rows]


def emit_csv(table: SeriesTable, path: str) -> str:
    """Write the table as CSV: mandatory header, 12 significant digits.

    Refuses empty tables before touching the filesystem, so a failed call
    never leaves a file behind.
    """
    if table.n_rows == 0:
        raise DomainError("refusing to emit CSV for an empty table")
    lines = [",".join(table.columns)]
    for row in table.rows:
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
