"""Two-parameter bifurcation grids.

Columns are the sphere parameter ``t`` and rows the family parameter.
Each cell is either a wall (the sphere there is not convex) or carries the
number of dividing curves.  Walls are read row by row as runs of adjacent
wall cells; a row may meet at most two walls.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


class GridError(ValueError):
    pass


WALL = None


@dataclass(frozen=True)
class BifurcationGrid:
    cells: tuple[tuple[Optional[int], ...], ...]  # None marks a wall cell

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.cells)
        if not rows or not rows[0]:
            raise GridError("grid needs at least one row and one column")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise GridError(f"row {i} has {len(r)} cells, expected {width}")
            for j, c in enumerate(r):
                if c is not None and (not isinstance(c, int) or isinstance(c, bool) or c < 1):
                    raise GridError(f"cell ({i}, {j}): component count must be a positive integer")
            if len(wall_runs(r)) > 2:
                raise GridError(f"row {i} meets more than two walls")
        object.__setattr__(self, "cells", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), len(self.cells[0])

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "BifurcationGrid":
        """Build from strings such as ``"1 1 W 2 W 1"``."""
        return cls(tuple(tuple(None if tok == "W" else int(tok) for tok in r.split()) for r in rows))


def wall_runs(row: Sequence[Optional[int]]) -> list[tuple[int, int]]:
    """Maximal ``[start, stop)`` runs of wall cells."""
    runs = []
    j = 0
    while j < len(row):
        if row[j] is None:
            k = j
            while k < len(row) and row[k] is None:
                k += 1
            runs.append((j, k))
            j = k
        else:
            j += 1
    return runs


def _gap(row, runs) -> list[Optional[int]]:
    (_, stop), (start, _) = runs
    return list(row[stop:start])


def _nearest_split(g: BifurcationGrid, r: int, step: int) -> Optional[int]:
    i = r + step
    while 0 <= i < len(g.cells):
        n = len(wall_runs(g.cells[i]))
        if n == 2:
            return i
        if n != 1:
            return None
        i += step
    return None


def crossings(g: BifurcationGrid) -> list[int]:
    """Rows where two walls meet: a single run with two-run rows on both sides."""
    out = []
    for r, row in enumerate(g.cells):
        if len(wall_runs(row)) != 1:
            continue
        if _nearest_split(g, r, -1) is not None and _nearest_split(g, r, 1) is not None:
            # a thick crossing is reported once, at its first row
            if len(wall_runs(g.cells[r - 1])) == 2:
                out.append(r)
    return out


def check_giroux_forbidden(g: BifurcationGrid) -> bool:
    """True iff two walls cross with a connected dividing set outside and a disconnected one trapped between them."""
    for r in crossings(g):
        row = g.cells[r]
        (start, stop), = wall_runs(row)
        if start == 0 or stop == len(row):
            continue
        if row[start - 1] != 1 or row[stop] != 1:
            continue
        for step in (-1, 1):
            k = _nearest_split(g, r, step)
            gap = _gap(g.cells[k], wall_runs(g.cells[k]))
            if gap and all(c is not None and c >= 2 for c in gap):
                return True
    return False
