"""Integer-exact grid geometry for the source array and detector.

Coordinates are stored as gridline indices: one unit (the spacing between
consecutive sources) is two gridlines, so a point (gx, gy) sits at
(gx/2, gy/2) in source-spacing units.  Source cell ``s`` lives on the x-axis
at gridline ``2*s``.  Keeping everything in integers makes the visibility and
equal-distance predicates exact, with no floating-point involvement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, slots=True)
class GridPoint:
    """Detector (or source) position as gridline indices."""

    gx: int
    gy: int

    def in_bounds(self, n: int) -> bool:
        """True if the point lies on the grid for input length ``n``."""
        limit = 2 * (n + 1)
        return 0 <= self.gx <= limit and 0 <= self.gy <= limit


def grid_limit(n: int) -> int:
    """Largest gridline index for input length ``n``."""
    return 2 * (n + 1)


def is_visible(source_cell: int, det: GridPoint, n: int) -> bool:
    """Whether ``source_cell`` falls inside the detector's field of vision.

    The field of vision is a 45-degree cone opening from the detector toward
    the source array; a source on the cone boundary counts as visible.
    Raises ``ValueError`` for a cell index outside the tape.
    """
    if not 0 <= source_cell <= n + 1:
        raise ValueError(f"source cell {source_cell} out of range 0..{n + 1}")
    return abs(2 * source_cell - det.gx) <= det.gy


def visible_sources(det: GridPoint, n: int) -> list[int]:
    """All tape cells visible from ``det``, in ascending order."""
    lo = max(0, -(-(det.gx - det.gy) // 2))  # ceil((gx-gy)/2)
    hi = min(n + 1, (det.gx + det.gy) // 2)
    return list(range(lo, hi + 1))


def squared_distance(source_cell: int, det: GridPoint, n: int) -> Fraction:
    """Exact squared distance, in units^2, from a source to the detector."""
    if not 0 <= source_cell <= n + 1:
        raise ValueError(f"source cell {source_cell} out of range 0..{n + 1}")
    dx2 = (2 * source_cell - det.gx) ** 2
    return Fraction(dx2 + det.gy * det.gy, 4)
