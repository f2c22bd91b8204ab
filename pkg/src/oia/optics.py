"""Wave superposition at the detector.

Two views of the same physics live here.  ``is_zero_intensity`` decides the
detector bit exactly: visible switched-on sources are grouped into distance
classes by |2*cell - gx| (all sources share y = 0, so equal class means equal
path length), and the resultant vanishes iff every class is a pair of
opposite-phase sources.  A singleton class, an equal-phase pair, or a source
sitting on the detector's own vertical axis forces light.  With the
wavelength family lambda = r*pi (r algebraic) the per-class phasors have
distinct algebraic exponents, so classes cannot cancel across each other;
the decision is therefore independent of the particular r and reads no
wavelength at all.

``intensity_numeric`` computes |sum (A0/r_k) exp(i(alpha_k + 2 pi r_k /
lambda))|^2 in floating point, for cross-checks and field export.
"""

from __future__ import annotations

import cmath
import enum
import math

from .geometry import GridPoint, grid_limit

ERROR_SENTINEL = -1.0


class Phase(enum.IntEnum):
    """Source state: off, or on with intrinsic phase 0 or pi."""

    OFF = 0
    P0 = 1
    PPI = 2


class CoincidentSourceError(ValueError):
    """Raised when an ON source coincides with the detector (zero distance)."""


def new_sources(n: int) -> list[Phase]:
    """All-off source vector for input length ``n`` (cells 0..n+1)."""
    return [Phase.OFF] * (n + 2)


def is_zero_intensity(sources: list[Phase], det: GridPoint) -> bool:
    """Exact zero-intensity decision for the detector bit."""
    n = len(sources) - 2
    lo = max(0, -(-(det.gx - det.gy) // 2))
    hi = min(n + 1, (det.gx + det.gy) // 2)
    for s in range(lo, hi + 1):
        phase = sources[s]
        if phase is Phase.OFF:
            continue
        d = 2 * s - det.gx
        if d == 0:
            if det.gy == 0:
                raise CoincidentSourceError(
                    f"ON source at cell {s} coincides with detector {det}"
                )
            return False  # axial class has no mirror partner
        if d > 0:
            continue  # counted once, from its left member
        mirror = det.gx - s
        if mirror > n + 1 or sources[mirror] is Phase.OFF or sources[mirror] is phase:
            return False
    # Right-side sources whose mirror cell falls off the tape are singletons.
    for s in range(lo, hi + 1):
        phase = sources[s]
        if phase is Phase.OFF or 2 * s - det.gx <= 0:
            continue
        mirror = det.gx - s
        if mirror < 0 or sources[mirror] is Phase.OFF:
            return False
    return True


def detector_bit(sources: list[Phase], det: GridPoint) -> int:
    """The detector output: 0 for perfect cancellation, 1 otherwise."""
    return 0 if is_zero_intensity(sources, det) else 1


def two_wave_intensity(a1: float, a2: float, dphi: float) -> float:
    """Closed-form intensity of two interfering waves."""
    return a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * math.cos(dphi)


def intensity_numeric(
    sources: list[Phase],
    det: GridPoint,
    wavelength: float = math.pi,
    a0: float = 1.0,
) -> float:
    """Numeric intensity of the superposed visible waves at the detector."""
    n = len(sources) - 2
    lo = max(0, -(-(det.gx - det.gy) // 2))
    hi = min(n + 1, (det.gx + det.gy) // 2)
    total = 0j
    for s in range(lo, hi + 1):
        phase = sources[s]
        if phase is Phase.OFF:
            continue
        dx = (2 * s - det.gx) / 2.0
        dy = det.gy / 2.0
        r = math.hypot(dx, dy)
        if r == 0.0:
            raise CoincidentSourceError(
                f"ON source at cell {s} coincides with detector {det}"
            )
        alpha = 0.0 if phase is Phase.P0 else math.pi
        total += (a0 / r) * cmath.exp(1j * (alpha + 2.0 * math.pi * r / wavelength))
    return abs(total) ** 2


def intensity_field(
    sources: list[Phase], n: int, wavelength: float = math.pi, a0: float = 1.0
) -> list[tuple[int, int, float]]:
    """Numeric intensity at every grid point.

    Points where the intensity is undefined (an ON source coincides with the
    detector) are emitted with the sentinel value -1.
    """
    rows = []
    limit = grid_limit(n)
    for gy in range(limit + 1):
        for gx in range(limit + 1):
            det = GridPoint(gx, gy)
            try:
                value = intensity_numeric(sources, det, wavelength, a0)
            except CoincidentSourceError:
                value = ERROR_SENTINEL
            rows.append((gx, gy, value))
    return rows
