"""Deterministic computational geometry for glyph and map layouts.

Pure functions over immutable values. The loop-heavy kernels live in
``avyview._kernels`` (numba-compiled by default, vectorized numpy when
``AVYVIEW_NO_NUMBA=1``); this module owns the public contracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import enclose_circles, pack_centers, ring_centroid
from .model import AspectInterval, OperationTenure

# Pairwise member overlap allowed in a packed layout, relative to the
# largest member radius.
PACK_TOLERANCE = 1e-6


class DegenerateGeometry(ValueError):
    """Geometry too degenerate to produce a result."""


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.cx) and math.isfinite(self.cy) and math.isfinite(self.r)):
            raise ValueError("circle coordinates must be finite")
        if self.r < 0:
            raise ValueError(f"circle radius must be >= 0, got {self.r}")


@dataclass(frozen=True)
class PackedLayout:
    """Packed member circles plus their enclosing circle.

    Members are index-aligned with the caller's input order; the
    enclosing circle is centered at the origin after normalization.
    """

    members: tuple[Circle, ...]
    enclosing: Circle


def pack_circles(radii) -> PackedLayout:
    """Pack circles of the given radii into a front-chain sibling layout.

    The input order is the packing order (callers sort canonically
    first). Placement: first circle at the origin, second tangent along
    +x, each later circle tangent to an adjacent pair on the advancing
    front at the free position nearest the origin. The whole layout is
    then recentered so its smallest enclosing circle sits at the origin.
    """
    radii = np.asarray(list(radii), dtype=np.float64)
    if radii.size == 0:
        return PackedLayout(members=(), enclosing=Circle(0.0, 0.0, 0.0))
    if np.any(radii <= 0) or not np.all(np.isfinite(radii)):
        raise ValueError("all radii must be positive and finite")

    centers = pack_centers(radii)
    ex, ey, er = enclose_circles(
        np.ascontiguousarray(centers[:, 0]),
        np.ascontiguousarray(centers[:, 1]),
        radii,
    )
    members = tuple(
        Circle(float(centers[i, 0] - ex), float(centers[i, 1] - ey), float(radii[i]))
        for i in range(radii.size)
    )
    return PackedLayout(members=members, enclosing=Circle(0.0, 0.0, float(er)))


def min_enclosing_circle(members) -> Circle:
    """Smallest circle containing every member circle entirely."""
    members = tuple(members)
    if not members:
        return Circle(0.0, 0.0, 0.0)
    xs = np.array([c.cx for c in members], dtype=np.float64)
    ys = np.array([c.cy for c in members], dtype=np.float64)
    rs = np.array([c.r for c in members], dtype=np.float64)
    ex, ey, er = enclose_circles(xs, ys, rs)
    return Circle(float(ex), float(ey), float(er))


def polygon_centroid(tenure: OperationTenure) -> tuple[float, float]:
    """Area-weighted centroid of the tenure's outer ring (holes ignored).

    Near-zero-area rings fall back to the vertex mean so every tenure
    still gets a representative anchor point.
    """
    ring = tenure.outer_ring
    if not ring:
        raise DegenerateGeometry("empty outer ring")
    xs = np.array([p[0] for p in ring], dtype=np.float64)
    ys = np.array([p[1] for p in ring], dtype=np.float64)
    cx, cy, _ = ring_centroid(xs, ys)
    return (float(cx), float(cy))


def interval_to_arc(aspect: AspectInterval) -> tuple[float, float]:
    """(start_deg, sweep_deg) for rendering; never split at north.

    A full circle renders as (0, 360); a single direction as sweep 0.
    """
    if aspect.full_circle:
        return (0.0, 360.0)
    return (float(aspect.start_deg), float(aspect.sweep_deg))
