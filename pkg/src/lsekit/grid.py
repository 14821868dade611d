"""Grid primitives: seed rasterization, binarization, region statistics.

Fields are 2-D float64 arrays of shape (height, width); masks are boolean
arrays of the same shape. Pixel (row i, column j) is the unit square
[j, j+1) x [i, i+1) with center (j + 0.5, i + 0.5); polygon vertices live in
that continuous (x, y) coordinate system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DegenerateSeedError(ValueError):
    """Seed polygons rasterize to an empty or all-covering interior."""


class DegeneratePartitionError(ValueError):
    """One side of the level-set partition holds no pixels."""


def as_field(values) -> np.ndarray:
    """Coerce to a finite float64 grid, rejecting NaN/Inf and bad shapes."""
    f = np.asarray(values, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
        raise ValueError(f"expected a 2-D grid, got shape {f.shape}")
    if not np.isfinite(f).all():
        raise ValueError("grid contains non-finite values")
    return f


@dataclass(frozen=True)
class SeedSpec:
    """Operator-drawn polygons plus the sign assigned to their interior."""

    polygons: tuple[np.ndarray, ...]
    inside_sign: int = -1

    def __post_init__(self):
        if self.inside_sign not in (-1, 1):
            raise ValueError(f"inside_sign must be +1 or -1, got {self.inside_sign}")
        if len(self.polygons) == 0:
            raise ValueError("at least one seed polygon is required")
        polys = []
        for p in self.polygons:
            arr = np.asarray(p, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
                raise ValueError("each polygon needs at least 3 (x, y) vertices")
            if not np.isfinite(arr).all():
                raise ValueError("polygon vertices must be finite")
            arr.setflags(write=False)
            polys.append(arr)
        object.__setattr__(self, "polygons", tuple(polys))


def _polygon_mask(poly: np.ndarray, width: int, height: int) -> np.ndarray:
    """Even-odd ray-casting fill tested at pixel centers (x+0.5, y+0.5)."""
    px = np.arange(width, dtype=np.float64) + 0.5
    py = np.arange(height, dtype=np.float64) + 0.5
    cx, cy = np.meshgrid(px, py)
    inside = np.zeros((height, width), dtype=bool)
    n = poly.shape[0]
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if y1 == y2:
            continue  # horizontal edges never cross the horizontal test ray
        crosses = (y1 > cy) != (y2 > cy)
        x_hit = x1 + (cy - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (cx < x_hit)
    return inside


def rasterize_seeds(seeds: SeedSpec, width: int, height: int) -> np.ndarray:
    """Rasterize seed polygons into the initial binary level-set field.

    The union of polygon interiors receives ``inside_sign``; everything else
    receives the opposite sign. Raises DegenerateSeedError when the union is
    empty or covers every pixel (either way there is no curve to evolve).
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be at least 1x1")
    inside = np.zeros((height, width), dtype=bool)
    for poly in seeds.polygons:
        inside |= _polygon_mask(poly, width, height)
    if not inside.any():
        raise DegenerateSeedError("seed polygons cover no pixel centers")
    if inside.all():
        raise DegenerateSeedError("seed polygons cover the entire grid")
    s = float(seeds.inside_sign)
    return np.where(inside, s, -s)


def binarize(phi: np.ndarray) -> np.ndarray:
    """Map a field to {-1, +1}: +1 where phi > 0, -1 where phi <= 0."""
    phi = np.asarray(phi, dtype=np.float64)
    return np.where(phi > 0.0, 1.0, -1.0)


def region_means(image: np.ndarray, phi: np.ndarray) -> tuple[float, float]:
    """Mean intensity over the phi >= 0 and phi < 0 regions.

    Raises DegeneratePartitionError when either region is empty; callers in
    the evolution loop treat that as a degenerate (zero-velocity) state.
    """
    image = np.asarray(image, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    if image.shape != phi.shape:
        raise ValueError(f"shape mismatch: image {image.shape} vs phi {phi.shape}")
    pos = phi >= 0.0
    n_pos = int(pos.sum())
    if n_pos == 0 or n_pos == pos.size:
        raise DegeneratePartitionError("one side of the partition is empty")
    c_plus = float(image[pos].mean())
    c_minus = float(image[~pos].mean())
    return c_plus, c_minus
