"""Synthetic two-region scenes with exact ground truth, plus noise injection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RectShape:
    """Axis-aligned rectangle covering pixels [x, x+w) x [y, y+h)."""
    x: int
    y: int
    w: int
    h: int
    intensity: float


@dataclass(frozen=True)
class DiscShape:
    """Disc of radius r around (cx, cy), membership tested at pixel centers."""
    cx: float
    cy: float
    r: float
    intensity: float


@dataclass(frozen=True)
class SceneSpec:
    width: int
    height: int
    background: float
    shapes: tuple = ()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("scene dimensions must be >= 1")
        if not 0.0 <= self.background <= 1.0:
            raise ValueError("background intensity must lie in [0, 1]")
        for s in self.shapes:
            if not 0.0 <= s.intensity <= 1.0:
                raise ValueError("shape intensities must lie in [0, 1]")
        object.__setattr__(self, "shapes", tuple(self.shapes))


def _shape_mask(shape, width: int, height: int) -> np.ndarray:
    if isinstance(shape, RectShape):
        m = np.zeros((height, width), dtype=bool)
        x0, y0 = max(shape.x, 0), max(shape.y, 0)
        x1, y1 = min(shape.x + shape.w, width), min(shape.y + shape.h, height)
        if x1 > x0 and y1 > y0:
            m[y0:y1, x0:x1] = True
        return m
    if isinstance(shape, DiscShape):
        px = np.arange(width, dtype=np.float64) + 0.5
        py = np.arange(height, dtype=np.float64) + 0.5
        cx, cy = np.meshgrid(px, py)
        return (cx - shape.cx) ** 2 + (cy - shape.cy) ** 2 <= shape.r ** 2
    raise TypeError(f"unknown shape type {type(shape).__name__}")


def render_scene(spec: SceneSpec) -> tuple[np.ndarray, np.ndarray]:
    """Paint shapes over the background in list order; truth is their union."""
    image = np.full((spec.height, spec.width), spec.background, dtype=np.float64)
    truth = np.zeros((spec.height, spec.width), dtype=bool)
    for shape in spec.shapes:
        m = _shape_mask(shape, spec.width, spec.height)
        image[m] = shape.intensity
        truth |= m
    return image, truth


#: RNG algorithm behind add_gaussian_noise; recorded next to generated files
#: so reruns (and reimplementations) know what produced the samples.
NOISE_RNG_ALGORITHM = "numpy-pcg64"


def add_gaussian_noise(image: np.ndarray, sigma_n: float, seed: int) -> np.ndarray:
    """Add white Gaussian noise of the given standard deviation, clamp to [0,1].

    Deterministic for a given seed.
    """
    if sigma_n < 0:
        raise ValueError("sigma_n must be >= 0")
    image = np.asarray(image, dtype=np.float64)
    if sigma_n == 0:
        return image.copy()
    rng = np.random.default_rng(seed)
    return np.clip(image + rng.normal(0.0, sigma_n, image.shape), 0.0, 1.0)
