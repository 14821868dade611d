"""Gaussian kernels, same-size convolution, gradients, curvature, distance.

Convolution uses zero padding so output size equals input size; that matches
the same-shaped convolution the evolution loop and its regularization step
assume. Gradients are central differences in the interior with one-sided
differences on the first/last row/column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage


@dataclass(frozen=True)
class Kernel2D:
    """Odd, square, normalized, symmetric convolution template.

    ``axis_weights`` holds the 1-D factor when the kernel is an outer
    product, enabling the separable fast path in convolve_same.
    """

    weights: np.ndarray
    axis_weights: np.ndarray | None = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("kernel weights must be square")
        if w.shape[0] % 2 == 0 or w.shape[0] < 1:
            raise ValueError("template size must be odd and >= 1")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("kernel weights must sum to 1")
        if not (np.allclose(w, w.T) and np.allclose(w, np.rot90(w))):
            raise ValueError("kernel must be symmetric under rotation and reflection")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if self.axis_weights is not None:
            a = np.asarray(self.axis_weights, dtype=np.float64)
            a.setflags(write=False)
            object.__setattr__(self, "axis_weights", a)

    @property
    def size(self) -> int:
        return self.weights.shape[0]


def gaussian_kernel(sigma: float, ts: int) -> Kernel2D:
    """Normalized Gaussian template of odd size ts and scale sigma.

    Built by sampling exp(-r^2 / 2 sigma^2) at integer offsets and
    renormalizing (no integration over pixel cells).
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if ts < 1 or ts % 2 == 0:
        raise ValueError(f"template size must be an odd number >= 1, got {ts}")
    c = (ts - 1) / 2.0
    x = np.arange(ts, dtype=np.float64) - c
    w1 = np.exp(-(x * x) / (2.0 * sigma * sigma))
    w1 /= w1.sum()
    return Kernel2D(weights=np.outer(w1, w1), axis_weights=w1)


def convolve_same(f: np.ndarray, kernel: Kernel2D) -> np.ndarray:
    """Same-size convolution with zero padding outside the grid."""
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 2:
        raise ValueError("expected a 2-D field")
    if kernel.axis_weights is not None:
        out = ndimage.correlate1d(f, kernel.axis_weights, axis=0,
                                  mode="constant", cval=0.0)
        return ndimage.correlate1d(out, kernel.axis_weights, axis=1,
                                   mode="constant", cval=0.0)
    # symmetric kernels make correlation and convolution identical
    return ndimage.correlate(f, kernel.weights, mode="constant", cval=0.0)


def gradient_central(f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis derivative: (f[i+1]-f[i-1])/2 inside, one-sided at borders.

    Returns (fx, fy) with x along columns and y along rows.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] < 2 or f.shape[1] < 2:
        raise ValueError("gradient needs at least a 2x2 field")
    fy, fx = np.gradient(f)
    return fx, fy


def gradient_magnitude(f: np.ndarray) -> np.ndarray:
    fx, fy = gradient_central(f)
    return np.hypot(fx, fy)


def curvature(phi: np.ndarray, eps_guard: float = 1e-10) -> np.ndarray:
    """Mean curvature of the level sets of phi, div(grad phi / |grad phi|).

    Expanded as (pxx py^2 - 2 px py pxy + pyy px^2) / (px^2 + py^2 + eps)^1.5
    with central differences; eps_guard keeps flat regions finite.
    """
    if eps_guard <= 0:
        raise ValueError("eps_guard must be positive")
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[0] < 3 or phi.shape[1] < 3:
        raise ValueError("curvature needs at least a 3x3 field")
    px, py = gradient_central(phi)
    pxx = np.gradient(px, axis=1)
    pxy = np.gradient(px, axis=0)
    pyy = np.gradient(py, axis=0)
    num = pxx * py * py - 2.0 * px * py * pxy + pyy * px * px
    den = np.power(px * px + py * py + eps_guard, 1.5)
    return num / den


def signed_distance(mask: np.ndarray) -> np.ndarray:
    """Exact Euclidean signed distance: positive outside, negative inside.

    Magnitudes are center-to-center distances to the nearest opposite-class
    pixel, so the zero crossing sits between pixels rather than on them.
    """
    obj = np.asarray(mask, dtype=bool)
    if obj.ndim != 2:
        raise ValueError("expected a 2-D mask")
    if not obj.any():
        raise ValueError("mask has no object pixels")
    if obj.all():
        raise ValueError("mask has no background pixels")
    d_out = ndimage.distance_transform_edt(~obj)
    d_in = ndimage.distance_transform_edt(obj)
    return d_out - d_in
