"""The evolution loop: initialize, update, reinitialize, regularize, converge.

Each iteration applies the explicit update phi += dt * v, then (on their
periods) reinitializes phi to a binary field and regularizes it with a
normalized Gaussian. Convergence means the binarized mask was identical at
``conv_window`` consecutive checkpoints spaced ``conv_check_every``
iterations apart. The curvature-regularized baseline is the one exception
to binary reinitialization: it starts from, and is periodically rebuilt as,
a signed distance field.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .grid import SeedSpec, as_field, binarize, rasterize_seeds
from .kernels import Kernel2D, convolve_same, gaussian_kernel, signed_distance
from .models import (ModelKind, ModelParams, cv_velocity, edge_function,
                     edge_velocity, region_velocity, zhang_velocity)

#: Time steps above this empirically destabilize the explicit update.
DT_STABILITY_LIMIT = 25.0


class NumericalInstabilityError(RuntimeError):
    """Raised when the update produces NaN/Inf; names the iteration."""

    def __init__(self, iteration: int):
        super().__init__(
            f"numerical instability: non-finite level-set values at "
            f"iteration {iteration} (time steps above {DT_STABILITY_LIMIT:g} "
            f"are prone to this)")
        self.iteration = iteration


@dataclass(frozen=True)
class EvolutionParams:
    """Knobs of the evolution loop.

    reinit_period=0 disables reinitialization (multi-object mode of the
    region model); the edge model refuses that, since its non-negative
    speed needs the periodic reset to stay meaningful. reg_period is the
    cadence of the Gaussian regularization (sigma2, ts_reg).
    """

    model: ModelKind
    dt: float = 15.0
    sigma2: float = 1.0
    ts_reg: int = 9
    reinit_period: int = 1
    reg_period: int = 1
    max_iters: int = 1000
    conv_check_every: int = 10
    conv_window: int = 3
    model_params: ModelParams = field(default_factory=ModelParams)

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.sigma2 <= 0:
            raise ValueError("sigma2 must be positive")
        if self.ts_reg < 1 or self.ts_reg % 2 == 0:
            raise ValueError("ts_reg must be an odd number >= 1")
        if self.reinit_period < 0:
            raise ValueError("reinit_period must be >= 0 (0 = never)")
        if self.reg_period < 1:
            raise ValueError("reg_period must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.conv_check_every < 1 or self.conv_window < 1:
            raise ValueError("convergence cadence values must be >= 1")
        if self.model is ModelKind.EDGE and self.reinit_period < 1:
            raise ValueError("the edge model requires reinit_period >= 1")
        if self.dt > DT_STABILITY_LIMIT:
            warnings.warn(
                f"dt={self.dt:g} exceeds {DT_STABILITY_LIMIT:g}; unstable "
                f"results may arise", RuntimeWarning, stacklevel=2)


def default_params(model: ModelKind, **overrides) -> EvolutionParams:
    """Recommended defaults per model (the published operating points)."""
    base = dict(model=model, dt=15.0, sigma2=1.0, ts_reg=9,
                reinit_period=1, reg_period=1)
    if model is ModelKind.CHAN_VESE:
        # small explicit step; distance rebuild every 20 iterations
        base.update(dt=0.8, reinit_period=20)
    mp_fields = {k: overrides.pop(k) for k in
                 ("sigma1", "ts_pre", "mu", "nu", "edge_gain")
                 if k in overrides}
    base.update(overrides)
    return EvolutionParams(model_params=ModelParams(**mp_fields), **base)


@dataclass(frozen=True)
class EvolutionState:
    phi: np.ndarray
    iteration: int = 0
    converged: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class ExtractionResult:
    """Outcome of a run: the object mask plus bookkeeping.

    ``object_sign`` records which binary class was mapped to "object"
    (the seed's interior sign), so downstream metrics are unambiguous.
    """

    mask: np.ndarray
    object_sign: int
    iterations: int
    wall_time: float
    converged: bool
    degenerate: bool
    trace: tuple | None = None


def init_state(image: np.ndarray, seeds: SeedSpec,
               params: EvolutionParams) -> EvolutionState:
    """Rasterize seeds into the initial field (distance field for the
    curvature-regularized baseline, binary +-1 otherwise)."""
    image = as_field(image)
    h, w = image.shape
    phi0 = rasterize_seeds(seeds, w, h)
    if params.model is ModelKind.CHAN_VESE:
        sd = signed_distance(phi0 == seeds.inside_sign)
        phi0 = sd if seeds.inside_sign < 0 else -sd
    return EvolutionState(phi=phi0, iteration=0)


def _velocity(model: ModelKind, image, phi, mp: ModelParams, g_cache):
    if model is ModelKind.EDGE:
        return edge_velocity(g_cache, phi), False
    if model is ModelKind.REGION:
        return region_velocity(image, phi)
    if model is ModelKind.CHAN_VESE:
        return cv_velocity(image, phi, mp.mu), False
    if model is ModelKind.ZHANG:
        return zhang_velocity(image, phi, mp.nu)
    raise ValueError(f"unhandled model {model}")


def _advance_once(phi: np.ndarray, iteration: int, image: np.ndarray,
                  params: EvolutionParams, g_cache, reg_kernel: Kernel2D):
    """One update + periodic reinit/regularize. Returns (phi, n, degenerate).

    The incoming phi is left untouched on instability so callers can keep
    the last good state.
    """
    v, degenerate = _velocity(params.model, image, phi, params.model_params,
                              g_cache)
    out = phi + params.dt * v
    n = iteration + 1
    if np.isfinite(out).all():
        if params.reinit_period > 0 and n % params.reinit_period == 0:
            if params.model is ModelKind.CHAN_VESE:
                b = binarize(out)
                if (b > 0).any() and (b < 0).any():
                    # rebuild the distance field around the current zero set
                    out = -signed_distance(b > 0)
            else:
                out = binarize(out)
        if n % params.reg_period == 0:
            out = convolve_same(out, reg_kernel)
    # one guard for the whole step: the update can overflow directly, and
    # smoothing near-overflow values can push them the rest of the way
    if not np.isfinite(out).all():
        raise NumericalInstabilityError(n)
    return out, n, degenerate


def step(state: EvolutionState, image: np.ndarray,
         params: EvolutionParams) -> EvolutionState:
    """Advance one iteration: update, then periodic reinit and smoothing."""
    if state.converged:
        raise ValueError("evolution already converged")
    image = np.asarray(image, dtype=np.float64)
    mp = params.model_params
    g = (edge_function(image, mp.sigma1, mp.ts_pre, mp.edge_gain)
         if params.model is ModelKind.EDGE else None)
    phi, n, degenerate = _advance_once(
        state.phi, state.iteration, image, params, g,
        gaussian_kernel(params.sigma2, params.ts_reg))
    return EvolutionState(phi=phi, iteration=n,
                          degenerate=state.degenerate or degenerate)


class EvolutionRun:
    """Resumable driver around the step loop.

    Owns the state, the checkpoint-mask history used for convergence
    detection, and the optional contour trace. ``advance(n)`` performs at
    most n iterations, stopping early at convergence or max_iters; calling
    it repeatedly walks the exact same trajectory a single run() would.
    """

    def __init__(self, image: np.ndarray, seeds: SeedSpec,
                 params: EvolutionParams, trace: bool = False):
        self.image = as_field(image)
        self.seeds = seeds
        self.params = params
        self.state = init_state(self.image, seeds, params)
        self._reg_kernel = gaussian_kernel(params.sigma2, params.ts_reg)
        mp = params.model_params
        self._g = (edge_function(self.image, mp.sigma1, mp.ts_pre, mp.edge_gain)
                   if params.model is ModelKind.EDGE else None)
        self._checkpoints: list[np.ndarray] = []
        self.wall_time = 0.0
        self.trace: list[tuple[int, list[np.ndarray]]] | None = None
        if trace:
            self.trace = [(0, extract_contours(self.state.phi))]

    @property
    def converged(self) -> bool:
        return self.state.converged

    def _step_once(self):
        p = self.params
        st = self.state
        phi, n, degenerate = _advance_once(st.phi, st.iteration, self.image,
                                           p, self._g, self._reg_kernel)
        converged = False
        if n % p.conv_check_every == 0:
            mask = binarize(phi) > 0
            self._checkpoints.append(mask)
            if len(self._checkpoints) > p.conv_window:
                self._checkpoints.pop(0)
            if len(self._checkpoints) == p.conv_window and all(
                    np.array_equal(self._checkpoints[-1], m)
                    for m in self._checkpoints[:-1]):
                converged = True
            if self.trace is not None:
                self.trace.append((n, extract_contours(phi)))
        self.state = EvolutionState(phi=phi, iteration=n, converged=converged,
                                    degenerate=st.degenerate or degenerate)

    def advance(self, n_steps: int) -> EvolutionState:
        """Run up to n_steps iterations; stops at convergence or max_iters."""
        if n_steps < 0:
            raise ValueError("n_steps must be >= 0")
        t0 = time.perf_counter()
        try:
            for _ in range(n_steps):
                if self.state.converged or self.state.iteration >= self.params.max_iters:
                    break
                self._step_once()
        finally:
            self.wall_time += time.perf_counter() - t0
        return self.state

    def mask(self) -> np.ndarray:
        """Current object mask: the binary class carrying the seed sign."""
        b = binarize(self.state.phi)
        return (b > 0) if self.seeds.inside_sign > 0 else (b <= 0)

    def contours(self) -> list[np.ndarray]:
        return extract_contours(self.state.phi)

    def result(self) -> ExtractionResult:
        return ExtractionResult(
            mask=self.mask(), object_sign=self.seeds.inside_sign,
            iterations=self.state.iteration, wall_time=self.wall_time,
            converged=self.state.converged, degenerate=self.state.degenerate,
            trace=tuple(self.trace) if self.trace is not None else None)


def run(image: np.ndarray, seeds: SeedSpec, params: EvolutionParams,
        trace: bool = False) -> ExtractionResult:
    """Evolve to convergence (or max_iters) and return the extraction."""
    r = EvolutionRun(image, seeds, params, trace=trace)
    r.advance(params.max_iters)
    return r.result()


def extract_contours(phi: np.ndarray) -> list[np.ndarray]:
    """Zero-level polylines of phi as (x, y) arrays, via marching squares.

    Coordinates live in the same continuous system as seed polygons (pixel
    (i, j) centered at (j+0.5, i+0.5)). A single-signed field has no zero
    crossing and yields an empty list.
    """
    phi = np.asarray(phi, dtype=np.float64)
    if not ((phi > 0).any() and (phi < 0).any()):
        return []
    from skimage import measure
    out = []
    for c in measure.find_contours(phi, 0.0):
        out.append(np.stack([c[:, 1] + 0.5, c[:, 0] + 0.5], axis=1))
    return out
