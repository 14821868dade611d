"""Fast level-set evolutions for semiautomatic object extraction."""

from .engine import (DT_STABILITY_LIMIT, EvolutionParams, EvolutionRun,
                     EvolutionState, ExtractionResult,
                     NumericalInstabilityError, default_params,
                     extract_contours, init_state, run, step)
from .grid import (DegeneratePartitionError, DegenerateSeedError, SeedSpec,
                   binarize, rasterize_seeds, region_means)
from .kernels import (Kernel2D, convolve_same, curvature, gaussian_kernel,
                      gradient_central, gradient_magnitude, signed_distance)
from .metrics import MetricsReport, confusion_counts, evaluate, quality_metrics
from .models import (DEFAULT_EDGE_GAIN, ModelKind, ModelParams, cv_velocity,
                     edge_function, edge_velocity, region_velocity,
                     zhang_velocity)
from .synth import (DiscShape, RectShape, SceneSpec, add_gaussian_noise,
                    render_scene)

__version__ = "0.1.0"

__all__ = [
    "DT_STABILITY_LIMIT", "DEFAULT_EDGE_GAIN", "DegeneratePartitionError",
    "DegenerateSeedError", "DiscShape", "EvolutionParams", "EvolutionRun",
    "EvolutionState", "ExtractionResult", "Kernel2D", "MetricsReport",
    "ModelKind", "ModelParams", "NumericalInstabilityError", "RectShape",
    "SceneSpec", "SeedSpec", "add_gaussian_noise", "binarize",
    "confusion_counts", "convolve_same", "curvature", "cv_velocity",
    "default_params", "edge_function", "edge_velocity", "evaluate",
    "extract_contours", "gaussian_kernel", "gradient_central",
    "gradient_magnitude", "init_state", "quality_metrics", "rasterize_seeds",
    "region_means", "region_velocity", "render_scene", "run",
    "signed_distance", "step", "zhang_velocity",
]
