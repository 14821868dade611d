"""Pixel-level extraction quality: completeness, correctness, quality, dice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricsReport:
    """Confusion counts and the derived ratios.

    p_m: extracted pixels matching the truth; p_e: all extracted pixels;
    p_g: all truth pixels; p_um: truth pixels missed. Ratios are None when
    their denominator is zero (empty extraction or empty truth).
    """

    p_m: int
    p_e: int
    p_g: int
    p_um: int
    completeness: float | None
    correctness: float | None
    quality: float | None
    dice: float | None
    wall_time: float | None = None


def confusion_counts(extracted: np.ndarray,
                     truth: np.ndarray) -> tuple[int, int, int, int]:
    """(p_m, p_e, p_g, p_um) for a pair of equally-sized boolean masks."""
    extracted = np.asarray(extracted, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if extracted.shape != truth.shape:
        raise ValueError(f"mask shapes differ: {extracted.shape} vs {truth.shape}")
    p_m = int(np.logical_and(extracted, truth).sum())
    p_e = int(extracted.sum())
    p_g = int(truth.sum())
    return p_m, p_e, p_g, p_g - p_m


def quality_metrics(counts: tuple[int, int, int, int],
                    wall_time: float | None = None) -> MetricsReport:
    """Ratios from confusion counts; degenerate denominators report None."""
    p_m, p_e, p_g, p_um = counts
    if p_m < 0 or p_e < 0 or p_g < 0 or p_um != p_g - p_m:
        raise ValueError("inconsistent confusion counts")
    completeness = p_m / p_g if p_g > 0 else None
    correctness = p_m / p_e if p_e > 0 else None
    quality = p_m / (p_e + p_um) if p_e + p_um > 0 else None
    dice = 2.0 * p_m / (p_e + p_g) if p_e + p_g > 0 else None
    return MetricsReport(p_m=p_m, p_e=p_e, p_g=p_g, p_um=p_um,
                         completeness=completeness, correctness=correctness,
                         quality=quality, dice=dice, wall_time=wall_time)


def evaluate(extracted: np.ndarray, truth: np.ndarray,
             wall_time: float | None = None) -> MetricsReport:
    return quality_metrics(confusion_counts(extracted, truth), wall_time)
