"""Figure rendering for the report path (headless matplotlib)."""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def save_overlay(image: np.ndarray, contours, path, title: str | None = None) -> None:
    """Image with the zero level curves drawn green over a black outline."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(image, cmap="gray", vmin=0.0, vmax=1.0,
              extent=(0, image.shape[1], image.shape[0], 0))
    for c in contours:
        ax.plot(c[:, 0], c[:, 1], color="black", linewidth=2.5)
    for c in contours:
        ax.plot(c[:, 0], c[:, 1], color="lime", linewidth=1.2)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.savefig(Path(path), bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_mask_figure(mask: np.ndarray, path, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(np.asarray(mask, dtype=float), cmap="gray", vmin=0.0, vmax=1.0)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.savefig(Path(path), bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_error_map(extracted: np.ndarray, truth: np.ndarray, path) -> None:
    """Agreement map: white=matched object, red=spurious, blue=missed."""
    extracted = np.asarray(extracted, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    rgb = np.zeros(extracted.shape + (3,))
    rgb[extracted & truth] = (1.0, 1.0, 1.0)
    rgb[extracted & ~truth] = (0.9, 0.15, 0.15)
    rgb[~extracted & truth] = (0.2, 0.4, 1.0)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(rgb)
    ax.set_axis_off()
    fig.savefig(Path(path), bbox_inches="tight", dpi=150)
    plt.close(fig)
