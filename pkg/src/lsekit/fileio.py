"""File formats: PNG/PGM images, PGM masks, JSON seed/scene/report documents."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .grid import SeedSpec
from .metrics import MetricsReport
from .synth import DiscShape, RectShape, SceneSpec

LUMA_WEIGHTS = (0.299, 0.587, 0.114)
FILE_VERSION = 1


class FileFormatError(ValueError):
    """Unreadable or malformed input file, with a location when possible."""


# --------------------------------------------------------------------------
# images

def _luma(rgb: np.ndarray) -> np.ndarray:
    r, g, b = LUMA_WEIGHTS
    return r * rgb[..., 0] + g * rgb[..., 1] + b * rgb[..., 2]


def _read_pgm(data: bytes, path) -> np.ndarray:
    tokens = []
    pos = 0
    # header tokens, honoring '#' comments, then raw or ascii samples
    while len(tokens) < 4 and pos < len(data):
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        if data[pos:pos + 1].isspace():
            pos += 1
            continue
        end = pos
        while end < len(data) and not data[end:end + 1].isspace():
            end += 1
        tokens.append(data[pos:end])
        pos = end
    if len(tokens) < 4 or tokens[0] not in (b"P2", b"P5"):
        raise FileFormatError(f"{path}: not a valid PGM header")
    try:
        width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError as e:
        raise FileFormatError(f"{path}: bad PGM header numbers") from e
    if maxval != 255:
        raise FileFormatError(f"{path}: unsupported bit depth (maxval {maxval})")
    if tokens[0] == b"P5":
        raw = data[pos + 1: pos + 1 + width * height]
        if len(raw) != width * height:
            raise FileFormatError(f"{path}: truncated PGM pixel data")
        values = np.frombuffer(raw, dtype=np.uint8)
    else:
        try:
            values = np.array(data[pos:].split(), dtype=np.int64)
        except ValueError as e:
            raise FileFormatError(f"{path}: bad ASCII PGM samples") from e
        if values.size != width * height or values.min() < 0 or values.max() > 255:
            raise FileFormatError(f"{path}: bad ASCII PGM samples")
    return values.reshape(height, width).astype(np.float64) / 255.0


def load_image_bytes(data: bytes, name="<upload>") -> np.ndarray:
    """Decode an 8-bit PNG or PGM buffer as a [0, 1] grayscale field.

    RGB inputs are converted with luma weights 0.299/0.587/0.114 before
    scaling, in floating point (no 8-bit re-quantization).
    """
    if data[:2] in (b"P2", b"P5"):
        return _read_pgm(data, name)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        from PIL import Image
        img = Image.open(io.BytesIO(data))
        if img.mode == "RGBA":
            img = img.convert("RGB")
        if img.mode == "L":
            return np.asarray(img, dtype=np.float64) / 255.0
        if img.mode == "RGB":
            return _luma(np.asarray(img, dtype=np.float64)) / 255.0
        raise FileFormatError(f"{name}: unsupported bit depth or mode {img.mode!r}")
    raise FileFormatError(f"{name}: unsupported image format (need PNG or PGM)")


def load_image(path) -> np.ndarray:
    """load_image_bytes for a file on disk."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise FileFormatError(f"{path}: {e.strerror or e}") from e
    return load_image_bytes(data, name=str(path))


def write_pgm(field: np.ndarray, path, comment: str | None = None) -> None:
    """Write a [0, 1] field as binary 8-bit PGM."""
    arr = np.asarray(field, dtype=np.float64)
    samples = np.clip(np.rint(arr * 255.0), 0, 255).astype(np.uint8)
    h, w = samples.shape
    header = b"P5\n"
    if comment:
        header += b"# " + comment.encode("ascii", "replace") + b"\n"
    header += f"{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + samples.tobytes())


def write_mask(mask: np.ndarray, path, comment: str | None = None) -> None:
    """Write a boolean mask as 0/255 PGM."""
    write_pgm(np.asarray(mask, dtype=bool).astype(np.float64), path, comment)


def load_mask(path) -> np.ndarray:
    """Read a mask image; anything at or above half intensity is object."""
    return load_image(path) >= 0.5


def load_mask_bytes(data: bytes) -> np.ndarray:
    return load_image_bytes(data) >= 0.5


# --------------------------------------------------------------------------
# JSON documents

def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FileFormatError(f"{path}: {e.strerror or e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(
            f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        ) from e


def _check_version(doc, path):
    version = doc.get("version", FILE_VERSION)
    if version != FILE_VERSION:
        raise FileFormatError(f"{path}: unsupported version {version}")


def seed_spec_from_dict(doc, path="<body>") -> SeedSpec:
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: seed document must be an object")
    _check_version(doc, path)
    if "polygons" not in doc:
        raise FileFormatError(f"{path}: missing field 'polygons'")
    if "inside_sign" not in doc:
        raise FileFormatError(f"{path}: missing field 'inside_sign'")
    try:
        return SeedSpec(polygons=tuple(np.asarray(p, dtype=np.float64)
                                       for p in doc["polygons"]),
                        inside_sign=int(doc["inside_sign"]))
    except (TypeError, ValueError) as e:
        raise FileFormatError(f"{path}: {e}") from e


def parse_seed_file(path) -> SeedSpec:
    return seed_spec_from_dict(_load_json(path), path)


def seed_spec_to_dict(seeds: SeedSpec) -> dict:
    return {"version": FILE_VERSION,
            "inside_sign": seeds.inside_sign,
            "polygons": [p.tolist() for p in seeds.polygons]}


def write_seed_file(seeds: SeedSpec, path) -> None:
    Path(path).write_text(json.dumps(seed_spec_to_dict(seeds), indent=2) + "\n")


def parse_scene_file(path) -> SceneSpec:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: scene document must be an object")
    _check_version(doc, path)
    for key in ("width", "height", "background"):
        if key not in doc:
            raise FileFormatError(f"{path}: missing field {key!r}")
    shapes = []
    for i, s in enumerate(doc.get("shapes", [])):
        kind = s.get("kind")
        try:
            if kind == "rect":
                shapes.append(RectShape(x=int(s["x"]), y=int(s["y"]),
                                        w=int(s["w"]), h=int(s["h"]),
                                        intensity=float(s["intensity"])))
            elif kind == "disc":
                shapes.append(DiscShape(cx=float(s["cx"]), cy=float(s["cy"]),
                                        r=float(s["r"]),
                                        intensity=float(s["intensity"])))
            else:
                raise FileFormatError(
                    f"{path}: shapes[{i}]: unknown kind {kind!r}")
        except KeyError as e:
            raise FileFormatError(f"{path}: shapes[{i}]: missing field {e}") from e
    try:
        return SceneSpec(width=int(doc["width"]), height=int(doc["height"]),
                         background=float(doc["background"]),
                         shapes=tuple(shapes))
    except (TypeError, ValueError) as e:
        raise FileFormatError(f"{path}: {e}") from e


def write_scene_file(spec: SceneSpec, path) -> None:
    shapes = []
    for s in spec.shapes:
        d = asdict(s)
        d["kind"] = "rect" if isinstance(s, RectShape) else "disc"
        shapes.append(d)
    doc = {"version": FILE_VERSION, "width": spec.width, "height": spec.height,
           "background": spec.background, "shapes": shapes}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


_REPORT_FIELDS = ("p_m", "p_e", "p_g", "p_um", "completeness", "correctness",
                  "quality", "dice", "wall_time")


def report_to_dict(report: MetricsReport, iterations: int | None = None,
                   converged: bool | None = None) -> dict:
    doc = {"version": FILE_VERSION}
    doc.update({k: getattr(report, k) for k in _REPORT_FIELDS})
    doc["iterations"] = iterations
    doc["converged"] = converged
    return doc


def write_report(report: MetricsReport, path, iterations: int | None = None,
                 converged: bool | None = None) -> None:
    doc = report_to_dict(report, iterations, converged)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def write_report_csv(report: MetricsReport, path,
                     iterations: int | None = None,
                     converged: bool | None = None) -> None:
    """Single-row delimited form of the report for spreadsheet pipelines."""
    doc = report_to_dict(report, iterations, converged)
    doc.pop("version")
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(doc.keys())
        writer.writerow("" if v is None else v for v in doc.values())


def parse_report_file(path) -> dict:
    doc = _load_json(path)
    _check_version(doc, path)
    return doc
