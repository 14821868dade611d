import io
import json

import numpy as np
import pytest
from PIL import Image

from lsekit import MetricsReport, RectShape, SceneSpec, SeedSpec
from lsekit.fileio import (FileFormatError, load_image, load_image_bytes,
                           load_mask, parse_report_file, parse_scene_file,
                           parse_seed_file, write_mask, write_pgm,
                           write_report, write_report_csv, write_scene_file,
                           write_seed_file)

from conftest import square_polygon


def png_bytes(arr, mode):
    img = Image.fromarray(arr, mode=mode)
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


class TestImages:
    def test_white_rgb_pixel(self, tmp_path):
        rgb = np.full((2, 2, 3), 255, dtype=np.uint8)
        p = tmp_path / "white.png"
        p.write_bytes(png_bytes(rgb, "RGB"))
        assert np.allclose(load_image(p), 1.0)

    def test_pure_red_luma(self, tmp_path):
        rgb = np.zeros((2, 2, 3), dtype=np.uint8)
        rgb[..., 0] = 255
        p = tmp_path / "red.png"
        p.write_bytes(png_bytes(rgb, "RGB"))
        assert np.allclose(load_image(p), 0.299, atol=1e-12)

    def test_gray_png(self, tmp_path):
        gray = np.arange(16, dtype=np.uint8).reshape(4, 4) * 17
        p = tmp_path / "g.png"
        p.write_bytes(png_bytes(gray, "L"))
        assert np.allclose(load_image(p), gray / 255.0)

    def test_pgm_value_scaling(self, tmp_path):
        p = tmp_path / "half.pgm"
        p.write_bytes(b"P5\n2 1\n255\n" + bytes([128, 0]))
        field = load_image(p)
        assert field[0, 0] == pytest.approx(128 / 255)
        assert field[0, 1] == 0.0

    def test_ascii_pgm_with_comment(self, tmp_path):
        p = tmp_path / "a.pgm"
        p.write_text("P2\n# a comment\n3 2\n255\n0 128 255\n255 128 0\n")
        field = load_image(p)
        assert field.shape == (2, 3)
        assert field[0, 2] == 1.0

    def test_pgm_roundtrip_mask(self, tmp_path):
        rng = np.random.default_rng(0)
        mask = rng.random((32, 32)) > 0.5
        p = tmp_path / "m.pgm"
        write_mask(mask, p)
        assert np.array_equal(load_mask(p), mask)

    def test_pgm_roundtrip_gray_field(self, tmp_path):
        field = np.linspace(0, 1, 64).reshape(8, 8)
        p = tmp_path / "f.pgm"
        write_pgm(field, p)
        back = load_image(p)
        assert np.abs(back - field).max() <= 0.5 / 255

    def test_unsupported_maxval(self, tmp_path):
        p = tmp_path / "deep.pgm"
        p.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(FileFormatError, match="bit depth"):
            load_image(p)

    def test_sixteen_bit_png_rejected(self, tmp_path):
        arr = np.zeros((2, 2), dtype=np.uint16)
        img = Image.fromarray(arr)
        buf = io.BytesIO()
        img.save(buf, format="PNG")
        p = tmp_path / "deep.png"
        p.write_bytes(buf.getvalue())
        with pytest.raises(FileFormatError):
            load_image(p)

    def test_unreadable_and_garbage(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_image(tmp_path / "missing.png")
        with pytest.raises(FileFormatError):
            load_image_bytes(b"not an image")

    def test_truncated_pgm(self, tmp_path):
        p = tmp_path / "t.pgm"
        p.write_bytes(b"P5\n4 4\n255\n\x00\x00")
        with pytest.raises(FileFormatError, match="truncated"):
            load_image(p)


class TestSeedFiles:
    def test_roundtrip(self, tmp_path):
        seeds = SeedSpec(polygons=(square_polygon(2, 3, 10, 11),
                                   np.array([[1.5, 1.0], [7.25, 2.0], [4.0, 9.5]])),
                         inside_sign=+1)
        p = tmp_path / "seeds.json"
        write_seed_file(seeds, p)
        back = parse_seed_file(p)
        assert back.inside_sign == seeds.inside_sign
        assert len(back.polygons) == 2
        for a, b in zip(back.polygons, seeds.polygons):
            assert np.array_equal(a, b)

    def test_single_square(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({
            "version": 1, "inside_sign": -1,
            "polygons": [[[14, 14], [76, 14], [76, 76], [14, 76]]]}))
        seeds = parse_seed_file(p)
        assert len(seeds.polygons) == 1
        assert seeds.polygons[0].shape == (4, 2)

    def test_missing_field_diagnostic(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"version": 1, "polygons": [[[0, 0], [4, 0], [4, 4]]]}))
        with pytest.raises(FileFormatError, match="inside_sign"):
            parse_seed_file(p)

    def test_malformed_json_line_diagnostic(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"version": 1,\n  "polygons": [[[0,0]\n')
        with pytest.raises(FileFormatError, match="line"):
            parse_seed_file(p)

    def test_bad_version(self, tmp_path):
        p = tmp_path / "v.json"
        p.write_text(json.dumps({"version": 99, "inside_sign": -1,
                                 "polygons": [[[0, 0], [4, 0], [4, 4]]]}))
        with pytest.raises(FileFormatError, match="version"):
            parse_seed_file(p)


class TestSceneFiles:
    def test_roundtrip(self, tmp_path):
        spec = SceneSpec(width=128, height=96, background=0.8,
                         shapes=(RectShape(x=40, y=40, w=48, h=48, intensity=0.2),))
        p = tmp_path / "scene.json"
        write_scene_file(spec, p)
        assert parse_scene_file(p) == spec

    def test_unknown_shape_kind(self, tmp_path):
        p = tmp_path / "scene.json"
        p.write_text(json.dumps({"version": 1, "width": 8, "height": 8,
                                 "background": 0.5,
                                 "shapes": [{"kind": "hexagon"}]}))
        with pytest.raises(FileFormatError, match="hexagon"):
            parse_scene_file(p)


class TestReports:
    def test_perfect_extraction_prints_one(self, tmp_path):
        rep = MetricsReport(p_m=100, p_e=100, p_g=100, p_um=0,
                            completeness=1.0, correctness=1.0, quality=1.0,
                            dice=1.0, wall_time=0.25)
        p = tmp_path / "report.json"
        write_report(rep, p, iterations=40, converged=True)
        doc = parse_report_file(p)
        assert doc["completeness"] == 1.0
        assert doc["iterations"] == 40
        assert doc["converged"] is True

    def test_undefined_ratios_serialize_as_null(self, tmp_path):
        rep = MetricsReport(p_m=0, p_e=0, p_g=0, p_um=0, completeness=None,
                            correctness=None, quality=None, dice=None)
        p = tmp_path / "report.json"
        write_report(rep, p)
        assert json.loads(p.read_text())["quality"] is None

    def test_csv_single_row(self, tmp_path):
        rep = MetricsReport(p_m=80, p_e=90, p_g=100, p_um=20,
                            completeness=0.8, correctness=80 / 90,
                            quality=80 / 110, dice=160 / 190)
        p = tmp_path / "report.csv"
        write_report_csv(rep, p, iterations=10, converged=False)
        lines = p.read_text().strip().splitlines()
        assert len(lines) == 2
        header = lines[0].split(",")
        row = lines[1].split(",")
        assert dict(zip(header, row))["p_m"] == "80"
