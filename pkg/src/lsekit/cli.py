"""Command-line surface: extract, synth, eval, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import engine, fileio, metrics
from .engine import NumericalInstabilityError, default_params
from .fileio import FileFormatError
from .models import DEFAULT_EDGE_GAIN, ModelKind
from .synth import NOISE_RNG_ALGORITHM, add_gaussian_noise, render_scene

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INSTABILITY = 3

# published operating points; flags left unset fall back to these per model
MODEL_DEFAULTS = {
    ModelKind.EDGE: dict(dt=15.0, reinit_period=1),
    ModelKind.REGION: dict(dt=15.0, reinit_period=1),
    ModelKind.CHAN_VESE: dict(dt=0.8, reinit_period=20),
    ModelKind.ZHANG: dict(dt=15.0, reinit_period=1),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsekit",
        description="Fast level-set object extraction for grayscale/RGB images.")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="evolve a seeded contour on an image")
    ex.add_argument("--image", required=True, help="input PNG or PGM")
    ex.add_argument("--seeds", required=True, help="seed polygon JSON file")
    ex.add_argument("--model", required=True,
                    choices=[k.value for k in ModelKind])
    ex.add_argument("--dt", type=float, default=None,
                    help="time step (default 15; 0.8 for the cv baseline)")
    ex.add_argument("--sigma1", type=float, default=1.0,
                    help="pre-smoothing scale of the edge model")
    ex.add_argument("--sigma2", type=float, default=1.0,
                    help="regularization kernel scale")
    ex.add_argument("--ts", type=int, default=9,
                    help="odd template size for both Gaussian kernels")
    ex.add_argument("--reinit-period", type=int, default=None,
                    help="iterations between reinitializations (0 = never)")
    ex.add_argument("--reg-period", type=int, default=1,
                    help="iterations between Gaussian regularizations")
    ex.add_argument("--max-iters", type=int, default=1000)
    ex.add_argument("--conv-every", type=int, default=10,
                    help="iterations between convergence checkpoints")
    ex.add_argument("--conv-window", type=int, default=3,
                    help="identical checkpoints required for convergence")
    ex.add_argument("--mu", type=float, default=0.1,
                    help="curvature weight of the cv baseline")
    ex.add_argument("--nu", type=float, default=1.0,
                    help="speed constant of the zhang baseline")
    ex.add_argument("--edge-gain", type=float, default=DEFAULT_EDGE_GAIN,
                    help="gradient scale of the edge function "
                         "(255 = 8-bit-compatible)")
    ex.add_argument("--out", required=True, help="output mask PGM")
    ex.add_argument("--report", default=None, help="write a JSON run report")
    ex.add_argument("--report-csv", default=None, help="write a CSV run report")
    ex.add_argument("--truth", default=None,
                    help="ground-truth mask; enables quality metrics in reports")
    ex.add_argument("--trace-dir", default=None,
                    help="write per-checkpoint contour files here")
    ex.add_argument("--figures-dir", default=None,
                    help="render overlay/mask figures here")

    sy = sub.add_parser("synth", help="render a synthetic scene with ground truth")
    sy.add_argument("--scene", required=True, help="scene JSON file")
    sy.add_argument("--noise-sigma", type=float, default=0.0)
    sy.add_argument("--rng-seed", type=int, default=0)
    sy.add_argument("--out-image", required=True)
    sy.add_argument("--out-truth", required=True)

    ev = sub.add_parser("eval", help="score a mask against ground truth")
    ev.add_argument("--mask", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("--out-report", required=True)
    ev.add_argument("--report-csv", default=None)
    ev.add_argument("--figures-dir", default=None)

    se = sub.add_parser("serve", help="run the interactive session service")
    se.add_argument("--port", type=int, default=8765)
    se.add_argument("--host", default="127.0.0.1")
    se.add_argument("--static-dir", default=None,
                    help="directory with the browser UI bundle")
    return parser


def _extract_params(args) -> engine.EvolutionParams:
    model = ModelKind.from_name(args.model)
    defaults = MODEL_DEFAULTS[model]
    dt = args.dt if args.dt is not None else defaults["dt"]
    reinit = (args.reinit_period if args.reinit_period is not None
              else defaults["reinit_period"])
    return default_params(
        model, dt=dt, sigma2=args.sigma2, ts_reg=args.ts,
        reinit_period=reinit, reg_period=args.reg_period,
        max_iters=args.max_iters, conv_check_every=args.conv_every,
        conv_window=args.conv_window, sigma1=args.sigma1, ts_pre=args.ts,
        mu=args.mu, nu=args.nu, edge_gain=args.edge_gain)


def _write_trace(trace, trace_dir: Path) -> None:
    trace_dir.mkdir(parents=True, exist_ok=True)
    for iteration, contours in trace:
        doc = {"iteration": iteration,
               "contours": [c.tolist() for c in contours]}
        (trace_dir / f"contours_{iteration:06d}.json").write_text(
            json.dumps(doc) + "\n")


def cmd_extract(args) -> int:
    image = fileio.load_image(args.image)
    seeds = fileio.parse_seed_file(args.seeds)
    params = _extract_params(args)
    result = engine.run(image, seeds, params,
                        trace=args.trace_dir is not None or
                              args.figures_dir is not None)
    fileio.write_mask(result.mask, args.out)
    counts_report = None
    if args.truth:
        truth = fileio.load_mask(args.truth)
        counts_report = metrics.evaluate(result.mask, truth,
                                         wall_time=result.wall_time)
    if args.report or args.report_csv:
        rep = counts_report or metrics.MetricsReport(
            p_m=0, p_e=int(result.mask.sum()), p_g=0, p_um=0,
            completeness=None, correctness=None, quality=None, dice=None,
            wall_time=result.wall_time)
        if args.report:
            fileio.write_report(rep, args.report,
                                iterations=result.iterations,
                                converged=result.converged)
        if args.report_csv:
            fileio.write_report_csv(rep, args.report_csv,
                                    iterations=result.iterations,
                                    converged=result.converged)
    if args.trace_dir:
        _write_trace(result.trace, Path(args.trace_dir))
    if args.figures_dir:
        from . import viz
        figdir = Path(args.figures_dir)
        figdir.mkdir(parents=True, exist_ok=True)
        final_contours = result.trace[-1][1] if result.trace else []
        viz.save_overlay(image, final_contours, figdir / "overlay.png",
                         title=f"{args.model}, {result.iterations} iterations")
        viz.save_mask_figure(result.mask, figdir / "mask.png")
    status = "converged" if result.converged else "did not converge"
    if result.degenerate:
        status += " (degenerate data term)"
    print(f"{status} after {result.iterations} iterations "
          f"in {result.wall_time:.3f}s; mask -> {args.out}")
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = fileio.parse_scene_file(args.scene)
    image, truth = render_scene(spec)
    comment = None
    if args.noise_sigma > 0:
        image = add_gaussian_noise(image, args.noise_sigma, args.rng_seed)
        comment = (f"noise: gaussian sigma={args.noise_sigma:g} "
                   f"rng={NOISE_RNG_ALGORITHM} seed={args.rng_seed}")
    fileio.write_pgm(image, args.out_image, comment=comment)
    fileio.write_mask(truth, args.out_truth)
    print(f"scene {spec.width}x{spec.height} -> {args.out_image}, "
          f"truth -> {args.out_truth}")
    return EXIT_OK


def cmd_eval(args) -> int:
    mask = fileio.load_mask(args.mask)
    truth = fileio.load_mask(args.truth)
    report = metrics.evaluate(mask, truth)
    fileio.write_report(report, args.out_report)
    if args.report_csv:
        fileio.write_report_csv(report, args.report_csv)
    if args.figures_dir:
        from . import viz
        figdir = Path(args.figures_dir)
        figdir.mkdir(parents=True, exist_ok=True)
        viz.save_error_map(mask, truth, figdir / "error_map.png")
        viz.save_mask_figure(mask, figdir / "mask.png")
        viz.save_mask_figure(truth, figdir / "truth.png")
    def fmt(v):
        return "undefined" if v is None else f"{v:.6f}"
    print(f"completeness={fmt(report.completeness)} "
          f"correctness={fmt(report.correctness)} "
          f"quality={fmt(report.quality)} dice={fmt(report.dice)}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"extract": cmd_extract, "synth": cmd_synth,
                "eval": cmd_eval, "serve": cmd_serve}
    try:
        return handlers[args.command](args)
    except NumericalInstabilityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INSTABILITY
    except (FileFormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
