"""Command-line interface: simulate, reconstruct, benchmark.

Exit codes: 0 on success, 1 for usage errors, 2 for data or file-format
errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import forward, harness, images, plots
from .grids import GridFormatError, read_grid, write_grid
from .recon import ReconConfig, reconstruct

__all__ = ["main", "build_parser"]

_METHOD_FLAGS = ("nufft", "direct", "nearest", "linear", "trunc-sinc", "backprojection")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; our contract says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="write a simulated detector data grid")
    sim.add_argument("--phantom", choices=("circle", "shepp-logan"), default="circle")
    sim.add_argument("--n", type=int, default=256, help="samples per axis (even)")
    sim.add_argument("--x0", type=float, default=0.5, help="circle center x")
    sim.add_argument("--y0", type=float, default=0.5, help="circle center y")
    sim.add_argument("--a", type=float, default=0.1, help="circle radius")
    sim.add_argument("--cutoff-eps", type=float, default=None,
                     help="mollifier parameter (default (5*step)^2)")
    sim.add_argument("--noise", type=float, default=0.0,
                     help="noise standard deviation relative to max |data|")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True)

    rec = sub.add_parser("reconstruct", help="reconstruct an image from a data grid")
    rec.add_argument("--method", choices=_METHOD_FLAGS, default="nufft")
    rec.add_argument("--c", type=float, default=2.0, help="oversampling factor")
    rec.add_argument("--K", type=float, default=None,
                     help="interpolation length (default 3, trunc-sinc 2)")
    rec.add_argument("--alpha", type=float, default=None, help="window support half-width")
    rec.add_argument("--in", dest="infile", required=True)
    rec.add_argument("--out", required=True)
    rec.add_argument("--pgm", default=None, help="also write an 8-bit PGM image here")
    rec.add_argument("--png", default=None, help="also write a PNG image here")

    ben = sub.add_parser("benchmark", help="run the circle benchmark suite")
    ben.add_argument("--n", type=int, default=512)
    ben.add_argument("--methods", default="nearest,linear,trunc-sinc,nufft",
                     help="comma-separated method list")
    ben.add_argument("--c-list", default="1,2", help="comma-separated oversampling factors")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--noise", type=float, default=0.0)
    ben.add_argument("--out-dir", required=True)
    return parser


def _default_k(method: str) -> float:
    return 2.0 if method == "trunc_sinc" else 3.0


def cmd_simulate(args) -> int:
    n = args.n
    step = 1.0 / n
    if args.phantom == "circle":
        phantom = forward.CirclePhantom(args.x0, args.y0, args.a)
        g = forward.circle_data_grid(phantom, n, step)
    else:
        f = forward.sample_ellipses(forward.shepp_logan_ellipses(1.0), n, step)
        g = forward.dalembert_forward(f)
    eps = args.cutoff_eps if args.cutoff_eps is not None else (5.0 * step) ** 2
    w = forward.build_cutoff(forward.CutoffSpec(eps, 1.0), n, step)
    g = forward.apply_cutoff(g, w)
    if args.noise > 0:
        g = forward.add_gaussian_noise(g, args.noise, args.seed)
    write_grid(args.out, g)
    return 0


def cmd_reconstruct(args) -> int:
    g = read_grid(args.infile)
    method = args.method.replace("-", "_")
    k = args.K if args.K is not None else _default_k(method)
    cfg = ReconConfig(method, c=args.c, k_interp=k, alpha=args.alpha)
    out = reconstruct(g, cfg)
    write_grid(args.out, out)
    if args.pgm:
        images.write_pgm(args.pgm, out)
    if args.png:
        images.write_png(args.png, out)
    return 0


def cmd_benchmark(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    try:
        c_list = [float(c) for c in args.c_list.split(",") if c.strip()]
    except ValueError:
        print(f"parec: error: bad --c-list {args.c_list!r}", file=sys.stderr)
        return 1
    configs = []
    for m in methods:
        if m not in _METHOD_FLAGS:
            print(f"parec: error: unknown method {m!r}", file=sys.stderr)
            return 1
        name = m.replace("-", "_")
        if name in ("direct", "backprojection"):
            configs.append(ReconConfig(name))
        else:
            configs.extend(
                ReconConfig(name, c=c, k_interp=_default_k(name)) for c in c_list
            )
    records = harness.run_benchmark(configs, n=args.n, noise=args.noise, seed=args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "benchmark.csv").write_text(harness.records_to_csv(records))
    (out_dir / "benchmark.json").write_text(harness.records_to_json(records))
    plots.save_error_runtime_figure(records, out_dir / "benchmark.png")
    for line in harness.records_to_csv(records).splitlines():
        print(line)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    handler = {
        "simulate": cmd_simulate,
        "reconstruct": cmd_reconstruct,
        "benchmark": cmd_benchmark,
    }[args.command]
    try:
        return handler(args)
    except GridFormatError as exc:
        print(f"parec: data error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"parec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
