"""Command-line entry point.

Subcommands: sweep, convergence, bundle, displacement (the experiment
harness) and decode (one-shot: read an SSP JSON, emit the decoded value).
Any flag may also be set in a plain key=value config file passed with
--config; explicit flags override the file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coupling import CouplingSpec, build_coupling_matrix, default_uniform_scale
from .decoder import decode
from .harness import ExperimentSpec, run_experiment
from .serialize import (
    decode_result_to_json,
    encoding_matrix_from_json,
    load_json,
    ssp_from_json,
)

_EXPERIMENT_DEFAULTS = {
    "n": 1024,
    "d": [1],
    "trials": 100,
    "sigma": [round(0.1 * i, 1) for i in range(11)],
    "methods": "csim,grid",
    "seed": 0,
    "out": "out",
    "bound": 5.0,
    "couplings_per_phase": 10,
    "coupling_dist": "uniform",
    "coupling_scale": None,
    "grid_spacing": 0.1,
    "sampler": "ball",
    "max_items": 5,
    "resonator_iters": 100,
    "denoiser_n": None,
    "denoiser_epochs": 50,
    "denoiser_samples": 10000,
    "denoiser_lr": 1e-3,
    "denoiser_batch": 64,
    "cache_dir": None,
}

# Per-experiment overrides of the shared defaults.
_PER_EXPERIMENT = {
    "convergence": {"sigma": [0.5], "methods": "csim"},
    "bundle": {"methods": "csim"},
    "displacement": {"d": [2], "methods": "csim"},
}

_LIST_KEYS = {"d": int, "sigma": float}
_SCALAR_KEYS = {
    "n": int,
    "trials": int,
    "seed": int,
    "couplings_per_phase": int,
    "max_items": int,
    "resonator_iters": int,
    "denoiser_epochs": int,
    "denoiser_samples": int,
    "denoiser_batch": int,
    "bound": float,
    "coupling_scale": float,
    "grid_spacing": float,
    "denoiser_lr": float,
    "denoiser_n": int,
    "methods": str,
    "out": str,
    "coupling_dist": str,
    "sampler": str,
    "cache_dir": str,
}


def _add_experiment_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--n", type=int, help="SSP dimension")
    p.add_argument("--d", type=int, action="append",
                   help="value dimension (repeatable)")
    p.add_argument("--trials", type=int, help="trials per condition")
    p.add_argument("--sigma", type=float, action="append",
                   help="noise level (repeatable)")
    p.add_argument("--methods", help="comma-separated subset of "
                                     "csim,grid,resonator,denoiser")
    p.add_argument("--seed", type=int, help="experiment seed")
    p.add_argument("--out", help="output directory")
    p.add_argument("--bound", type=float, help="value sampling radius B")
    p.add_argument("--couplings-per-phase", type=int, dest="couplings_per_phase")
    p.add_argument("--coupling-dist", dest="coupling_dist",
                   choices=("uniform", "triangular", "gaussian", "laplace"))
    p.add_argument("--coupling-scale", type=float, dest="coupling_scale",
                   help="override the default pi/(2 sqrt(d) B) scale")
    p.add_argument("--grid-spacing", type=float, dest="grid_spacing")
    p.add_argument("--sampler", choices=("ball", "surface"))
    p.add_argument("--max-items", type=int, dest="max_items",
                   help="largest bundle size (bundle experiment)")
    p.add_argument("--resonator-iters", type=int, dest="resonator_iters")
    p.add_argument("--denoiser-n", type=int, dest="denoiser_n",
                   help="vector dimension for the denoiser arm")
    p.add_argument("--denoiser-epochs", type=int, dest="denoiser_epochs")
    p.add_argument("--denoiser-samples", type=int, dest="denoiser_samples")
    p.add_argument("--denoiser-lr", type=float, dest="denoiser_lr")
    p.add_argument("--denoiser-batch", type=int, dest="denoiser_batch")
    p.add_argument("--cache-dir", dest="cache_dir")


def read_config(path: str) -> dict:
    """Parse a key=value config file (one pair per line, # comments)."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            raw = raw.strip()
            if key in _LIST_KEYS:
                cast = _LIST_KEYS[key]
                values[key] = [cast(v) for v in raw.split(",") if v]
            elif key in _SCALAR_KEYS:
                values[key] = _SCALAR_KEYS[key](raw)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _resolve(args: argparse.Namespace, experiment: str) -> dict:
    merged = dict(_EXPERIMENT_DEFAULTS)
    merged.update(_PER_EXPERIMENT.get(experiment, {}))
    if args.config:
        merged.update(read_config(args.config))
    for key in merged:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _spec_from(merged: dict, experiment: str) -> ExperimentSpec:
    methods = tuple(
        m.strip() for m in str(merged["methods"]).split(",") if m.strip()
    )
    return ExperimentSpec(
        experiment=experiment,
        n=merged["n"],
        d=tuple(merged["d"]),
        trials=merged["trials"],
        noise_grid=tuple(merged["sigma"]),
        methods=methods,
        seed=merged["seed"],
        output_dir=merged["out"],
        bound=merged["bound"],
        couplings_per_phase=merged["couplings_per_phase"],
        coupling_dist=merged["coupling_dist"],
        coupling_scale=merged["coupling_scale"],
        grid_spacing=merged["grid_spacing"],
        sampler=merged["sampler"],
        max_items=merged["max_items"],
        resonator_iters=merged["resonator_iters"],
        denoiser_n=merged["denoiser_n"],
        denoiser_epochs=merged["denoiser_epochs"],
        denoiser_samples=merged["denoiser_samples"],
        denoiser_lr=merged["denoiser_lr"],
        denoiser_batch=merged["denoiser_batch"],
        cache_dir=merged["cache_dir"],
    )


def _run_decode(args: argparse.Namespace) -> int:
    A = encoding_matrix_from_json(load_json(args.matrix))
    u = ssp_from_json(load_json(args.ssp))
    scale = (
        args.coupling_scale
        if args.coupling_scale is not None
        else default_uniform_scale(A.d, args.bound)
    )
    spec = CouplingSpec(
        distribution=args.coupling_dist,
        scale=scale,
        min_couplings=args.couplings_per_phase,
        seed=args.seed,
    )
    C = build_coupling_matrix(A, spec)
    result = decode_result_to_json(decode(A, C, u))
    text = json.dumps(result, sort_keys=True)
    if args.out == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csim",
        description="FHRR/SSP decoding and cleanup benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("sweep", "method comparison over a noise grid"),
        ("convergence", "iterations-to-convergence measurement"),
        ("bundle", "bundle-corruption cleanup curves"),
        ("displacement", "two-object displacement demonstration"),
    ):
        p = sub.add_parser(name, help=desc)
        _add_experiment_flags(p)

    p = sub.add_parser("decode", help="decode one SSP JSON file")
    p.add_argument("--ssp", required=True, help="SSP JSON file")
    p.add_argument("--matrix", required=True, help="encoding-matrix JSON file")
    p.add_argument("--out", default="-", help="output file, or - for stdout")
    p.add_argument("--bound", type=float, default=5.0)
    p.add_argument("--couplings-per-phase", type=int, default=10,
                   dest="couplings_per_phase")
    p.add_argument("--coupling-dist", default="uniform", dest="coupling_dist",
                   choices=("uniform", "triangular", "gaussian", "laplace"))
    p.add_argument("--coupling-scale", type=float, default=None,
                   dest="coupling_scale")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "decode":
        return _run_decode(args)
    spec = _spec_from(_resolve(args, args.command), args.command)
    paths = run_experiment(spec)
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
