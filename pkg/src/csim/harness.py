"""Experiment harness: method-comparison noise sweeps, convergence-rate
measurement, bundle-cleanup curves, and the two-object displacement
demonstration.

Each experiment writes a per-trial CSV, an aggregate JSON summary, and
SVG plots into the output directory. Outputs are byte-deterministic for
a fixed (spec, seed): trial RNG streams are derived from the seed with
named stream keys; wall-clock timings are kept on the in-memory records
but never written. Within a trial every method sees the identical
corrupted vector, so method comparisons are paired (the denoiser arm may
run at its own vector dimension, in which case it shares the trial's
true value and noise stream but not the vector itself).
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import svgplot
from .baselines import GridSearcher, ResonatorDecoder, symmetric_grid
from .corruption import ComponentGaussianNoise, bundle_query, corrupt
from .coupling import CouplingSpec, build_coupling_matrix, default_uniform_scale
from .decoder import DecodeConfig, decode
from .denoiser import denoise, train_denoiser
from .fhrr import (
    EncodingMatrix,
    SSPVector,
    bind,
    bundle,
    encode,
    make_encoding_matrix,
    normalize,
    random_unitary,
    similarity,
    unbind,
    wrap_phase,
)
from .sampling import sample_ball, sample_surface
from .serialize import denoiser_from_json, denoiser_to_json, load_json, save_json

EXPERIMENTS = ("sweep", "convergence", "bundle", "displacement")
METHODS = ("csim", "grid", "resonator", "denoiser")
FAIL_THRESHOLD = 0.1

# Named RNG streams, so every consumer of randomness has its own child
# of the experiment seed.
_S_MATRIX, _S_COUPLING, _S_VALUES, _S_NOISE, _S_DENOISER, _S_BUNDLE, _S_OBJECTS = (
    range(1, 8)
)


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, key)]))


def circular_std(angles) -> float:
    """Circular standard deviation sqrt(-2 ln R) of a sample of angles."""
    angles = np.asarray(angles, dtype=np.float64)
    resultant = np.abs(np.mean(np.exp(1j * angles)))
    resultant = min(max(float(resultant), 1e-300), 1.0)
    return float(np.sqrt(-2.0 * np.log(resultant)))


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run and where to put the outputs."""

    experiment: str
    n: int = 1024
    d: tuple[int, ...] = (1,)
    trials: int = 100
    noise_grid: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(11))
    methods: tuple[str, ...] = ("csim", "grid")
    seed: int = 0
    output_dir: str = "out"
    bound: float = 5.0
    couplings_per_phase: int = 10
    coupling_dist: str = "uniform"
    coupling_scale: float | None = None
    grid_spacing: float = 0.1
    sampler: str = "ball"
    max_items: int = 5
    resonator_iters: int = 100
    denoiser_n: int | None = None
    denoiser_epochs: int = 50
    denoiser_samples: int = 10000
    denoiser_lr: float = 1e-3
    denoiser_batch: int = 64
    cache_dir: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}"
            )
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"need trials >= 1, got {self.trials}")
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))
        if any(v < 1 for v in self.d):
            raise ValueError(f"value dimensions must be >= 1, got {self.d}")
        object.__setattr__(
            self, "noise_grid", tuple(float(s) for s in self.noise_grid)
        )
        if any(s < 0 for s in self.noise_grid):
            raise ValueError("noise grid values must be >= 0")
        object.__setattr__(self, "methods", tuple(self.methods))
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; expected subset of {METHODS}")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if not self.bound > 0:
            raise ValueError(f"bound must be > 0, got {self.bound}")
        if self.max_items < 2:
            raise ValueError(f"need max_items >= 2, got {self.max_items}")
        if self.sampler not in ("ball", "surface"):
            raise ValueError(f"sampler must be 'ball' or 'surface', got {self.sampler}")


@dataclass(frozen=True)
class TrialRecord:
    """One method's outcome on one corrupted vector."""

    method: str
    d: int
    sigma: float
    trial: int
    x_true: tuple[float, ...]
    x_hat: tuple[float, ...]
    similarity_error: float
    euclidean_error: float
    fail: bool
    iters_coupled: int
    iters_direct: int
    wall_time: float  # informational; excluded from emitted files


def _sample_value(spec: ExperimentSpec, rng, d: int):
    if spec.sampler == "surface":
        return sample_surface(rng, d, spec.bound)
    return sample_ball(rng, d, spec.bound)


def _coupling_spec(spec: ExperimentSpec, d: int) -> CouplingSpec:
    scale = (
        spec.coupling_scale
        if spec.coupling_scale is not None
        else default_uniform_scale(d, spec.bound)
    )
    return CouplingSpec(
        distribution=spec.coupling_dist,
        scale=scale,
        min_couplings=spec.couplings_per_phase,
        seed=int(
            _rng(spec.seed, _S_COUPLING, d).integers(0, 2**31 - 1)
        ),
    )


def _build_codec(spec: ExperimentSpec, d: int, n: int | None = None):
    n = spec.n if n is None else n
    A = make_encoding_matrix(n, d, seed=_rng(spec.seed, _S_MATRIX, d, n))
    C = build_coupling_matrix(A, _coupling_spec(spec, d))
    return A, C


def _agg(values) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    return {"mean": float(arr.mean()), "std": float(arr.std())}


def _denoiser_cache_path(spec: ExperimentSpec, d: int, sigma: float, n: int) -> str:
    cache_dir = spec.cache_dir or os.path.join(spec.output_dir, "denoiser_cache")
    name = (
        f"denoiser_n{n}_d{d}_sigma{sigma!r}_seed{spec.seed}"
        f"_N{spec.denoiser_samples}_e{spec.denoiser_epochs}"
        f"_lr{spec.denoiser_lr!r}_b{spec.denoiser_batch}.json"
    )
    return os.path.join(cache_dir, name)


def _get_denoiser(spec: ExperimentSpec, A: EncodingMatrix, d: int, sigma: float):
    path = _denoiser_cache_path(spec, d, sigma, A.n)
    if os.path.exists(path):
        return denoiser_from_json(load_json(path))
    net = train_denoiser(
        A,
        "decode",
        sigma,
        n_samples=spec.denoiser_samples,
        epochs=spec.denoiser_epochs,
        seed=_rng(spec.seed, _S_DENOISER, d, int(round(sigma * 1000))),
        lr=spec.denoiser_lr,
        batch_size=spec.denoiser_batch,
        bound=spec.bound,
    )
    os.makedirs(os.path.dirname(path), exist_ok=True)
    save_json(denoiser_to_json(net), path)
    return net


def run_sweep(spec: ExperimentSpec) -> dict:
    """Noise sweep: per (d, sigma, trial), corrupt one SSP and let every
    requested method decode it; aggregate error means/stds and failure
    fractions per (method, d, sigma)."""
    records: list[TrialRecord] = []
    summary: dict = {}
    decode_cfg = DecodeConfig()

    for d in spec.d:
        A, C = _build_codec(spec, d)
        grid = symmetric_grid(d, spec.bound, spec.grid_spacing)
        searcher = GridSearcher(A, grid) if "grid" in spec.methods else None
        resonator = (
            ResonatorDecoder(A, grid, max_iters=spec.resonator_iters)
            if "resonator" in spec.methods
            else None
        )
        dn_n = spec.denoiser_n or spec.n
        A_dn = None
        if "denoiser" in spec.methods:
            A_dn = (
                A if dn_n == spec.n else make_encoding_matrix(
                    dn_n, d, seed=_rng(spec.seed, _S_MATRIX, d, dn_n)
                )
            )

        for s_idx, sigma in enumerate(spec.noise_grid):
            denoiser_net = (
                _get_denoiser(spec, A_dn, d, sigma) if A_dn is not None else None
            )
            for trial in range(spec.trials):
                x_true = _sample_value(
                    spec, _rng(spec.seed, _S_VALUES, d, s_idx, trial), d
                )
                noise = ComponentGaussianNoise(sigma)
                u_corrupt = corrupt(
                    encode(A, x_true), noise,
                    seed=_rng(spec.seed, _S_NOISE, d, s_idx, trial),
                )
                u_corrupt_dn = None
                if A_dn is not None:
                    u_corrupt_dn = (
                        u_corrupt
                        if A_dn is A
                        else corrupt(
                            encode(A_dn, x_true), noise,
                            seed=_rng(spec.seed, _S_NOISE, d, s_idx, trial, dn_n),
                        )
                    )

                for method in spec.methods:
                    iters_c = iters_d = 0
                    t0 = time.perf_counter()
                    if method == "csim":
                        res = decode(A, C, u_corrupt, decode_cfg)
                        x_hat = res.x_hat
                        iters_c, iters_d = res.iters_coupled, res.iters_direct
                    elif method == "grid":
                        x_hat = searcher.search(u_corrupt)
                    elif method == "resonator":
                        x_hat = resonator.decode(u_corrupt).x_hat
                    else:  # denoiser
                        x_hat = denoise(denoiser_net, u_corrupt_dn)
                    wall = time.perf_counter() - t0

                    if method == "denoiser" and A_dn is not A:
                        sim_err = 1.0 - similarity(
                            u_corrupt_dn, encode(A_dn, x_hat)
                        ).real
                    else:
                        sim_err = 1.0 - similarity(u_corrupt, encode(A, x_hat)).real
                    err = float(np.linalg.norm(np.asarray(x_hat) - x_true))
                    records.append(
                        TrialRecord(
                            method=method,
                            d=d,
                            sigma=sigma,
                            trial=trial,
                            x_true=tuple(float(v) for v in x_true),
                            x_hat=tuple(float(v) for v in np.atleast_1d(x_hat)),
                            similarity_error=float(sim_err),
                            euclidean_error=err,
                            fail=err > FAIL_THRESHOLD,
                            iters_coupled=iters_c,
                            iters_direct=iters_d,
                            wall_time=wall,
                        )
                    )

    for method in spec.methods:
        summary[method] = {}
        for d in spec.d:
            summary[method][str(d)] = {}
            for sigma in spec.noise_grid:
                subset = [
                    r
                    for r in records
                    if r.method == method and r.d == d and r.sigma == sigma
                ]
                summary[method][str(d)][repr(sigma)] = {
                    "similarity_error": _agg([r.similarity_error for r in subset]),
                    "euclidean_error": _agg([r.euclidean_error for r in subset]),
                    "fail_fraction": float(np.mean([r.fail for r in subset])),
                    "trials": len(subset),
                }
    return {"records": records, "summary": summary}


def run_convergence(spec: ExperimentSpec) -> dict:
    """Iterations-to-convergence of the two decode stages, per d and sigma."""
    records: list[TrialRecord] = []
    summary: dict = {}
    cfg = DecodeConfig()
    for d in spec.d:
        A, C = _build_codec(spec, d)
        summary[str(d)] = {}
        for s_idx, sigma in enumerate(spec.noise_grid):
            for trial in range(spec.trials):
                x_true = _sample_value(
                    spec, _rng(spec.seed, _S_VALUES, d, s_idx, trial), d
                )
                u_corrupt = corrupt(
                    encode(A, x_true),
                    ComponentGaussianNoise(sigma),
                    seed=_rng(spec.seed, _S_NOISE, d, s_idx, trial),
                )
                t0 = time.perf_counter()
                res = decode(A, C, u_corrupt, cfg)
                wall = time.perf_counter() - t0
                err = float(np.linalg.norm(res.x_hat - x_true))
                records.append(
                    TrialRecord(
                        method="csim",
                        d=d,
                        sigma=sigma,
                        trial=trial,
                        x_true=tuple(float(v) for v in x_true),
                        x_hat=tuple(float(v) for v in res.x_hat),
                        similarity_error=1.0 - res.final_similarity,
                        euclidean_error=err,
                        fail=err > FAIL_THRESHOLD,
                        iters_coupled=res.iters_coupled,
                        iters_direct=res.iters_direct,
                        wall_time=wall,
                    )
                )
            subset = [r for r in records if r.d == d and r.sigma == sigma]
            iters_c = [r.iters_coupled for r in subset]
            iters_d = [r.iters_direct for r in subset]
            totals = [a + b for a, b in zip(iters_c, iters_d)]
            summary[str(d)][repr(sigma)] = {
                "iters_coupled": _agg(iters_c),
                "iters_direct": _agg(iters_d),
                "iters_total": {**_agg(totals), "median": float(np.median(totals))},
                "converged_fraction": float(np.mean([r.fail is False for r in subset])),
            }
    return {"records": records, "summary": summary}


def run_bundle(spec: ExperimentSpec) -> dict:
    """Cleanup error and phase-error spread when querying bundles of
    2..max_items role-filler pairs (normalized once, after all items)."""
    d = spec.d[0]
    A, C = _build_codec(spec, d)
    cfg = DecodeConfig()
    rows = []
    summary: dict = {}
    hist_edges = np.linspace(-np.pi, np.pi, 65)
    histograms: dict = {}
    for items in range(2, spec.max_items + 1):
        phase_errors = []
        errors = []
        fails = []
        for trial in range(spec.trials):
            rng = _rng(spec.seed, _S_BUNDLE, items, trial)
            values = [sample_ball(rng, d, spec.bound) for _ in range(items)]
            payloads = [
                (random_unitary(spec.n, rng), encode(A, v)) for v in values
            ]
            query = bundle_query(payloads, 0, "at_end")
            phase_err = wrap_phase(query.phases - payloads[0][1].phases)
            phase_errors.append(phase_err)
            res = decode(A, C, query, cfg)
            err = float(np.linalg.norm(res.x_hat - values[0]))
            errors.append(err)
            fails.append(err > FAIL_THRESHOLD)
            rows.append(
                {
                    "items": items,
                    "trial": trial,
                    "x_true": values[0],
                    "x_hat": res.x_hat,
                    "euclidean_error": err,
                    "fail": err > FAIL_THRESHOLD,
                    "iters_coupled": res.iters_coupled,
                    "iters_direct": res.iters_direct,
                    "phase_circular_std": circular_std(phase_err),
                }
            )
        pooled = np.concatenate(phase_errors)
        counts, _ = np.histogram(pooled, bins=hist_edges)
        histograms[str(items)] = counts.tolist()
        summary[str(items)] = {
            "euclidean_error": _agg(errors),
            "fail_fraction": float(np.mean(fails)),
            "phase_circular_std": circular_std(pooled),
            "phase_samples": int(pooled.size),
            "trials": spec.trials,
        }
    return {
        "rows": rows,
        "summary": summary,
        "histogram_edges": hist_edges.tolist(),
        "histograms": histograms,
        "d": d,
    }


# Object layout of the displacement demonstration: two objects at fixed
# 2-D positions; the displacement from the second to the first is what
# the pipeline must recover.
DISPLACEMENT_POSITIONS = ((1.5, -2.3), (-0.7, 0.3))
DISPLACEMENT_TRUTH = (2.2, -2.6)


def run_displacement(spec: ExperimentSpec) -> dict:
    """Query a two-object map bundle for both object positions, compute
    the displacement vector between them raw and with cleanup, and decode
    both. Also evaluates similarity maps over the search square."""
    d = 2
    A, C = _build_codec(spec, d)
    cfg = DecodeConfig()
    rng = _rng(spec.seed, _S_OBJECTS)
    obj_a = random_unitary(spec.n, rng)
    obj_b = random_unitary(spec.n, rng)
    pos_a = np.asarray(DISPLACEMENT_POSITIONS[0])
    pos_b = np.asarray(DISPLACEMENT_POSITIONS[1])
    truth = np.asarray(DISPLACEMENT_TRUTH)

    memory = normalize(
        bundle([bind(obj_a, encode(A, pos_a)), bind(obj_b, encode(A, pos_b))])
    )
    p_a = unbind(memory, obj_a)
    p_b = unbind(memory, obj_b)

    raw_disp = unbind(p_a, p_b)
    res_a = decode(A, C, p_a, cfg)
    res_b = decode(A, C, p_b, cfg)
    clean_disp = unbind(res_a.cleaned_ssp, res_b.cleaned_ssp)

    res_raw = decode(A, C, raw_disp, cfg)
    res_clean = decode(A, C, clean_disp, cfg)

    grid = symmetric_grid(d, spec.bound, spec.grid_spacing)
    searcher = GridSearcher(A, grid)
    axis = grid.axis(0)
    shape = (axis.size, grid.axis(1).size)
    map_raw = searcher.values(raw_disp).reshape(shape)
    map_clean = searcher.values(clean_disp).reshape(shape)

    truth_ssp = encode(A, truth)
    return {
        "positions": {"a": pos_a.tolist(), "b": pos_b.tolist()},
        "truth": truth.tolist(),
        "decoded_positions": {
            "a": res_a.x_hat.tolist(),
            "b": res_b.x_hat.tolist(),
        },
        "raw_decoded": res_raw.x_hat.tolist(),
        "cleaned_decoded": res_clean.x_hat.tolist(),
        "raw_error": float(np.linalg.norm(res_raw.x_hat - truth)),
        "cleaned_error": float(np.linalg.norm(res_clean.x_hat - truth)),
        "raw_similarity_at_truth": similarity(raw_disp, truth_ssp).real,
        "cleaned_similarity_at_truth": similarity(clean_disp, truth_ssp).real,
        "axis": axis.tolist(),
        "map_raw": map_raw,
        "map_clean": map_clean,
    }


def _vec_text(values) -> str:
    return ";".join(repr(float(v)) for v in np.atleast_1d(values))


def _write_csv(path: str, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)  # excel dialect: RFC 4180 quoting and CRLF
        writer.writerow(header)
        writer.writerows(rows)


def _spec_json(spec: ExperimentSpec) -> dict:
    return asdict(spec)


def _record_rows(records):
    for r in records:
        yield [
            r.method,
            r.d,
            repr(r.sigma),
            r.trial,
            _vec_text(r.x_true),
            _vec_text(r.x_hat),
            repr(r.similarity_error),
            repr(r.euclidean_error),
            int(r.fail),
            r.iters_coupled,
            r.iters_direct,
        ]


_RECORD_HEADER = [
    "method", "d", "sigma", "trial", "x_true", "x_hat",
    "similarity_error", "euclidean_error", "fail",
    "iters_coupled", "iters_direct",
]


def emit_sweep(payload: dict, spec: ExperimentSpec) -> list[str]:
    out = spec.output_dir
    paths = []
    csv_path = os.path.join(out, "sweep.csv")
    _write_csv(csv_path, _RECORD_HEADER, _record_rows(payload["records"]))
    paths.append(csv_path)
    json_path = os.path.join(out, "sweep_summary.json")
    save_json(
        {"experiment": "sweep", "spec": _spec_json(spec), "results": payload["summary"]},
        json_path,
    )
    paths.append(json_path)

    sigmas = list(spec.noise_grid)
    for metric, fname, label in (
        ("similarity_error", "sweep_similarity.svg", "similarity error"),
        ("euclidean_error", "sweep_distance.svg", "Euclidean distance error"),
        ("fail_fraction", "sweep_fail.svg", "failure fraction"),
    ):
        series = []
        for method in spec.methods:
            for d in spec.d:
                cells = [payload["summary"][method][str(d)][repr(s)] for s in sigmas]
                if metric == "fail_fraction":
                    ys = [c["fail_fraction"] for c in cells]
                    band = None
                else:
                    ys = [c[metric]["mean"] for c in cells]
                    stds = [c[metric]["std"] for c in cells]
                    band = (
                        [y - s for y, s in zip(ys, stds)],
                        [y + s for y, s in zip(ys, stds)],
                    )
                series.append(
                    {"label": f"{method} d={d}", "x": sigmas, "y": ys, "band": band}
                )
        svg_path = os.path.join(out, fname)
        svgplot.line_chart(svg_path, f"Noise sweep: {label}", "noise sigma", label, series)
        paths.append(svg_path)
    return paths


def emit_convergence(payload: dict, spec: ExperimentSpec) -> list[str]:
    out = spec.output_dir
    paths = []
    csv_path = os.path.join(out, "convergence.csv")
    _write_csv(csv_path, _RECORD_HEADER, _record_rows(payload["records"]))
    paths.append(csv_path)
    json_path = os.path.join(out, "convergence_summary.json")
    save_json(
        {
            "experiment": "convergence",
            "spec": _spec_json(spec),
            "results": payload["summary"],
        },
        json_path,
    )
    paths.append(json_path)

    ds = [int(k) for k in payload["summary"]]
    series = []
    for sigma in spec.noise_grid:
        for stage in ("iters_coupled", "iters_direct"):
            cells = [payload["summary"][str(d)][repr(sigma)][stage] for d in ds]
            ys = [c["mean"] for c in cells]
            stds = [c["std"] for c in cells]
            label = f"{stage.replace('iters_', '')} stage, sigma={sigma:g}"
            series.append(
                {
                    "label": label,
                    "x": ds,
                    "y": ys,
                    "band": ([y - s for y, s in zip(ys, stds)],
                             [y + s for y, s in zip(ys, stds)]),
                }
            )
    svg_path = os.path.join(out, "convergence_iters.svg")
    svgplot.line_chart(
        svg_path, "Gradient-ascent iterations to convergence",
        "value dimension d", "iterations", series,
    )
    paths.append(svg_path)
    return paths


def emit_bundle(payload: dict, spec: ExperimentSpec) -> list[str]:
    out = spec.output_dir
    paths = []
    csv_path = os.path.join(out, "bundle.csv")
    header = [
        "items", "trial", "x_true", "x_hat", "euclidean_error", "fail",
        "iters_coupled", "iters_direct", "phase_circular_std",
    ]
    rows = [
        [
            r["items"], r["trial"], _vec_text(r["x_true"]), _vec_text(r["x_hat"]),
            repr(float(r["euclidean_error"])), int(r["fail"]),
            r["iters_coupled"], r["iters_direct"],
            repr(float(r["phase_circular_std"])),
        ]
        for r in payload["rows"]
    ]
    _write_csv(csv_path, header, rows)
    paths.append(csv_path)
    json_path = os.path.join(out, "bundle_summary.json")
    save_json(
        {
            "experiment": "bundle",
            "spec": _spec_json(spec),
            "results": payload["summary"],
            "histogram_edges": payload["histogram_edges"],
            "histograms": payload["histograms"],
        },
        json_path,
    )
    paths.append(json_path)

    counts = sorted(int(k) for k in payload["summary"])
    means = [payload["summary"][str(k)]["euclidean_error"]["mean"] for k in counts]
    stds = [payload["summary"][str(k)]["euclidean_error"]["std"] for k in counts]
    svg_path = os.path.join(out, "bundle_error.svg")
    svgplot.line_chart(
        svg_path, "Cleanup error vs bundled items", "items in bundle",
        "Euclidean distance error",
        [{
            "label": "csim cleanup", "x": counts, "y": means,
            "band": ([m - s for m, s in zip(means, stds)],
                     [m + s for m, s in zip(means, stds)]),
        }],
    )
    paths.append(svg_path)

    hist_path = os.path.join(out, "bundle_phase_hist.svg")
    svgplot.histogram(
        hist_path, "Phase error by bundle size", "phase error (rad)", "count",
        [
            {
                "label": f"{k} items",
                "edges": payload["histogram_edges"],
                "counts": payload["histograms"][str(k)],
            }
            for k in counts
        ],
    )
    paths.append(hist_path)
    return paths


def emit_displacement(payload: dict, spec: ExperimentSpec) -> list[str]:
    out = spec.output_dir
    paths = []
    axis = payload["axis"]
    csv_path = os.path.join(out, "displacement_map.csv")
    rows = []
    for i, xv in enumerate(axis):
        for j, yv in enumerate(axis):
            rows.append(
                [
                    repr(float(xv)), repr(float(yv)),
                    repr(float(payload["map_raw"][i, j])),
                    repr(float(payload["map_clean"][i, j])),
                ]
            )
    _write_csv(csv_path, ["x", "y", "raw_similarity", "cleaned_similarity"], rows)
    paths.append(csv_path)

    json_path = os.path.join(out, "displacement_summary.json")
    summary = {k: v for k, v in payload.items() if k not in ("map_raw", "map_clean")}
    save_json(
        {"experiment": "displacement", "spec": _spec_json(spec), "results": summary},
        json_path,
    )
    paths.append(json_path)

    markers_common = [
        (payload["truth"][0], payload["truth"][1], "cross", "#ffffff"),
    ]
    for name, key, decoded in (
        ("displacement_raw.svg", "map_raw", payload["raw_decoded"]),
        ("displacement_cleaned.svg", "map_clean", payload["cleaned_decoded"]),
    ):
        svg_path = os.path.join(out, name)
        svgplot.heatmap(
            svg_path,
            "Displacement similarity map "
            + ("(raw)" if "raw" in name else "(cleaned)"),
            "x", "y", axis, axis, payload[key],
            markers=markers_common + [(decoded[0], decoded[1], "plus", "#d62728")],
        )
        paths.append(svg_path)
    return paths


def run_experiment(spec: ExperimentSpec) -> list[str]:
    """Run one experiment and write its outputs; returns the file paths."""
    os.makedirs(spec.output_dir, exist_ok=True)
    if spec.experiment == "sweep":
        return emit_sweep(run_sweep(spec), spec)
    if spec.experiment == "convergence":
        return emit_convergence(run_convergence(spec), spec)
    if spec.experiment == "bundle":
        return emit_bundle(run_bundle(spec), spec)
    return emit_displacement(run_displacement(spec), spec)
