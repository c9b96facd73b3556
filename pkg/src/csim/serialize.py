"""Documented JSON forms for the shareable artifacts.

Every form is a flat JSON object with a "kind" tag:

  ssp_vector       {"kind", "n", "phases": [double, ...]}
  encoding_matrix  {"kind", "n", "d", "entries": [[double, ...], ...]}
  coupling_matrix  {"kind", "dims": [n_c, n], "rows": [[i, j, s], ...]}
  decode_result    {"kind", "x_hat", "iters_coupled", "iters_direct",
                    "converged", "objective_trace": [[iter, E], ...],
                    "final_similarity"}
  mlp_denoiser     {"kind", "task", "n", "d", "hidden", "epoch_losses",
                    "params": {name: {"shape": [...], "data": [...]}}}

Doubles are emitted with Python's shortest round-trip repr, so loading
reproduces the exact float64 values.
"""

from __future__ import annotations

import json

import numpy as np

from .coupling import CouplingMatrix
from .decoder import DecodeResult
from .denoiser import MLPDenoiser
from .fhrr import EncodingMatrix, SSPVector


def _expect_kind(obj: dict, kind: str):
    if obj.get("kind") != kind:
        raise ValueError(f"expected kind {kind!r}, got {obj.get('kind')!r}")


def ssp_to_json(u: SSPVector) -> dict:
    return {"kind": "ssp_vector", "n": u.n, "phases": [float(p) for p in u.phases]}


def ssp_from_json(obj: dict) -> SSPVector:
    _expect_kind(obj, "ssp_vector")
    phases = np.asarray(obj["phases"], dtype=np.float64)
    if phases.size != obj["n"]:
        raise ValueError(f"phase count {phases.size} != n={obj['n']}")
    return SSPVector(phases)


def encoding_matrix_to_json(A: EncodingMatrix) -> dict:
    return {
        "kind": "encoding_matrix",
        "n": A.n,
        "d": A.d,
        "entries": [[float(v) for v in row] for row in A.entries],
    }


def encoding_matrix_from_json(obj: dict) -> EncodingMatrix:
    _expect_kind(obj, "encoding_matrix")
    entries = np.asarray(obj["entries"], dtype=np.float64)
    if entries.shape != (obj["n"], obj["d"]):
        raise ValueError(
            f"entries shape {entries.shape} != ({obj['n']}, {obj['d']})"
        )
    return EncodingMatrix(entries)


def coupling_to_json(C: CouplingMatrix) -> dict:
    return {
        "kind": "coupling_matrix",
        "dims": [C.n_c, C.n],
        "rows": [
            [int(i), int(j), int(s)] for i, j, s in zip(C.i, C.j, C.s)
        ],
    }


def coupling_from_json(obj: dict) -> CouplingMatrix:
    _expect_kind(obj, "coupling_matrix")
    rows = np.asarray(obj["rows"], dtype=np.int64).reshape(-1, 3)
    n_c, n = obj["dims"]
    if rows.shape[0] != n_c:
        raise ValueError(f"row count {rows.shape[0]} != n_c={n_c}")
    return CouplingMatrix(rows[:, 0], rows[:, 1], rows[:, 2], int(n))


def decode_result_to_json(res: DecodeResult) -> dict:
    return {
        "kind": "decode_result",
        "x_hat": [float(v) for v in res.x_hat],
        "iters_coupled": res.iters_coupled,
        "iters_direct": res.iters_direct,
        "converged": bool(res.converged),
        "objective_trace": [[int(i), float(e)] for i, e in res.objective_trace],
        "final_similarity": float(res.final_similarity),
    }


def denoiser_to_json(net: MLPDenoiser) -> dict:
    return {
        "kind": "mlp_denoiser",
        "task": net.task,
        "n": net.n,
        "d": net.d,
        "hidden": net.hidden,
        "epoch_losses": [float(v) for v in net.epoch_losses],
        "params": {
            name: {"shape": list(arr.shape), "data": [float(v) for v in arr.ravel()]}
            for name, arr in net.params.items()
        },
    }


def denoiser_from_json(obj: dict) -> MLPDenoiser:
    _expect_kind(obj, "mlp_denoiser")
    net = MLPDenoiser(obj["n"], obj["task"], d=obj["d"], hidden=obj["hidden"])
    for name, tagged in obj["params"].items():
        arr = np.asarray(tagged["data"], dtype=np.float64).reshape(tagged["shape"])
        if name not in net.params or net.params[name].shape != arr.shape:
            raise ValueError(f"unexpected parameter {name} with shape {arr.shape}")
        net.params[name] = arr
    net.adam.params = net.params
    net.epoch_losses = [float(v) for v in obj.get("epoch_losses", [])]
    return net


def save_json(obj: dict, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True)
        fh.write("\n")


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
