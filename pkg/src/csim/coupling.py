"""Coupling-matrix construction for the smoothed decoding objective.

A coupling is a signed pair of vector elements (i, j, s): its row of the
(sparse) coupling matrix C has C[k,i] = 1 and C[k,j] = s with s in
{+1, -1}. Applied to a phase vector it produces the phase sum or
difference phi_i + s*phi_j; applied to the base-phase matrix it produces
a combined base phase A_i + s*A_j. Choosing couplings whose combined
base phases are small makes the coupled mean-cosine objective smooth,
with a single wide basin over the working range of values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .fhrr import EncodingMatrix, wrap_phase

DISTRIBUTIONS = ("uniform", "triangular", "gaussian", "laplace")


class InfeasibleSpecError(ValueError):
    """The requested coupling count cannot be met without duplicate rows."""


def default_uniform_scale(d: int, B: float) -> float:
    """Half-width pi / (2 sqrt(d) B) for the uniform target distribution.

    With values bounded by |x_k| <= B, combined base phases inside this
    interval keep every coupled cosine term single-peaked over the search
    region, which is what makes the coupled objective easy to ascend.

    Raises:
        ValueError: If d < 1 or B <= 0.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if B <= 0:
        raise ValueError(f"need B > 0, got {B}")
    return np.pi / (2.0 * np.sqrt(d) * B)


@dataclass(frozen=True)
class CouplingSpec:
    """How to choose couplings.

    Attributes:
        distribution: Target distribution of combined base-phase magnitudes;
            one of "uniform", "triangular", "gaussian", "laplace".
        scale: Half-width (uniform/triangular), standard deviation
            (gaussian), or diversity (laplace). Must be > 0.
        min_couplings: Minimum number of rows every vector element must
            participate in.
        seed: RNG seed for target draws and candidate subsampling.
        candidate_pairs: Number of random index pairs scanned per target
            draw (both signs of each pair are considered). None scales
            the default with the value dimension, since the share of
            pairs with small combined norms shrinks fast as d grows.
    """

    distribution: str = "uniform"
    scale: float = np.pi / 10.0
    min_couplings: int = 10
    seed: int = 0
    candidate_pairs: int | None = None

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.distribution!r}; "
                f"expected one of {DISTRIBUTIONS}"
            )
        if not self.scale > 0:
            raise ValueError(f"scale must be > 0, got {self.scale}")
        if self.min_couplings < 1:
            raise ValueError(f"min_couplings must be >= 1, got {self.min_couplings}")
        if self.candidate_pairs is not None and self.candidate_pairs < 1:
            raise ValueError("candidate_pairs must be >= 1")

    def effective_candidate_pairs(self, d: int) -> int:
        if self.candidate_pairs is not None:
            return self.candidate_pairs
        return min(192 * 4 ** (d - 1), 3072)


@dataclass(frozen=True)
class CouplingMatrix:
    """Sparse n_c x n coupling matrix stored as (i, j, s) triples.

    Rows are canonicalized to i < j. Every row has exactly two nonzeros
    when viewed densely: C[k, i_k] = 1 and C[k, j_k] = s_k.
    """

    i: NDArray[np.int64]
    j: NDArray[np.int64]
    s: NDArray[np.int64]
    n: int

    def __post_init__(self):
        i = np.asarray(self.i, dtype=np.int64)
        j = np.asarray(self.j, dtype=np.int64)
        s = np.asarray(self.s, dtype=np.int64)
        if not (i.shape == j.shape == s.shape) or i.ndim != 1:
            raise ValueError("i, j, s must be 1-D arrays of equal length")
        if np.any(i == j):
            raise ValueError("couplings must pair distinct elements")
        if np.any((i < 0) | (i >= self.n) | (j < 0) | (j >= self.n)):
            raise ValueError("coupling indices out of range")
        if not np.all(np.isin(s, (-1, 1))):
            raise ValueError("signs must be +1 or -1")
        for name, arr in (("i", i), ("j", j), ("s", s)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_c(self) -> int:
        return self.i.size

    @property
    def dims(self) -> tuple[int, int]:
        return (self.n_c, self.n)

    def coupled_base(self, A: EncodingMatrix) -> NDArray[np.float64]:
        """Combined base phases C @ A as an (n_c, d) array."""
        if A.n != self.n:
            raise ValueError(f"dimension mismatch: matrix n={A.n}, couplings n={self.n}")
        return A.entries[self.i] + self.s[:, None] * A.entries[self.j]

    def to_dense(self) -> NDArray[np.float64]:
        """Dense n_c x n form, for small-case checks only."""
        dense = np.zeros((self.n_c, self.n))
        dense[np.arange(self.n_c), self.i] = 1.0
        dense[np.arange(self.n_c), self.j] = self.s.astype(np.float64)
        return dense

    def participation_counts(self) -> NDArray[np.int64]:
        """How many rows each vector element appears in."""
        return np.bincount(np.concatenate([self.i, self.j]), minlength=self.n)


def coupled_phases(C: CouplingMatrix, phases) -> NDArray[np.float64]:
    """Signed phase combinations wrap(phi_i + s * phi_j), one per row."""
    phases = np.asarray(phases, dtype=np.float64)
    if phases.shape != (C.n,):
        raise ValueError(f"phases have shape {phases.shape}, expected ({C.n},)")
    return wrap_phase(phases[C.i] + C.s * phases[C.j])


def _draw_targets(rng: np.random.Generator, spec: CouplingSpec, count: int):
    """Magnitude targets: |draw| from the signed target distribution."""
    if spec.distribution == "uniform":
        return rng.uniform(0.0, spec.scale, size=count)
    if spec.distribution == "triangular":
        return np.abs(rng.triangular(-spec.scale, 0.0, spec.scale, size=count))
    if spec.distribution == "gaussian":
        return np.abs(rng.normal(0.0, spec.scale, size=count))
    return np.abs(rng.laplace(0.0, spec.scale, size=count))  # laplace


def _canonical(i: int, j: int, s: int) -> tuple[int, int, int]:
    # (j, i, s) produces the same cosine term as (i, j, s) for either sign,
    # so order the pair to make duplicates detectable.
    return (i, j, s) if i < j else (j, i, s)


def build_coupling_matrix(A: EncodingMatrix, spec: CouplingSpec) -> CouplingMatrix:
    """Select couplings whose combined base phases follow the target law.

    Two passes. First, for each magnitude drawn from the target
    distribution, a random subsample of index pairs (both signs) is
    scanned and the pair whose combined base-phase norm best matches the
    draw is taken; chosen rows leave the candidate pool. Second, elements
    still appearing in fewer than spec.min_couplings rows are repaired by
    pairing them with the partners giving the smallest combined norms.

    Deterministic for fixed (A, spec).

    Returns:
        CouplingMatrix with ceil(n * min_couplings / 2) or more unique
        rows and full participation coverage.

    Raises:
        InfeasibleSpecError: If n < 2 or n is too small to give every
            element min_couplings distinct rows.
    """
    n, d = A.n, A.d
    if n < 2:
        raise InfeasibleSpecError(f"need n >= 2 to couple phases, got n={n}")
    # Each element has 2(n-1) distinct canonical rows available.
    if spec.min_couplings > 2 * (n - 1):
        raise InfeasibleSpecError(
            f"min_couplings={spec.min_couplings} needs more distinct partners "
            f"than n={n} provides (max {2 * (n - 1)})"
        )

    rng = np.random.default_rng(spec.seed)
    n_target = int(np.ceil(n * spec.min_couplings / 2.0))
    targets = _draw_targets(rng, spec, n_target)
    entries = A.entries
    candidate_pairs = spec.effective_candidate_pairs(d)

    used: set[tuple[int, int, int]] = set()
    rows_i: list[int] = []
    rows_j: list[int] = []
    rows_s: list[int] = []

    def add_row(key: tuple[int, int, int]):
        used.add(key)
        rows_i.append(key[0])
        rows_j.append(key[1])
        rows_s.append(key[2])

    small_pool = n * (n - 1) <= 4 * candidate_pairs
    if small_pool:
        # Few enough pairs to just enumerate them once.
        ii, jj = np.triu_indices(n, k=1)
        all_i = np.concatenate([ii, ii])
        all_j = np.concatenate([jj, jj])
        all_s = np.concatenate([np.ones_like(ii), -np.ones_like(ii)])
        all_norms = np.linalg.norm(
            entries[all_i] + all_s[:, None] * entries[all_j], axis=1
        )

    for t in targets:
        if small_pool:
            order = np.argsort(np.abs(all_norms - t), kind="stable")
            key = None
            for idx in order:
                cand = (int(all_i[idx]), int(all_j[idx]), int(all_s[idx]))
                if cand not in used:
                    key = cand
                    break
            if key is None:
                break  # pool exhausted; coverage repair raises if short
            add_row(key)
            continue

        ci = rng.integers(0, n, size=candidate_pairs)
        cj = rng.integers(0, n, size=candidate_pairs)
        valid = ci != cj
        ci, cj = ci[valid], cj[valid]
        lo, hi = np.minimum(ci, cj), np.maximum(ci, cj)
        norms_plus = np.linalg.norm(entries[lo] + entries[hi], axis=1)
        norms_minus = np.linalg.norm(entries[lo] - entries[hi], axis=1)
        cand_norms = np.concatenate([norms_plus, norms_minus])
        cand_sign = np.concatenate([np.ones(lo.size), -np.ones(lo.size)])
        cand_lo = np.concatenate([lo, lo])
        cand_hi = np.concatenate([hi, hi])
        order = np.argsort(np.abs(cand_norms - t), kind="stable")
        for idx in order:
            cand = (int(cand_lo[idx]), int(cand_hi[idx]), int(cand_sign[idx]))
            if cand not in used:
                add_row(cand)
                break
        # If every sampled candidate was already used (vanishingly rare for
        # large n), the draw is skipped; coverage repair fills the gap.

    # Coverage repair: pair under-covered elements with their
    # nearest-base-phase partners.
    counts = np.bincount(np.array(rows_i + rows_j, dtype=np.int64), minlength=n)
    for idx in range(n):
        if counts[idx] >= spec.min_couplings:
            continue
        diffs_plus = np.linalg.norm(entries + entries[idx], axis=1)
        diffs_minus = np.linalg.norm(entries - entries[idx], axis=1)
        part_norms = np.concatenate([diffs_plus, diffs_minus])
        part_sign = np.concatenate([np.ones(n), -np.ones(n)])
        partners = np.concatenate([np.arange(n), np.arange(n)])
        keep = partners != idx
        part_norms, part_sign, partners = (
            part_norms[keep],
            part_sign[keep],
            partners[keep],
        )
        for k in np.argsort(part_norms, kind="stable"):
            if counts[idx] >= spec.min_couplings:
                break
            key = _canonical(idx, int(partners[k]), int(part_sign[k]))
            if key in used:
                continue
            add_row(key)
            counts[key[0]] += 1
            counts[key[1]] += 1
        if counts[idx] < spec.min_couplings:
            raise InfeasibleSpecError(
                f"cannot reach min_couplings={spec.min_couplings} for element "
                f"{idx} without duplicate rows (n={n})"
            )

    return CouplingMatrix(
        np.array(rows_i, dtype=np.int64),
        np.array(rows_j, dtype=np.int64),
        np.array(rows_s, dtype=np.int64),
        n,
    )
