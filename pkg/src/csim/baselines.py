"""Comparison decoders: exhaustive grid search and a resonator network.

Grid search is the similarity oracle over a finite lattice: slow but
exact on its grid. The resonator network factors a multi-dimensional SSP
by alternately unbinding all other dimensions' estimates, projecting the
remainder onto that dimension's codebook with ordinary-least-squares
weights, and renormalizing onto the unitary manifold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .fhrr import EncodingMatrix, SSPVector, wrap_phase


@dataclass(frozen=True)
class GridSpec:
    """Per-dimension [lo, hi] bounds and a common lattice spacing."""

    bounds: tuple[tuple[float, float], ...]
    spacing: float = 0.1

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) < 1:
            raise ValueError("bounds must cover at least one dimension")
        for lo, hi in bounds:
            if not lo < hi:
                raise ValueError(f"need lo < hi per dimension, got [{lo}, {hi}]")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be > 0, got {self.spacing}")
        object.__setattr__(self, "bounds", bounds)

    @property
    def d(self) -> int:
        return len(self.bounds)

    def axis(self, k: int) -> NDArray[np.float64]:
        """Lattice points along dimension k (endpoints included)."""
        lo, hi = self.bounds[k]
        count = int(np.floor((hi - lo) / self.spacing + 1e-9)) + 1
        return lo + self.spacing * np.arange(count)


def symmetric_grid(d: int, bound: float, spacing: float = 0.1) -> GridSpec:
    """[-bound, bound]^d lattice, the usual search region."""
    return GridSpec(tuple((-bound, bound) for _ in range(d)), spacing)


def grid_points(spec: GridSpec) -> NDArray[np.float64]:
    """All lattice points, lexicographically ordered, as a (G, d) array."""
    axes = [spec.axis(k) for k in range(spec.d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


class GridSearcher:
    """Repeated-search helper that reuses the clean-SSP trigonometric tables.

    Tables are held in memory when they fit under cache_elements entries
    (per table); larger grids are recomputed chunk by chunk per search.
    """

    def __init__(
        self,
        A: EncodingMatrix,
        spec: GridSpec,
        chunk_size: int = 8192,
        cache_elements: int = 40_000_000,
    ):
        if spec.d != A.d:
            raise ValueError(f"grid d={spec.d} does not match matrix d={A.d}")
        self.A = A
        self.spec = spec
        self.points = grid_points(spec)
        self.chunk_size = int(chunk_size)
        self._cos = None
        self._sin = None
        if A.n * self.points.shape[0] <= cache_elements:
            theta = A.entries @ self.points.T
            self._cos = np.cos(theta)
            self._sin = np.sin(theta)

    def values(self, u: SSPVector) -> NDArray[np.float64]:
        """Real similarity of u against every lattice SSP, in lattice order."""
        if u.n != self.A.n:
            raise ValueError(f"dimension mismatch: {u.n} vs {self.A.n}")
        cu = np.cos(u.phases)
        su = np.sin(u.phases)
        n = self.A.n
        if self._cos is not None:
            return (cu @ self._cos + su @ self._sin) / n
        out = np.empty(self.points.shape[0])
        for start in range(0, self.points.shape[0], self.chunk_size):
            stop = min(start + self.chunk_size, self.points.shape[0])
            theta = self.A.entries @ self.points[start:stop].T
            out[start:stop] = (cu @ np.cos(theta) + su @ np.sin(theta)) / n
        return out

    def search(self, u: SSPVector) -> NDArray[np.float64]:
        """Lattice point with the highest real similarity to u.

        Ties resolve to the lexicographically smallest point (argmax keeps
        the first occurrence and the lattice is lexicographically ordered).
        """
        return self.points[int(np.argmax(self.values(u)))].copy()


def grid_search(A: EncodingMatrix, u: SSPVector, spec: GridSpec) -> NDArray[np.float64]:
    """One-shot exhaustive similarity maximization over the lattice."""
    return GridSearcher(A, spec).search(u)


@dataclass(frozen=True)
class ResonatorResult:
    """Factor estimates, their grid-decoded values, and run diagnostics."""

    estimates: tuple[SSPVector, ...]
    x_hat: NDArray[np.float64]
    converged: bool
    iterations: int


def _unit(z: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Tolerant renormalization: zero components become phase 0."""
    moduli = np.abs(z)
    safe = np.where(moduli < 1e-12, 1.0, moduli)
    out = z / safe
    out[moduli < 1e-12] = 1.0 + 0.0j
    return out


class ResonatorDecoder:
    """Resonator network with OLS codebook weights, reusable across queries.

    Each dimension k gets a codebook of 1-D SSP columns e^{i A^(k) x} for
    x on the lattice, and the OLS projector onto that codebook's column
    span (applied as codebook @ pinv(codebook) @ vector).
    """

    def __init__(
        self,
        A: EncodingMatrix,
        spec: GridSpec,
        max_iters: int = 100,
        tol: float = 1e-6,
    ):
        if spec.d != A.d:
            raise ValueError(f"grid d={spec.d} does not match matrix d={A.d}")
        if max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        self.A = A
        self.spec = spec
        self.max_iters = max_iters
        self.tol = tol
        self.axes = [spec.axis(k) for k in range(spec.d)]
        self.codebooks = [
            np.exp(1j * np.outer(A.entries[:, k], self.axes[k]))
            for k in range(spec.d)
        ]
        self.pinvs = [np.linalg.pinv(book) for book in self.codebooks]

    def decode(self, u: SSPVector, init=None) -> ResonatorResult:
        """Iterate factor cleanup until estimates stop moving.

        Args:
            u: Composite SSP to factor.
            init: Optional per-dimension starting estimates; the default
                is each codebook's normalized column superposition.

        Non-convergence is not an error: the last estimates are returned
        with converged=False.
        """
        if u.n != self.A.n:
            raise ValueError(f"dimension mismatch: {u.n} vs {self.A.n}")
        d = self.A.d
        if init is None:
            est = [_unit(book.sum(axis=1)) for book in self.codebooks]
        else:
            if len(init) != d:
                raise ValueError(f"init needs {d} estimates, got {len(init)}")
            est = [e.to_complex() for e in init]

        uz = u.to_complex()
        converged = False
        iters = 0
        for _ in range(self.max_iters):
            iters += 1
            max_change = 0.0
            for k in range(d):
                others = np.ones_like(uz)
                for m in range(d):
                    if m != k:
                        others = others * est[m]
                remainder = uz * np.conj(others)
                projected = self.codebooks[k] @ (self.pinvs[k] @ remainder)
                new = _unit(projected)
                change = np.max(
                    np.abs(wrap_phase(np.angle(new) - np.angle(est[k])))
                )
                max_change = max(max_change, float(change))
                est[k] = new
            if max_change < self.tol:
                converged = True
                break

        x_hat = np.empty(d)
        for k in range(d):
            sims = np.real(np.conj(self.codebooks[k]).T @ est[k]) / self.A.n
            x_hat[k] = self.axes[k][int(np.argmax(sims))]
        estimates = tuple(SSPVector(np.angle(e)) for e in est)
        return ResonatorResult(estimates, x_hat, converged, iters)


def resonator_decode(
    A: EncodingMatrix,
    u: SSPVector,
    spec: GridSpec,
    max_iters: int = 100,
    init=None,
) -> ResonatorResult:
    """One-shot resonator factorization (builds codebooks, then decodes)."""
    return ResonatorDecoder(A, spec, max_iters=max_iters).decode(u, init=init)
