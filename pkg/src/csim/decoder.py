"""Two-stage gradient-ascent decoding and cleanup of SSP phases.

The direct objective is the mean cosine of the residuals phi - A x; it
peaks exactly at the encoded value but undulates, so ascent from a cold
start usually lands in the wrong basin. The coupled objective replaces
raw phases with signed phase pairs whose combined base phases are small,
which stretches the basin across the whole working range. Decoding
ascends the coupled objective first, then switches to the direct
objective for the precise fix; blending weights between the two are
supported but the default schedule is the hard switch.

Gradients keep the 1/n and 1/n_c normalization of their objectives so
they match finite differences, and the default step size is the inverse
of the largest eigenvalue of the quadratic curvature bound
(A^T A / n or (CA)^T (CA) / n_c), which guarantees monotone ascent and
makes one default work across vector dimensions and coupling scales.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .coupling import CouplingMatrix
from .fhrr import EncodingMatrix, SSPVector, encode, similarity


class NonFiniteObjectiveError(ArithmeticError):
    """Objective or gradient became NaN/inf, which signals a bad step size."""


def _check_phi_x(A: EncodingMatrix, phi, x):
    phi = np.asarray(phi, dtype=np.float64)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if phi.shape != (A.n,):
        raise ValueError(f"phases have shape {phi.shape}, expected ({A.n},)")
    if x.shape != (A.d,):
        raise ValueError(f"value has shape {x.shape}, expected ({A.d},)")
    return phi, x


def objective_direct(A: EncodingMatrix, phi, x) -> float:
    """Mean cosine of the direct residuals: (1/n) sum cos(phi_i - A_i x)."""
    phi, x = _check_phi_x(A, phi, x)
    return float(np.mean(np.cos(phi - A.entries @ x)))


def grad_direct(A: EncodingMatrix, phi, x) -> NDArray[np.float64]:
    """Gradient of objective_direct: (1/n) sum A_i^T sin(phi_i - A_i x)."""
    phi, x = _check_phi_x(A, phi, x)
    return (A.entries.T @ np.sin(phi - A.entries @ x)) / A.n


def _coupled_parts(C: CouplingMatrix, A: EncodingMatrix, phi):
    phi = np.asarray(phi, dtype=np.float64)
    if phi.shape != (C.n,):
        raise ValueError(f"phases have shape {phi.shape}, expected ({C.n},)")
    delta_phi = phi[C.i] + C.s * phi[C.j]
    return delta_phi, C.coupled_base(A)


def objective_coupled(C: CouplingMatrix, A: EncodingMatrix, phi, x) -> float:
    """Mean cosine over couplings: (1/n_c) sum cos(C_k phi - C_k A x)."""
    delta_phi, CA = _coupled_parts(C, A, phi)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.shape != (A.d,):
        raise ValueError(f"value has shape {x.shape}, expected ({A.d},)")
    return float(np.mean(np.cos(delta_phi - CA @ x)))


def grad_coupled(C: CouplingMatrix, A: EncodingMatrix, phi, x) -> NDArray[np.float64]:
    """Gradient of objective_coupled: (1/n_c) sum (C_k A)^T sin(...)."""
    delta_phi, CA = _coupled_parts(C, A, phi)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.shape != (A.d,):
        raise ValueError(f"value has shape {x.shape}, expected ({A.d},)")
    return (CA.T @ np.sin(delta_phi - CA @ x)) / C.n_c


def objective_blended(
    C: CouplingMatrix, A: EncodingMatrix, phi, x, lam: float
) -> float:
    """lam * direct + (1 - lam) * coupled; the schedule only uses 0 and 1."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must be in [0, 1], got {lam}")
    return lam * objective_direct(A, phi, x) + (1.0 - lam) * objective_coupled(
        C, A, phi, x
    )


def grad_complex_direct(
    A: EncodingMatrix, u: SSPVector, v: SSPVector
) -> NDArray[np.float64]:
    """Direct-objective gradient computed in the frequency domain.

    Re(-(i/n) A^T (u (.) conj(v))) for unitary v with phases wrap(A x);
    equal to grad_direct(A, u.phases, x) to machine precision.
    """
    if u.n != A.n or v.n != A.n:
        raise ValueError(f"dimension mismatch: A n={A.n}, u n={u.n}, v n={v.n}")
    prod = u.to_complex() * np.conj(v.to_complex())
    return np.real(-1j * (A.entries.T @ prod)) / A.n


def _max_curvature(slopes: NDArray[np.float64]) -> float:
    """Largest eigenvalue of slopes^T slopes / rows: the ascent Lipschitz bound."""
    H = slopes.T @ slopes / slopes.shape[0]
    L = float(np.linalg.eigvalsh(H)[-1])
    if not (np.isfinite(L) and L > 0):
        raise ValueError("degenerate base phases: curvature bound is not positive")
    return L


def direct_step_size(A: EncodingMatrix) -> float:
    """Default stage-2 step: inverse curvature bound of the direct objective."""
    return 1.0 / _max_curvature(A.entries)


def coupled_step_size(C: CouplingMatrix, A: EncodingMatrix) -> float:
    """Default stage-1 step: inverse curvature bound of the coupled objective."""
    return 1.0 / _max_curvature(C.coupled_base(A))


@dataclass(frozen=True)
class DecodeConfig:
    """Optimizer schedule for the two-stage decode.

    Attributes:
        step_size: Fixed step for both stages, or None for the per-stage
            inverse-curvature default.
        max_iters_coupled: Stage-1 iteration cap.
        max_iters_direct: Stage-2 iteration cap.
        x_tolerance: Stop a stage once every element of the applied
            increment is below this.
        init_x: Starting value; None means the origin.
        momentum: Velocity carry-over in [0, 1); 0 is plain ascent.
    """

    step_size: float | None = None
    max_iters_coupled: int = 1000
    max_iters_direct: int = 1000
    x_tolerance: float = 0.01
    init_x: tuple[float, ...] | None = None
    momentum: float = 0.0

    def __post_init__(self):
        if self.step_size is not None and not self.step_size > 0:
            raise ValueError(f"step_size must be > 0, got {self.step_size}")
        if self.max_iters_coupled < 1 or self.max_iters_direct < 1:
            raise ValueError("iteration caps must be >= 1")
        if not self.x_tolerance > 0:
            raise ValueError(f"x_tolerance must be > 0, got {self.x_tolerance}")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError(f"momentum must be in [0, 1), got {self.momentum}")

    def start(self, d: int) -> NDArray[np.float64]:
        if self.init_x is None:
            return np.zeros(d)
        x0 = np.atleast_1d(np.asarray(self.init_x, dtype=np.float64))
        if x0.shape != (d,):
            raise ValueError(f"init_x has shape {x0.shape}, expected ({d},)")
        return x0.copy()


@dataclass(frozen=True)
class DecodeResult:
    """Decoded value, its re-encoded (cleaned) SSP, and run diagnostics."""

    x_hat: NDArray[np.float64]
    cleaned_ssp: SSPVector
    iters_coupled: int
    iters_direct: int
    converged: bool
    objective_trace: tuple[tuple[int, float], ...]
    final_similarity: float


def _ascend(
    grad_fn,
    objective_fn,
    x0: NDArray[np.float64],
    gamma: float,
    tol: float,
    max_iters: int,
    momentum: float,
    trace: list,
    trace_start: int,
    on_step=None,
):
    """Plain (optionally momentum) gradient ascent with increment stopping."""
    x = x0.copy()
    velocity = np.zeros_like(x)
    converged = False
    iters = 0
    for _ in range(max_iters):
        g = grad_fn(x)
        if not np.all(np.isfinite(g)):
            raise NonFiniteObjectiveError("gradient is not finite; reduce step size")
        velocity = momentum * velocity + gamma * g
        x = x + velocity
        iters += 1
        if on_step is not None:
            on_step(velocity)
        value = objective_fn(x)
        if not np.isfinite(value):
            raise NonFiniteObjectiveError("objective is not finite; reduce step size")
        trace.append((trace_start + iters, float(value)))
        if np.max(np.abs(velocity)) < tol:
            converged = True
            break
    return x, iters, converged


def ascend_coupled(
    C: CouplingMatrix,
    A: EncodingMatrix,
    phi,
    cfg: DecodeConfig = DecodeConfig(),
    x0=None,
):
    """Stage-1-only ascent on the coupled objective.

    Returns:
        (x, iterations, converged) after at most cfg.max_iters_coupled steps.
    """
    delta_phi, CA = _coupled_parts(C, A, phi)
    x0 = cfg.start(A.d) if x0 is None else np.atleast_1d(np.asarray(x0, float)).copy()
    gamma = cfg.step_size if cfg.step_size is not None else coupled_step_size(C, A)
    n_c = C.n_c
    return _ascend(
        lambda x: (CA.T @ np.sin(delta_phi - CA @ x)) / n_c,
        lambda x: float(np.mean(np.cos(delta_phi - CA @ x))),
        x0,
        gamma,
        cfg.x_tolerance,
        cfg.max_iters_coupled,
        cfg.momentum,
        [],
        0,
    )


def ascend_direct(
    A: EncodingMatrix,
    phi,
    cfg: DecodeConfig = DecodeConfig(),
    x0=None,
):
    """Direct-objective-only ascent (no coupling stage)."""
    phi = np.asarray(phi, dtype=np.float64)
    if phi.shape != (A.n,):
        raise ValueError(f"phases have shape {phi.shape}, expected ({A.n},)")
    x0 = cfg.start(A.d) if x0 is None else np.atleast_1d(np.asarray(x0, float)).copy()
    gamma = cfg.step_size if cfg.step_size is not None else direct_step_size(A)
    entries = A.entries
    n = A.n
    return _ascend(
        lambda x: (entries.T @ np.sin(phi - entries @ x)) / n,
        lambda x: float(np.mean(np.cos(phi - entries @ x))),
        x0,
        gamma,
        cfg.x_tolerance,
        cfg.max_iters_direct,
        cfg.momentum,
        [],
        0,
    )


def _decode_loop(
    A: EncodingMatrix,
    C: CouplingMatrix,
    u: SSPVector,
    cfg: DecodeConfig,
    on_step=None,
):
    if u.n != A.n or C.n != A.n:
        raise ValueError(
            f"dimension mismatch: A n={A.n}, u n={u.n}, couplings n={C.n}"
        )
    phi = u.phases
    delta_phi, CA = _coupled_parts(C, A, phi)
    entries = A.entries
    n, n_c = A.n, C.n_c

    def grad_c(x):
        return (CA.T @ np.sin(delta_phi - CA @ x)) / n_c

    def obj_c(x):
        return float(np.mean(np.cos(delta_phi - CA @ x)))

    def grad_d(x):
        return (entries.T @ np.sin(phi - entries @ x)) / n

    def obj_d(x):
        return float(np.mean(np.cos(phi - entries @ x)))

    x0 = cfg.start(A.d)
    gamma_c = cfg.step_size if cfg.step_size is not None else coupled_step_size(C, A)
    gamma_d = cfg.step_size if cfg.step_size is not None else direct_step_size(A)

    trace: list[tuple[int, float]] = [(0, obj_c(x0))]
    x1, iters_c, conv_c = _ascend(
        grad_c, obj_c, x0, gamma_c, cfg.x_tolerance, cfg.max_iters_coupled,
        cfg.momentum, trace, 0, on_step,
    )
    x2, iters_d, conv_d = _ascend(
        grad_d, obj_d, x1, gamma_d, cfg.x_tolerance, cfg.max_iters_direct,
        cfg.momentum, trace, iters_c, on_step,
    )
    return x2, iters_c, iters_d, conv_c and conv_d, trace


def decode(
    A: EncodingMatrix,
    C: CouplingMatrix,
    u: SSPVector,
    cfg: DecodeConfig = DecodeConfig(),
) -> DecodeResult:
    """Decode the value carried by a (possibly corrupted) SSP.

    Stage 1 ascends the coupled objective from cfg.init_x until every
    element of the increment drops below cfg.x_tolerance (or the cap);
    stage 2 continues on the direct objective under the same rule. The
    cleaned SSP is the decoded value re-encoded through A.

    Raises:
        NonFiniteObjectiveError: If the objective or gradient blows up.
    """
    x_hat, iters_c, iters_d, converged, trace = _decode_loop(A, C, u, cfg)
    cleaned = encode(A, x_hat)
    return DecodeResult(
        x_hat=x_hat,
        cleaned_ssp=cleaned,
        iters_coupled=iters_c,
        iters_direct=iters_d,
        converged=converged,
        objective_trace=tuple(trace),
        final_similarity=similarity(u, cleaned).real,
    )


def cleanup_phases(
    A: EncodingMatrix,
    C: CouplingMatrix,
    u: SSPVector,
    cfg: DecodeConfig = DecodeConfig(),
) -> SSPVector:
    """Clean up an SSP by incrementing phases directly.

    Maintains theta starting from A @ init_x and applies A times every
    value-space increment, returning e^{i theta}. Agrees with re-encoding
    the decode() estimate under the identical schedule.
    """
    theta = A.entries @ cfg.start(A.d)

    def on_step(velocity):
        nonlocal theta
        theta = theta + A.entries @ velocity

    _decode_loop(A, C, u, cfg, on_step=on_step)
    return SSPVector(theta)
