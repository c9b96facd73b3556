"""From-scratch denoising network for SSPs: one tanh hidden layer trained
with backpropagation and Adam on (corrupted, clean) pairs.

The network consumes the real and imaginary components of the SSP as 2n
separate inputs; the hidden layer has the same width. The decode task
regresses the encoded value directly; the cleanup task reconstructs the
clean components, which are reprojected onto the unitary manifold at
inference time.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .corruption import ComponentGaussianNoise, corrupt
from .fhrr import EncodingMatrix, SSPVector, encode, wrap_phase, _rng_from
from .sampling import sample_ball

TASKS = ("decode", "cleanup")


class TrainingDivergedError(RuntimeError):
    """Loss became non-finite during training."""


class Adam(object):
    """Adam over a dict of named parameter arrays, updated in place."""

    def __init__(self, params, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}

    def step(self, grads):
        self.t += 1
        b1t = 1.0 - self.beta1 ** self.t
        b2t = 1.0 - self.beta2 ** self.t
        for key, g in grads.items():
            self.m[key] = self.beta1 * self.m[key] + (1.0 - self.beta1) * g
            self.v[key] = self.beta2 * self.v[key] + (1.0 - self.beta2) * g * g
            m_hat = self.m[key] / b1t
            v_hat = self.v[key] / b2t
            self.params[key] -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def features(u: SSPVector) -> NDArray[np.float64]:
    """Separate real and imaginary components into a 2n feature vector."""
    return np.concatenate([np.cos(u.phases), np.sin(u.phases)])


class MLPDenoiser:
    """Single-hidden-layer network: 2n inputs, 2n tanh units by default,
    and either d linear outputs (decode) or 2n linear outputs (cleanup).
    """

    def __init__(self, n: int, task: str, d: int = 1, hidden: int | None = None,
                 seed=0, lr: float = 1e-3):
        if task not in TASKS:
            raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")
        if n < 1 or d < 1:
            raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
        self.n = n
        self.d = d
        self.task = task
        self.in_dim = 2 * n
        self.hidden = 2 * n if hidden is None else int(hidden)
        self.out_dim = d if task == "decode" else 2 * n
        rng = _rng_from(seed)
        lim1 = np.sqrt(6.0 / (self.in_dim + self.hidden))
        lim2 = np.sqrt(6.0 / (self.hidden + self.out_dim))
        self.params = {
            "W1": rng.uniform(-lim1, lim1, size=(self.in_dim, self.hidden)),
            "b1": np.zeros(self.hidden),
            "W2": rng.uniform(-lim2, lim2, size=(self.hidden, self.out_dim)),
            "b2": np.zeros(self.out_dim),
        }
        self.adam = Adam(self.params, lr=lr)
        self.epoch_losses: list[float] = []

    def forward(self, X: NDArray[np.float64]) -> NDArray[np.float64]:
        H = np.tanh(X @ self.params["W1"] + self.params["b1"])
        return H @ self.params["W2"] + self.params["b2"]

    def loss_and_grads(self, X, T):
        """Mean-squared-error loss and its parameter gradients for a batch."""
        p = self.params
        H = np.tanh(X @ p["W1"] + p["b1"])
        Y = H @ p["W2"] + p["b2"]
        diff = Y - T
        loss = float(np.mean(diff * diff))
        dY = 2.0 * diff / diff.size
        dW2 = H.T @ dY
        db2 = dY.sum(axis=0)
        dH = dY @ p["W2"].T
        dZ1 = dH * (1.0 - H * H)
        dW1 = X.T @ dZ1
        db1 = dZ1.sum(axis=0)
        return loss, {"W1": dW1, "b1": db1, "W2": dW2, "b2": db2}


def make_training_set(A: EncodingMatrix, task: str, sigma: float,
                      n_samples: int, seed=0, bound: float = 5.0):
    """(features, targets) pairs: corrupted-SSP components in, value or
    clean components out."""
    rng = _rng_from(seed)
    values = sample_ball(rng, A.d, bound, size=n_samples)
    clean_phases = wrap_phase(values @ A.entries.T)
    z = np.exp(1j * clean_phases)
    if sigma > 0:
        z = z + rng.normal(0.0, sigma, size=z.shape) + 1j * rng.normal(
            0.0, sigma, size=z.shape
        )
    noisy_phases = np.angle(z)
    X = np.concatenate([np.cos(noisy_phases), np.sin(noisy_phases)], axis=1)
    if task == "decode":
        T = values
    else:
        T = np.concatenate([np.cos(clean_phases), np.sin(clean_phases)], axis=1)
    return X, T


def train_denoiser(
    A: EncodingMatrix,
    task: str,
    sigma: float,
    n_samples: int = 10000,
    epochs: int = 50,
    seed=0,
    lr: float = 1e-3,
    batch_size: int = 64,
    bound: float = 5.0,
    hidden: int | None = None,
) -> MLPDenoiser:
    """Train a network on freshly generated (corrupted, clean) pairs.

    Deterministic for a fixed seed: the same seed drives data generation,
    weight initialization, and batch shuffling.

    Raises:
        TrainingDivergedError: If any batch loss is non-finite.
    """
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")
    if n_samples < 1:
        raise ValueError(f"need n_samples >= 1, got {n_samples}")
    if epochs < 1:
        raise ValueError(f"need epochs >= 1, got {epochs}")
    rng = _rng_from(seed)
    X, T = make_training_set(A, task, sigma, n_samples, seed=rng, bound=bound)
    net = MLPDenoiser(A.n, task, d=A.d, hidden=hidden, seed=rng, lr=lr)
    for epoch in range(epochs):
        order = rng.permutation(n_samples)
        total = 0.0
        for start in range(0, n_samples, batch_size):
            batch = order[start : start + batch_size]
            loss, grads = net.loss_and_grads(X[batch], T[batch])
            if not np.isfinite(loss):
                raise TrainingDivergedError(
                    f"non-finite loss at epoch {epoch}, sample offset {start} "
                    f"(task={task}, sigma={sigma}, lr={lr})"
                )
            net.adam.step(grads)
            total += loss * batch.size
        net.epoch_losses.append(total / n_samples)
    return net


def denoise(net: MLPDenoiser, u: SSPVector):
    """Forward pass on a single SSP.

    Returns the decoded d-vector for the decode task, or the cleaned
    SSPVector (components reprojected to unit modulus) for cleanup.
    """
    if u.n != net.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {net.n}")
    out = net.forward(features(u)[None, :])[0]
    if net.task == "decode":
        return out
    re, im = out[: net.n], out[net.n :]
    return SSPVector(np.arctan2(im, re))
