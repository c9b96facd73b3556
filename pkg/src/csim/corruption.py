"""Noise models for SSPs: component-space Gaussian noise, von Mises
phase noise, and the interference noise created by bundling and querying.

Gaussian noise perturbs the real and imaginary parts of each element and
reprojects onto the unitary manifold; this is the corruption the method
comparison experiments use. Von Mises noise perturbs phases directly and
matches the circular-statistics reading of the decoding objective.
Bundle noise is not additive at all: it is the residue left by the other
items when a normalized role-filler bundle is queried.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .fhrr import (
    SSPVector,
    ZeroComponentError,
    bind,
    bundle,
    normalize,
    random_unitary,
    unbind,
    wrap_phase,
    _rng_from,
)

NORMALIZE_POLICIES = ("at_end", "per_add")


@dataclass(frozen=True)
class ComponentGaussianNoise:
    """Additive N(0, sigma^2) on each real and imaginary part."""

    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class VonMisesPhaseNoise:
    """Additive von Mises(0, kappa) draws on each phase."""

    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")


@dataclass(frozen=True)
class BundleNoise:
    """Interference from querying a normalized bundle of this many items."""

    items: int
    normalize_policy: str = "at_end"

    def __post_init__(self):
        if self.items < 1:
            raise ValueError(f"items must be >= 1, got {self.items}")
        if self.normalize_policy not in NORMALIZE_POLICIES:
            raise ValueError(
                f"unknown normalize policy {self.normalize_policy!r}; "
                f"expected one of {NORMALIZE_POLICIES}"
            )


NoiseModel = Union[ComponentGaussianNoise, VonMisesPhaseNoise, BundleNoise]


def corrupt(u: SSPVector, model: NoiseModel, seed=0) -> SSPVector:
    """Apply a noise model to an SSP. Pure given (u, model, seed).

    Component Gaussian noise lands back on the unitary manifold by
    renormalizing each element; a component driven to (near-)zero raises
    ZeroComponentError, which is astronomically rare for sigma <= 1.
    Bundle noise embeds u as one filler among `items` random role-filler
    pairs and returns the query result for u's role.
    """
    rng = _rng_from(seed)
    if isinstance(model, ComponentGaussianNoise):
        z = u.to_complex()
        z = z + rng.normal(0.0, model.sigma, size=u.n) + 1j * rng.normal(
            0.0, model.sigma, size=u.n
        )
        moduli = np.abs(z)
        if np.any(moduli < 1e-12):
            k = int(np.argmin(moduli))
            raise ZeroComponentError(
                f"noise drove component {k} to modulus {moduli[k]:.3e}"
            )
        return SSPVector(np.angle(z))
    if isinstance(model, VonMisesPhaseNoise):
        return SSPVector(wrap_phase(u.phases + rng.vonmises(0.0, model.kappa, size=u.n)))
    if isinstance(model, BundleNoise):
        payloads = [(random_unitary(u.n, rng), u)]
        for _ in range(model.items - 1):
            payloads.append((random_unitary(u.n, rng), random_unitary(u.n, rng)))
        return bundle_query(payloads, 0, model.normalize_policy)
    raise TypeError(f"unknown noise model: {model!r}")


def bundle_query(
    payloads: Sequence[tuple[SSPVector, SSPVector]],
    query_index: int,
    normalize_policy: str = "at_end",
) -> SSPVector:
    """Build a normalized role-filler bundle and query one filler back.

    Args:
        payloads: (role, filler) pairs; all vectors share one dimension.
        query_index: Which payload's filler to recover.
        normalize_policy: "at_end" normalizes once after summing all
            items; "per_add" renormalizes after every addition, which
            dilutes early items.

    Returns:
        The corrupted filler: normalize(sum role (x) filler) (/) role_q.

    Raises:
        ZeroComponentError: If normalization hits a cancelled component.
        ValueError: On empty payloads, bad index, or unknown policy.
    """
    if len(payloads) == 0:
        raise ValueError("bundle_query requires at least one payload")
    if not 0 <= query_index < len(payloads):
        raise ValueError(f"query_index {query_index} out of range")
    if normalize_policy not in NORMALIZE_POLICIES:
        raise ValueError(
            f"unknown normalize policy {normalize_policy!r}; "
            f"expected one of {NORMALIZE_POLICIES}"
        )
    bound = [bind(role, filler) for role, filler in payloads]
    if normalize_policy == "at_end":
        memory = normalize(bundle(bound))
    else:
        memory = bound[0]
        for item in bound[1:]:
            memory = normalize(bundle([memory, item]))
    return unbind(memory, payloads[query_index][0])
