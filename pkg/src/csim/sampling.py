"""Value samplers for experiments: uniform draws from a radius-B ball or
from its surface. The ball is the default reading of "sampled uniformly
from a hypersphere with radius 5" (a pure surface would collapse to two
points for 1-D values)."""

from __future__ import annotations

import numpy as np

from .fhrr import _rng_from


def sample_ball(seed, d: int, radius: float, size: int | None = None):
    """Uniform draws from the solid d-ball of the given radius.

    Returns a (d,) vector, or (size, d) when size is given.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if not radius > 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    rng = _rng_from(seed)
    count = 1 if size is None else int(size)
    direction = rng.normal(size=(count, d))
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    r = radius * rng.uniform(size=(count, 1)) ** (1.0 / d)
    out = direction / norms * r
    return out[0] if size is None else out


def sample_surface(seed, d: int, radius: float, size: int | None = None):
    """Uniform draws from the (d-1)-sphere of the given radius."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if not radius > 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    rng = _rng_from(seed)
    count = 1 if size is None else int(size)
    direction = rng.normal(size=(count, d))
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    out = radius * direction / norms
    return out[0] if size is None else out
