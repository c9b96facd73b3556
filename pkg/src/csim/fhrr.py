"""Core FHRR algebra over unit-modulus complex hypervectors.

Vectors are stored as phase angles in (-pi, pi]; the complex form
e^{i*phases} is materialized only where it is actually needed (bundling,
similarity, component-space noise). Binding, unbinding, and fractional
binding are exact phase arithmetic, so chains of those operations do not
accumulate numerical drift.

All values are immutable after construction and safe to share across
threads; the only stateful objects are explicitly seeded RNGs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

TWO_PI = 2.0 * np.pi

# Moduli below this are treated as zero (undefined phase).
DEFAULT_MOD_FLOOR = 1e-12


class ZeroComponentError(ValueError):
    """A complex component has (near-)zero modulus, so its phase is undefined."""


def wrap_phase(theta) -> NDArray[np.float64]:
    """Wrap angles into the principal range (-pi, pi].

    Ties at -pi map to +pi, the single storage convention for every phase
    vector in this package.
    """
    theta = np.asarray(theta, dtype=np.float64)
    wrapped = np.pi - np.mod(np.pi - theta, TWO_PI)
    # np.mod can round to exactly 2*pi for tiny negative residues, which
    # would put the result on the excluded -pi endpoint; fold it back.
    return np.where(wrapped <= -np.pi, np.pi, wrapped)


def _as_1d_float(values, name: str) -> NDArray[np.float64]:
    arr = np.atleast_1d(np.asarray(values, dtype=np.float64))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True)
class SSPVector:
    """Unitary FHRR vector, stored as n phases in (-pi, pi].

    Phases are canonicalized by :func:`wrap_phase` on construction, so the
    represented complex vector e^{i*phases} is unit-modulus per element by
    construction.
    """

    phases: NDArray[np.float64]

    def __post_init__(self):
        phases = wrap_phase(_as_1d_float(self.phases, "phases"))
        phases.flags.writeable = False
        object.__setattr__(self, "phases", phases)

    @property
    def n(self) -> int:
        return self.phases.size

    def to_complex(self) -> NDArray[np.complex128]:
        """Materialize the unit-modulus complex form e^{i*phases}."""
        return np.exp(1j * self.phases)


@dataclass(frozen=True)
class BundleVector:
    """Unnormalized complex superposition of FHRR vectors.

    Bundles are transient: they exist between :func:`bundle` and
    :func:`normalize` and are generally not unitary.
    """

    components: NDArray[np.complex128]

    def __post_init__(self):
        comps = np.atleast_1d(np.asarray(self.components, dtype=np.complex128))
        if comps.ndim != 1 or comps.size < 1:
            raise ValueError("components must be a nonempty 1-D complex array")
        if not np.all(np.isfinite(comps)):
            raise ValueError("components must be finite")
        comps.flags.writeable = False
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return self.components.size


@dataclass(frozen=True)
class EncodingMatrix:
    """n x d matrix of base phases mapping continuous values to SSP phases.

    Row i holds the phase slopes of vector element i; column k holds the
    base phases used to encode value coordinate k.
    """

    entries: NDArray[np.float64]

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.ndim != 2:
            raise ValueError(f"entries must be 2-D, got shape {entries.shape}")
        if entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ValueError("entries must have n >= 1 and d >= 1")
        if not np.all(np.isfinite(entries)):
            raise ValueError("entries must be finite")
        entries = entries.copy()
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def d(self) -> int:
        return self.entries.shape[1]


def _rng_from(seed) -> np.random.Generator:
    """Accept an int seed, a SeedSequence, or a ready Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def make_encoding_matrix(n: int, d: int, seed=0) -> EncodingMatrix:
    """Sample an n x d base-phase matrix, i.i.d. uniform on (-pi, pi].

    Deterministic for a fixed integer seed.

    Raises:
        ValueError: If n < 1 or d < 1.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = _rng_from(seed)
    # uniform() covers [-pi, pi); negating flips it to the (-pi, pi] range.
    entries = -rng.uniform(-np.pi, np.pi, size=(n, d))
    return EncodingMatrix(entries)


def random_unitary(n: int, seed=0) -> SSPVector:
    """Draw a random unitary vector with phases uniform on (-pi, pi]."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    rng = _rng_from(seed)
    return SSPVector(-rng.uniform(-np.pi, np.pi, size=n))


def identity_vector(n: int) -> SSPVector:
    """The binding identity: all phases zero."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    return SSPVector(np.zeros(n))


def _check_same_n(u: SSPVector, v: SSPVector):
    if u.n != v.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {v.n}")


def encode(A: EncodingMatrix, x) -> SSPVector:
    """Encode a d-vector of reals as the SSP with phases wrap(A @ x).

    Args:
        A: Base-phase matrix.
        x: Value vector of length A.d (scalars are accepted for d=1).

    Returns:
        The unitary SSP e^{i A x}.

    Raises:
        ValueError: If x does not have length A.d.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.shape != (A.d,):
        raise ValueError(f"value has shape {x.shape}, expected ({A.d},)")
    return SSPVector(A.entries @ x)


def similarity(u: SSPVector, v: SSPVector) -> complex:
    """Normalized complex inner product (1/n) sum_k u_k * conj(v_k).

    Self-similarity is exactly 1. The real part lies in [-1, 1] and equals
    the mean cosine of the phase differences.
    """
    _check_same_n(u, v)
    return complex(np.mean(np.exp(1j * (u.phases - v.phases))))


def bind(u: SSPVector, v: SSPVector) -> SSPVector:
    """Bind by element-wise complex multiplication: phases add."""
    _check_same_n(u, v)
    return SSPVector(u.phases + v.phases)


def unbind(u: SSPVector, v: SSPVector) -> SSPVector:
    """Exact inverse of bind: phases subtract."""
    _check_same_n(u, v)
    return SSPVector(u.phases - v.phases)


def fractional_bind(u: SSPVector, m: float) -> SSPVector:
    """Bind u to itself a real number of times by scaling its phases.

    The principal phases of u are scaled by m and re-wrapped. Note that
    fractional_bind(encode(A, [1]), m) only equals encode(A, [m]) when no
    entry of A wraps, since scaling happens after wrapping.
    """
    if not np.isfinite(m):
        raise ValueError("exponent must be finite")
    return SSPVector(float(m) * u.phases)


def bundle(vs) -> BundleVector:
    """Superpose SSP vectors by element-wise complex addition.

    Args:
        vs: Nonempty sequence of SSPVector with equal dimension.

    Raises:
        ValueError: On an empty list or mismatched dimensions.
    """
    vs = list(vs)
    if not vs:
        raise ValueError("bundle() requires at least one vector")
    n = vs[0].n
    for v in vs[1:]:
        if v.n != n:
            raise ValueError(f"dimension mismatch: {v.n} vs {n}")
    total = np.zeros(n, dtype=np.complex128)
    for v in vs:
        total += v.to_complex()
    return BundleVector(total)


def normalize(b: BundleVector, mod_floor: float = DEFAULT_MOD_FLOOR) -> SSPVector:
    """Project a bundle back onto the unitary manifold, element by element.

    Args:
        b: Bundle to normalize.
        mod_floor: Smallest modulus still considered nonzero.

    Returns:
        SSPVector whose phases are the arguments of b's components.

    Raises:
        ZeroComponentError: If any component modulus falls below mod_floor
            (a degenerate bundle; the phase of a zero is undefined).
    """
    moduli = np.abs(b.components)
    if np.any(moduli < mod_floor):
        k = int(np.argmin(moduli))
        raise ZeroComponentError(
            f"component {k} has modulus {moduli[k]:.3e} < {mod_floor:.3e}"
        )
    return SSPVector(np.angle(b.components))
