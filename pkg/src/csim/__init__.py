"""FHRR vector-symbolic algebra with fractional power encoding, plus
phase-coupled gradient-ascent decoding and cleanup of spatial semantic
pointers, benchmarked against grid search, a resonator network, and a
denoising network."""

from .baselines import (
    GridSearcher,
    GridSpec,
    ResonatorDecoder,
    ResonatorResult,
    grid_points,
    grid_search,
    resonator_decode,
    symmetric_grid,
)
from .corruption import (
    BundleNoise,
    ComponentGaussianNoise,
    NoiseModel,
    VonMisesPhaseNoise,
    bundle_query,
    corrupt,
)
from .coupling import (
    CouplingMatrix,
    CouplingSpec,
    InfeasibleSpecError,
    build_coupling_matrix,
    coupled_phases,
    default_uniform_scale,
)
from .decoder import (
    DecodeConfig,
    DecodeResult,
    NonFiniteObjectiveError,
    ascend_coupled,
    ascend_direct,
    cleanup_phases,
    coupled_step_size,
    decode,
    direct_step_size,
    grad_complex_direct,
    grad_coupled,
    grad_direct,
    objective_blended,
    objective_coupled,
    objective_direct,
)
from .denoiser import (
    Adam,
    MLPDenoiser,
    TrainingDivergedError,
    denoise,
    train_denoiser,
)
from .fhrr import (
    BundleVector,
    EncodingMatrix,
    SSPVector,
    ZeroComponentError,
    bind,
    bundle,
    encode,
    fractional_bind,
    identity_vector,
    make_encoding_matrix,
    normalize,
    random_unitary,
    similarity,
    unbind,
    wrap_phase,
)
from .harness import ExperimentSpec, TrialRecord, circular_std, run_experiment
from .sampling import sample_ball, sample_surface

__version__ = "0.1.0"

__all__ = [
    "Adam",
    "BundleNoise",
    "BundleVector",
    "ComponentGaussianNoise",
    "CouplingMatrix",
    "CouplingSpec",
    "DecodeConfig",
    "DecodeResult",
    "EncodingMatrix",
    "ExperimentSpec",
    "GridSearcher",
    "GridSpec",
    "InfeasibleSpecError",
    "MLPDenoiser",
    "NoiseModel",
    "NonFiniteObjectiveError",
    "ResonatorDecoder",
    "ResonatorResult",
    "SSPVector",
    "TrainingDivergedError",
    "TrialRecord",
    "VonMisesPhaseNoise",
    "ZeroComponentError",
    "ascend_coupled",
    "ascend_direct",
    "bind",
    "bundle",
    "bundle_query",
    "build_coupling_matrix",
    "circular_std",
    "cleanup_phases",
    "corrupt",
    "coupled_phases",
    "coupled_step_size",
    "decode",
    "default_uniform_scale",
    "denoise",
    "direct_step_size",
    "encode",
    "fractional_bind",
    "grad_complex_direct",
    "grad_coupled",
    "grad_direct",
    "grid_points",
    "grid_search",
    "identity_vector",
    "make_encoding_matrix",
    "normalize",
    "objective_blended",
    "objective_coupled",
    "objective_direct",
    "random_unitary",
    "resonator_decode",
    "run_experiment",
    "sample_ball",
    "sample_surface",
    "similarity",
    "symmetric_grid",
    "train_denoiser",
    "unbind",
    "wrap_phase",
]
