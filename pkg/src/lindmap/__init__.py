"""Positive maps from Lindblad dissipator structures, with three-qubit GME detection."""
from .errors import (
    AssignmentNotFound,
    DimensionMismatch,
    InvalidPartition,
    LindmapError,
    NoConvergence,
    NonHermitianInput,
    NoSignChange,
    NotNormalized,
    ParameterOutOfRange,
    ParseError,
    UnknownFamily,
)
from .families import (
    FAMILIES,
    INDEXED_GELLMANN,
    MapFamily,
    choi_map_F,
    gellmann,
    gellmann_assignment_oracle,
    get_family,
    lambda_gamma,
    phi2_alpha,
    phi_alpha,
    phiC_beta,
)
from .gme import (
    DetectionReport,
    LiftedMap,
    Verdict,
    default_c,
    detect_gme,
    gamma_detection_boundary,
    lift,
    n_gme,
    noise_threshold,
    witness,
    witness_value,
)
from .linalg import Spectrum, eig_hermitian, is_psd, kron, partial_transpose, trace_norm
from .states import DensityMatrix, ghz_state, noisy_mix, schmidt_state, w_state
from .superop import (
    DissipatorTerm,
    SuperOp,
    apply,
    choi,
    compose_affine,
    dissipator,
    is_completely_positive,
    min_output_eigenvalue_over_pure,
    principal_minors_positive,
    transposition,
)

__version__ = "0.1.0"
