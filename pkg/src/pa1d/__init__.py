"""Recover the initial state of a 1D wave equation from two-point boundary traces.

Waves from compactly supported initial data on (-1, 1) propagate into an
artificially padded interval (-R, R), R = T + 1, with reflecting ends;
recording u at x = +-1 for one transit suffices to recover the initial
displacement by a cosine analysis of the reflected (extended) trace,
after dropping the structurally silent modes and rescaling.
"""

from .baselines import FdConfig, LsqReport, backward_fd, default_fd_config, lsq_fit, lsq_reconstruct
from .errors import (
    ConditioningError,
    ConfigurationError,
    DataError,
    NumericalError,
    Pa1dError,
    ResolutionError,
)
from .forward import (
    Field,
    Profile,
    boundary_traces,
    dalembert_eval,
    profile_by_name,
    simulate_traces,
    smooth_bump,
    solve_forward,
    step_profile,
    tabulated_profile,
)
from .harness import (
    ExperimentConfig,
    PipelineResult,
    SweepRow,
    l_inf,
    reconstruct_trace,
    rel_l2,
    run_pipeline,
    run_sweep,
    save_bytes,
    write_recon_csv,
    write_report_json,
    write_sweep_csv,
)
from .inverse import (
    ModeSet,
    Reconstruction,
    assemble_extended_trace,
    correction_factor,
    denominator,
    reconstruct,
    recover_coefficients,
    skipped_indices,
)
from .observation import (
    BoundaryTrace,
    NoiseSpec,
    add_noise,
    load_trace,
    noise_draws,
    read_trace,
    save_trace,
    write_trace,
)
from .spectral import (
    CoefficientVector,
    GridFunction,
    PaddingConfig,
    analyze,
    basis_eval,
    cosine_coefficient,
    eigenvalue,
    simpson_weights,
    synthesize,
)

__version__ = "0.1.0"
