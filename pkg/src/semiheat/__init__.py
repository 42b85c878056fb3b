"""Numerical laboratory for the semilinear heat equation u_t = Lap(u) + |u|^p
on model manifolds: evolve solutions, detect blow-up, and check the sharp
inequalities (minimum comparison, gradient bounds, decay and universal
envelopes, ball lower bounds, oscillation-decay triviality) with fitted
constants and explicit tolerances."""

from .cutoff import (
    CertificationResult,
    SmoothCutoff,
    SpaceTimeCutoff,
    build_liyau_psi,
    build_phi,
    default_power,
    export_cutoff_csv,
    verify_phi_inequality,
)
from .estimates import (
    EstimateParams,
    EstimateReport,
    ExponentRegimeError,
    ball_mask,
    check_decay,
    check_gradient_estimate,
    check_lower_bound_lemma,
    check_positivity_min_ode,
    check_triviality,
    check_universal,
    exponent_regime,
    lemma_admissibility_min,
    scheme_tolerance,
    talenti_residual,
)
from .evolve import (
    BlowupInfo,
    EvolveControls,
    SolverAbort,
    Trajectory,
    ancient_approximation,
    detect_blowup,
    evolve,
    export_trajectory,
    trajectory_from_samples,
)
from .experiment import (
    ConfigError,
    ExperimentConfig,
    RunReport,
    config_hash,
    emit_plot_data,
    load_config,
    resolve_out_dir,
    run_experiment,
    validate_config,
)
from .geometry import (
    CLOSED_KINDS,
    KINDS,
    DiscreteManifold,
    ScalarField,
    build_manifold,
    curvature_bound,
    gradient_norm,
    implicit_diffusion_solve,
    laplace_beltrami,
    laplacian_spectrum,
)
from .reaction_ode import (
    ReactionParams,
    ScalarTrajectory,
    blowup_time_from_min,
    integrate_scalar_ode,
    ode_lower_envelope,
    reaction_flow,
    trivial_ancient,
    validate_exponent,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupInfo",
    "CLOSED_KINDS",
    "CertificationResult",
    "ConfigError",
    "DiscreteManifold",
    "EstimateParams",
    "EstimateReport",
    "EvolveControls",
    "ExperimentConfig",
    "ExponentRegimeError",
    "KINDS",
    "ReactionParams",
    "RunReport",
    "ScalarField",
    "ScalarTrajectory",
    "SmoothCutoff",
    "SolverAbort",
    "SpaceTimeCutoff",
    "Trajectory",
    "ancient_approximation",
    "ball_mask",
    "blowup_time_from_min",
    "build_liyau_psi",
    "build_manifold",
    "build_phi",
    "check_decay",
    "check_gradient_estimate",
    "check_lower_bound_lemma",
    "check_positivity_min_ode",
    "check_triviality",
    "check_universal",
    "config_hash",
    "curvature_bound",
    "default_power",
    "detect_blowup",
    "emit_plot_data",
    "evolve",
    "exponent_regime",
    "export_cutoff_csv",
    "export_trajectory",
    "gradient_norm",
    "implicit_diffusion_solve",
    "integrate_scalar_ode",
    "laplace_beltrami",
    "laplacian_spectrum",
    "lemma_admissibility_min",
    "load_config",
    "ode_lower_envelope",
    "reaction_flow",
    "resolve_out_dir",
    "run_experiment",
    "scheme_tolerance",
    "talenti_residual",
    "trajectory_from_samples",
    "trivial_ancient",
    "validate_config",
    "validate_exponent",
    "verify_phi_inequality",
]
