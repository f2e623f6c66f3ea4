"""Kerr-modulated coherent bus modes and the weak nonlinear parity gate."""

__version__ = "0.1.0"

from .analytic import (
    BusParams,
    MomentSet,
    central_stats,
    lambda_star,
    mean_x,
    raw_moment,
    variance_triplet_approx,
)
from .fock import (
    Distribution,
    FockVector,
    QuadratureGrid,
    apply_linear_phase,
    apply_spm,
    coherent_fock,
    marginal_distribution,
    overlap,
    position_wavefunction,
    quadrature_moment,
    wigner_numeric,
)
from .gate import (
    BranchState,
    CorrectivePhaseUndefined,
    GateParams,
    GateState,
    ResolutionReport,
    SqueezeParams,
    breakeven_angle,
    corrective_phase,
    gate_evolve,
    minimal_rescue_zeta,
    parity_distributions,
    resolution_stats,
    rotated_squeezed_variance,
    squeezed_resolution,
)
from .wigner import (
    Jet2,
    SeriesControl,
    SeriesConvergenceError,
    apply_U_pair,
    gen_G,
    gen_K,
    gen_L,
    kernel_K,
    kernel_L,
    marginal_series,
    wigner_series,
)

__all__ = [
    "__version__",
    "BusParams",
    "MomentSet",
    "central_stats",
    "lambda_star",
    "mean_x",
    "raw_moment",
    "variance_triplet_approx",
    "Distribution",
    "FockVector",
    "QuadratureGrid",
    "apply_linear_phase",
    "apply_spm",
    "coherent_fock",
    "marginal_distribution",
    "overlap",
    "position_wavefunction",
    "quadrature_moment",
    "wigner_numeric",
    "BranchState",
    "CorrectivePhaseUndefined",
    "GateParams",
    "GateState",
    "ResolutionReport",
    "SqueezeParams",
    "breakeven_angle",
    "corrective_phase",
    "gate_evolve",
    "minimal_rescue_zeta",
    "parity_distributions",
    "resolution_stats",
    "rotated_squeezed_variance",
    "squeezed_resolution",
    "Jet2",
    "SeriesControl",
    "SeriesConvergenceError",
    "apply_U_pair",
    "gen_G",
    "gen_K",
    "gen_L",
    "kernel_K",
    "kernel_L",
    "marginal_series",
    "wigner_series",
]
