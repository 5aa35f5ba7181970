"""One-dimensional Casimir forces between partially reflecting mirrors.

The package composes 2x2 scattering matrices of individual mirrors into a
cavity, extracts the distance-dependent part of the vacuum energy from the
cavity determinant, and evaluates energy and force by quadrature on the
imaginary wavenumber axis, with series and finite-box mode-sum routes as
independent cross-checks.
"""

__version__ = "0.1.0"

from .cavity import (
    CavityConfig,
    cavity_det_s,
    cavity_det_s_factorized,
    cavity_smatrix,
    compose_adjacent,
    free_propagation,
    round_trip,
    round_trip_expansion,
)
from .engine import (
    EnergyResult,
    ForceResult,
    QuadratureSpec,
    casimir_energy,
    casimir_energy_real_axis,
    casimir_force,
    casimir_force_series,
    force_from_energy_fd,
    ideal_force_3d,
    perfect_mirror_force,
)
from .errors import (
    CasimirError,
    CavityResonance,
    CutoffTooCoarse,
    DegenerateConversion,
    EvaluationDomain,
    InvalidParameter,
    NonCausalModel,
    NonUnitaryInput,
    PoleEncountered,
    ToleranceNotMet,
)
from .mirrors import (
    ScattererModel,
    constant_reflectivity,
    delta_scatterer,
    evaluate,
    lc_shunt_scatterer,
    parse_model_spec,
    perfect_mirror,
    rect_barrier_scatterer,
)
from .modes import (
    BoxSpec,
    eigen_branches,
    energy_difference_oracle,
    mode_sum_energy_shift,
    mode_wavenumbers,
    wavenumber_shift_total,
)
from .smatrix import (
    ComplexMat2,
    ScatteringMatrix,
    TransferMatrix,
    det_s,
    mat2_mul,
    s_identity,
    s_to_transfer,
    transfer_to_s,
    unitarity_residual,
)

__all__ = [
    "BoxSpec",
    "CasimirError",
    "CavityConfig",
    "CavityResonance",
    "ComplexMat2",
    "CutoffTooCoarse",
    "DegenerateConversion",
    "EnergyResult",
    "EvaluationDomain",
    "ForceResult",
    "InvalidParameter",
    "NonCausalModel",
    "NonUnitaryInput",
    "PoleEncountered",
    "QuadratureSpec",
    "ScattererModel",
    "ScatteringMatrix",
    "ToleranceNotMet",
    "TransferMatrix",
    "casimir_energy",
    "casimir_energy_real_axis",
    "casimir_force",
    "casimir_force_series",
    "cavity_det_s",
    "cavity_det_s_factorized",
    "cavity_smatrix",
    "compose_adjacent",
    "constant_reflectivity",
    "delta_scatterer",
    "det_s",
    "eigen_branches",
    "energy_difference_oracle",
    "evaluate",
    "force_from_energy_fd",
    "free_propagation",
    "ideal_force_3d",
    "lc_shunt_scatterer",
    "mat2_mul",
    "mode_sum_energy_shift",
    "mode_wavenumbers",
    "parse_model_spec",
    "perfect_mirror",
    "perfect_mirror_force",
    "rect_barrier_scatterer",
    "round_trip",
    "round_trip_expansion",
    "s_identity",
    "s_to_transfer",
    "transfer_to_s",
    "unitarity_residual",
    "wavenumber_shift_total",
]
