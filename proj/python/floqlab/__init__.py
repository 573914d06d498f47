"""Quasiperiodically driven qubit laboratory: python bindings for the C++ core."""

from floqlab._core import (
    BlochState,
    ChernEstimate,
    DriveParams,
    ExpDecayFit,
    FloqlabError,
    LinearFit,
    McChernResult,
    Trajectory,
    WorkRecord,
    __version__,
    berry_curvature,
    bhz_bands,
    bhz_chern,
    chern_from_work,
    energy_balance,
    evolve,
    fidelity,
    field_at,
    fit_exp_decay,
    floquet_spectrum,
    gaussian_measure,
    instantaneous_phases,
    mc_chern,
    perturb_state,
    project_bloch,
    purity,
    rotate_frame,
    sample_tomography,
    virtual_z_phase,
    work_series,
    zero_field_bands,
)

__all__ = [
    "BlochState",
    "ChernEstimate",
    "DriveParams",
    "ExpDecayFit",
    "FloqlabError",
    "LinearFit",
    "McChernResult",
    "Trajectory",
    "WorkRecord",
    "__version__",
    "berry_curvature",
    "bhz_bands",
    "bhz_chern",
    "chern_from_work",
    "energy_balance",
    "evolve",
    "fidelity",
    "field_at",
    "fit_exp_decay",
    "floquet_spectrum",
    "gaussian_measure",
    "instantaneous_phases",
    "mc_chern",
    "perturb_state",
    "project_bloch",
    "purity",
    "rotate_frame",
    "sample_tomography",
    "virtual_z_phase",
    "work_series",
    "zero_field_bands",
]
