//! Fluxonium–resonator coupled system: Hamiltonian, dressed-state labels,
//! dispersive shift, detunings, landscapes and anticrossings.

mod anticrossing;
mod dispersive;
mod dressed;
mod hamiltonian;
mod landscape;

pub use anticrossing::{find_anticrossing, find_anticrossing_with, find_detuning_zero, Anticrossing};
pub use dispersive::{
    dispersive_shift, dressed_point, transition_detuning, CoupledSystem, DirectSource, DressedPoint, PointSource,
    PHOTON_LABELS,
};
pub use dressed::{assign_dressed_levels, DressedLevels, RESONANT_QUALITY, WARN_QUALITY};
pub use hamiltonian::{
    build_coupled_hamiltonian, coupled_hamiltonian, CouplingMode, QubitBasis, ResonatorParams, Truncation,
};
pub use landscape::{
    chi_curve, landscape, Axis, CellStatus, ChiCurve, LandscapeGrid, PointGrid, ValueKind, CHI_CLAMP_MHZ,
    DEFAULT_TRANSITIONS, DETUNING_CLAMP_GHZ,
};
