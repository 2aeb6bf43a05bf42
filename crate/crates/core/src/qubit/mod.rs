//! Bare fluxonium: harmonic-oscillator operator algebra, Hamiltonian,
//! spectrum and charge matrix elements.

mod fluxonium;
mod ho;

pub use fluxonium::{
    anharmonicity, build_fluxonium_hamiltonian, charge_matrix_element, fluxonium_spectrum, qubit_frequency,
    EnergyParams, FluxBias, FluxoniumModel, Spectrum, SpectrumRecord, DEFAULT_FLUXONIUM_DIM,
};
pub use ho::{build_ho_operators, parity_operator, HoBasis, HoOperators};
