//! Dispersive readout: coherent-state Langevin dynamics, measurement signal,
//! SNR and assignment error.
//!
//! Convention: qubit state 0 has `σz = −1` and state 1 has `σz = +1`, so the
//! resonator is pulled by `χσz`.

mod field;
mod langevin;
mod pipeline;
mod profile;
mod signal;

pub use field::{drive_amplitude, input_field, qubit_phase_shift, static_intracavity_field, static_output_field};
pub use langevin::{integrate_langevin, output_field, TimeGrid};
pub use pipeline::{
    simulate_ramped_readout, simulate_readout, DemodPhase, ReadoutConfig, ReadoutTrajectory, DEFAULT_DT_NS,
};
pub use profile::{flux_ramp_profile, ChiProfile, FluxRamp, RampedChi, DEFAULT_CHI_CLAMP_MHZ, PROFILE_STEP};
pub use signal::{erfc, measurement_signal, optimal_theta, readout_error, snr_curve};
