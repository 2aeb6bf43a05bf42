//! Quasi-static flux-noise Monte Carlo: one constant offset per draw.

mod curve;
mod gates;
mod readout;
mod sampling;

pub use curve::McCurve;
pub use gates::noisy_gate_error;
pub use readout::{noise_profile_range, noisy_readout_snr, NoisyReadout};
pub use sampling::{sample_flux_offsets, standard_normal, NoiseSpec, DEFAULT_DRAWS, DEFAULT_SEED};
