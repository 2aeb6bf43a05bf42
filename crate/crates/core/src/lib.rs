//! Fluxonium readout and gate simulation: spectra, dispersive shifts,
//! Langevin readout dynamics, DRAG gates and quasi-static flux noise.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coupled;
pub mod error;
pub mod gate;
pub mod linalg;
pub mod noise;
pub mod optim;
pub mod qubit;
pub mod readout;
pub mod real;
pub mod units;

pub use error::{Error, Result};
pub use real::{Cplx, Real};

/// `f64` instantiations of the main generic types.
pub mod f64 {
    use crate::{coupled, gate, qubit, readout};

    pub type EnergyParams = qubit::EnergyParams<f64>;
    pub type FluxBias = qubit::FluxBias<f64>;
    pub type FluxoniumModel = qubit::FluxoniumModel<f64>;
    pub type Spectrum = qubit::Spectrum<f64>;
    pub type ResonatorParams = coupled::ResonatorParams<f64>;
    pub type CoupledSystem = coupled::CoupledSystem<f64>;
    pub type DressedPoint = coupled::DressedPoint<f64>;
    pub type DirectSource = coupled::DirectSource<f64>;
    pub type Anticrossing = coupled::Anticrossing<f64>;
    pub type LandscapeGrid = coupled::LandscapeGrid<f64>;
    pub type ChiCurve = coupled::ChiCurve<f64>;
    pub type ReadoutConfig = readout::ReadoutConfig<f64>;
    pub type ReadoutTrajectory = readout::ReadoutTrajectory<f64>;
    pub type FluxRamp = readout::FluxRamp<f64>;
    pub type ChiProfile = readout::ChiProfile<f64>;
    pub type DemodPhase = readout::DemodPhase<f64>;
    pub type PulseParams = gate::PulseParams<f64>;
    pub type GateOptions = gate::GateOptions<f64>;
    pub type GateDevice = gate::GateDevice<f64>;
    pub type GateResult = gate::GateResult<f64>;
    pub type OptimizerSettings = gate::OptimizerSettings<f64>;
    pub type OptimizedPulse = gate::OptimizedPulse<f64>;
}

pub use self::f64::*;
