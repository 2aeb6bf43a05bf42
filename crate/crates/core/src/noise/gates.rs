use rayon::prelude::*;

use super::curve::McCurve;
use super::sampling::{sample_flux_offsets, NoiseSpec};
use crate::coupled::{CouplingMode, ResonatorParams};
use crate::error::Result;
use crate::gate::{evaluate_gate, GateDevice, GateOptions, GateSpace, PhasePolicy, PulseParams};
use crate::qubit::{EnergyParams, FluxBias};

/// Gate error `1 − F` of fixed pulses with the device biased at
/// `flux + δ` for each draw; the axis is the gate time of each pulse.
#[allow(clippy::too_many_arguments)]
pub fn noisy_gate_error(
    params: EnergyParams<f64>,
    res: ResonatorParams<f64>,
    mode: CouplingMode,
    space: GateSpace,
    flux: f64,
    pulses: &[PulseParams<f64>],
    opts: &GateOptions<f64>,
    policy: PhasePolicy,
    spec: &NoiseSpec,
) -> Result<McCurve> {
    let offsets = sample_flux_offsets(spec);
    let draws = offsets
        .par_iter()
        .map(|&delta| {
            let device = GateDevice::new(params, res, mode, space, FluxBias(flux + delta))?;
            pulses
                .iter()
                .map(|p| evaluate_gate(&device, p, opts, policy).map(|r| r.error()))
                .collect::<Result<Vec<f64>>>()
                .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let axis = pulses.iter().map(|p| p.tau_g).collect();
    Ok(McCurve::from_draws(axis, offsets, draws))
}
