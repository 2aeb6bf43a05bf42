use rayon::prelude::*;

use super::curve::McCurve;
use super::sampling::{sample_flux_offsets, NoiseSpec};
use crate::error::{Error, Result};
use crate::readout::{simulate_ramped_readout, ChiProfile, FluxRamp, ReadoutConfig};

/// SNR and error curves over the readout time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyReadout {
    pub snr: McCurve,
    pub error: McCurve,
}

/// Shifts the whole flux trajectory by each draw's offset and reruns the
/// readout pipeline (drive and demodulation phase recomputed per draw).
/// Draws leaving the profile domain are excluded and counted.
pub fn noisy_readout_snr(
    cfg: &ReadoutConfig<f64>,
    ramp: FluxRamp<f64>,
    profile: &ChiProfile<f64>,
    spec: &NoiseSpec,
) -> Result<NoisyReadout> {
    let offsets = sample_flux_offsets(spec);
    let runs: Vec<Option<(Vec<f64>, Vec<f64>)>> = offsets
        .par_iter()
        .map(|&delta| match simulate_ramped_readout(cfg, ramp, profile, delta) {
            Ok(tr) => Ok(Some((tr.snr, tr.error))),
            Err(Error::Domain { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let times = cfg.grid()?.times();
    let (snr, error): (Vec<_>, Vec<_>) =
        runs.into_iter().map(|r| r.map(|(s, e)| (Some(s), Some(e))).unwrap_or((None, None))).unzip();
    Ok(NoisyReadout {
        snr: McCurve::from_draws(times.clone(), offsets.clone(), snr),
        error: McCurve::from_draws(times, offsets, error),
    })
}

/// Profile range needed so that draws within four standard deviations stay
/// inside the domain.
pub fn noise_profile_range(ramp: FluxRamp<f64>, spec: &NoiseSpec) -> (f64, f64) {
    let (lo, hi) = ramp.range();
    (lo - 4.0 * spec.scale, hi + 4.0 * spec.scale)
}
