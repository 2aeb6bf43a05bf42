use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DRAWS: usize = 50;
pub const DEFAULT_SEED: u64 = 1234;

/// Offsets `δ = scale·x`, `x ~ N(0, 1)`, in reduced-flux units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub scale: f64,
    pub n_draws: usize,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(scale: f64, n_draws: usize, seed: u64) -> Result<Self> {
        if !(scale >= 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter {
                name: "scale",
                reason: format!("must be finite and >= 0, got {scale}"),
            });
        }
        if n_draws == 0 {
            return Err(Error::InvalidDimension { what: "noise draws", value: 0, min: 1 });
        }
        Ok(Self { scale, n_draws, seed })
    }
}

fn unit(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal for draw `index`: ChaCha20 seeded with `seed`, stream
/// `index`, two 53-bit uniforms through Box–Muller (cosine branch).
pub fn standard_normal(seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let u1 = unit(&mut rng);
    let u2 = unit(&mut rng);
    (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn sample_flux_offsets(spec: &NoiseSpec) -> Vec<f64> {
    (0..spec.n_draws as u64).map(|k| spec.scale * standard_normal(spec.seed, k)).collect()
}
