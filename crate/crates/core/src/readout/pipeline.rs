use serde::{Deserialize, Serialize};

use super::field::drive_amplitude;
use super::langevin::{integrate_langevin, output_field, TimeGrid};
use super::profile::{flux_ramp_profile, ChiProfile, FluxRamp};
use super::signal::{measurement_signal, optimal_theta, readout_error, snr_curve};
use crate::error::{Error, Result};
use crate::real::{Cplx, Real};

pub const DEFAULT_DT_NS: f64 = 0.05;

/// Demodulation-phase policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DemodPhase<T> {
    Fixed {
        angle_rad: T,
    },
    /// Maximize the final-time contrast.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadoutConfig<T> {
    pub n_bar: T,
    pub eta: T,
    /// rad/ns
    pub kappa: T,
    pub demod_phase: DemodPhase<T>,
    /// ns
    pub t_max: T,
    /// ns
    pub dt: T,
}

impl<T: Real> ReadoutConfig<T> {
    pub fn new(n_bar: T, eta: T, kappa: T, demod_phase: DemodPhase<T>, t_max: T, dt: T) -> Result<Self> {
        let cfg = Self { n_bar, eta, kappa, demod_phase, t_max, dt };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.n_bar >= T::zero()) {
            return bad("n_bar", format!("must be >= 0, got {}", self.n_bar));
        }
        if !(self.eta > T::zero() && self.eta <= T::one()) {
            return bad("eta", format!("must lie in (0, 1], got {}", self.eta));
        }
        if !(self.kappa > T::zero()) {
            return bad("kappa", format!("must be positive, got {}", self.kappa));
        }
        TimeGrid::span(self.t_max, self.dt).map(|_| ())
    }

    pub fn grid(&self) -> Result<TimeGrid<T>> {
        TimeGrid::span(self.t_max, self.dt)
    }

    pub fn with_eta(self, eta: T) -> Result<Self> {
        Self::new(self.n_bar, eta, self.kappa, self.demod_phase, self.t_max, self.dt)
    }
}

/// Readout record; index 0 is qubit state 0 (`σz = −1`), index 1 is state 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutTrajectory<T> {
    pub times: Vec<T>,
    pub alpha: [Vec<Cplx<T>>; 2],
    pub alpha_out: [Vec<Cplx<T>>; 2],
    pub m_s: [Vec<T>; 2],
    pub snr: Vec<T>,
    pub error: Vec<T>,
    pub theta: T,
    pub epsilon: T,
}

impl<T: Real> ReadoutTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Grid index nearest to `tau`.
    pub fn index_at(&self, tau: T) -> usize {
        let dt = if self.times.len() > 1 { self.times[1] - self.times[0] } else { T::one() };
        ((tau / dt).round().to_f64_lossy().max(0.0) as usize).min(self.times.len() - 1)
    }

    pub fn snr_at(&self, tau: T) -> T {
        self.snr[self.index_at(tau)]
    }

    pub fn error_at(&self, tau: T) -> T {
        self.error[self.index_at(tau)]
    }

    /// First time the error drops to `target` or below.
    pub fn time_to_error(&self, target: T) -> Option<T> {
        self.error.iter().position(|&e| e <= target).map(|k| self.times[k])
    }
}

/// Runs both qubit states through the Langevin equation and derives the
/// signal, SNR and error curves. The drive is set from `chi_drive` so the
/// cavity settles at `n̄` photons when `χ = chi_drive`.
pub fn simulate_readout<T: Real>(
    cfg: &ReadoutConfig<T>,
    chi_of_t: impl Fn(T) -> Result<T> + Sync,
    chi_drive: T,
) -> Result<ReadoutTrajectory<T>> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let epsilon = drive_amplitude(cfg.n_bar, cfg.kappa, chi_drive);
    let run = |sigma: T| integrate_langevin(&chi_of_t, cfg.kappa, epsilon, sigma, grid);
    let (a0, a1) = rayon::join(|| run(-T::one()), || run(T::one()));
    let (a0, a1) = (a0?, a1?);
    let o0 = output_field(&a0, cfg.kappa, epsilon);
    let o1 = output_field(&a1, cfg.kappa, epsilon);
    let theta = match cfg.demod_phase {
        DemodPhase::Fixed { angle_rad } => angle_rad,
        DemodPhase::Auto => optimal_theta(&o0, &o1, grid.dt),
    };
    let m0 = measurement_signal(&o0, cfg.eta, cfg.kappa, theta, grid.dt);
    let m1 = measurement_signal(&o1, cfg.eta, cfg.kappa, theta, grid.dt);
    let times = grid.times();
    let snr = snr_curve(&m0, &m1, cfg.kappa, &times);
    let error = snr.iter().map(|&s| readout_error(s)).collect();
    Ok(ReadoutTrajectory { times, alpha: [a0, a1], alpha_out: [o0, o1], m_s: [m0, m1], snr, error, theta, epsilon })
}

/// Readout along a flux ramp shifted by `offset`; the drive is set from χ on
/// the (shifted) plateau.
pub fn simulate_ramped_readout<T: Real>(
    cfg: &ReadoutConfig<T>,
    ramp: FluxRamp<T>,
    profile: &ChiProfile<T>,
    offset: T,
) -> Result<ReadoutTrajectory<T>> {
    let chi = flux_ramp_profile(ramp, profile)?.with_offset(offset)?;
    simulate_readout(cfg, |t| chi.chi(t), chi.plateau_chi()?)
}
