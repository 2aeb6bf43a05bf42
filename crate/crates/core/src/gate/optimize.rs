use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::device::GateDevice;
use super::fidelity::{gate_fidelity, pauli_x, projected, GateResult, PhasePolicy};
use super::propagate::{GateOptions, GatePropagator};
use super::pulse::PulseParams;
use crate::error::{Error, Result};
use crate::optim::nelder_mead;
use crate::real::Real;

/// Coarse grid and simplex settings for [`optimize_pulse`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings<T> {
    pub eps_points: usize,
    /// Grid over `[lo, hi] ×` the Rabi-area estimate, log-spaced.
    pub eps_span: (T, T),
    pub lambda_points: usize,
    pub lambda_range: (T, T),
    pub xtol: T,
    pub max_iter: usize,
    pub policy: PhasePolicy,
}

impl<T: Real> Default for OptimizerSettings<T> {
    fn default() -> Self {
        Self {
            eps_points: 25,
            eps_span: (T::lit(0.5), T::lit(2.0)),
            lambda_points: 17,
            lambda_range: (T::lit(-2.0), T::lit(2.0)),
            xtol: T::lit(1e-6),
            max_iter: 2000,
            policy: PhasePolicy::VirtualZ,
        }
    }
}

/// Result of [`optimize_pulse`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedPulse<T: Real> {
    pub result: GateResult<T>,
    /// `(ε_d, λ)` of the best grid point, where the simplex started.
    pub grid_best: (T, T),
    /// Gate error at that point (floored at 1e-16).
    pub grid_best_error: T,
    pub iterations: usize,
}

impl<T: Real> OptimizedPulse<T> {
    pub fn pulse(&self) -> PulseParams<T> {
        self.result.params
    }
}

/// Two-level π-area amplitude: `ε_d·|⟨1|n̂|0⟩|·∫2s dt = π`, with `∫2s dt = τ_g`.
pub fn rabi_estimate<T: Real>(device: &GateDevice<T>, tau_g: T) -> T {
    T::pi() / (device.transition_charge() * tau_g)
}

/// Propagates the computational states and scores the X gate.
pub fn evaluate_gate<T: Real>(
    device: &GateDevice<T>,
    pulse: &PulseParams<T>,
    opts: &GateOptions<T>,
    policy: PhasePolicy,
) -> Result<GateResult<T>> {
    score(&GatePropagator::new(device, pulse, opts)?, pulse, policy)
}

fn score<T: Real>(prop: &GatePropagator<'_, T>, pulse: &PulseParams<T>, policy: PhasePolicy) -> Result<GateResult<T>> {
    let comp = prop.device().comp;
    let u = prop.run(pulse.eps_d, pulse.lambda, Some(&comp))?;
    let (fidelity, leakage) = gate_fidelity(&projected(&u, comp), &pauli_x(), policy);
    Ok(GateResult { fidelity, leakage, propagator: u, params: *pulse })
}

/// Coarse `(ε_d, λ)` grid, then Nelder–Mead on `log10(1 − F)` from the best
/// grid point. The drive frequency and anharmonicity come from `device`.
pub fn optimize_pulse<T: Real>(
    device: &GateDevice<T>,
    tau_g: T,
    opts: &GateOptions<T>,
    settings: &OptimizerSettings<T>,
) -> Result<OptimizedPulse<T>> {
    let base = PulseParams::new(tau_g, T::zero(), T::zero(), device.qubit_frequency(), device.anharm)?;
    let est = rabi_estimate(device, tau_g);
    let prop = GatePropagator::new(device, &base, opts)?;
    let floor = T::lit(1e-16);
    let objective = |eps: T, lambda: T| -> Result<T> {
        let pulse = base.with_shape(eps.abs(), lambda)?;
        let r = score(&prop, &pulse, settings.policy)?;
        Ok((T::one() - r.fidelity).max(floor).log10())
    };

    let (lo, hi) = (settings.eps_span.0.ln(), settings.eps_span.1.ln());
    let ne = settings.eps_points.max(1);
    let nl = settings.lambda_points.max(1);
    let frac =
        |k: usize, n: usize| if n == 1 { T::lit(0.5) } else { T::from_usize_lossy(k) / T::from_usize_lossy(n - 1) };
    let eps_of = |a: usize| est * (lo + (hi - lo) * frac(a, ne)).exp();
    let lam_of = |b: usize| settings.lambda_range.0 + (settings.lambda_range.1 - settings.lambda_range.0) * frac(b, nl);

    let grid: Vec<T> =
        (0..ne * nl).into_par_iter().map(|idx| objective(eps_of(idx / nl), lam_of(idx % nl))).collect::<Result<_>>()?;
    let (best_idx, &best) =
        grid.iter().enumerate().fold((0, &grid[0]), |acc, (i, v)| if *v < *acc.1 { (i, v) } else { acc });
    let start = [eps_of(best_idx / nl), lam_of(best_idx % nl)];
    let steps = [start[0] * T::lit(0.05), T::lit(0.5)];

    let refined = nelder_mead(|x: &[T]| objective(x[0], x[1]), &start, &steps, settings.xtol, settings.max_iter)?;
    if refined.value > best {
        return Err(Error::OptimizerRegression { grid: best.to_f64_lossy(), refined: refined.value.to_f64_lossy() });
    }
    let pulse = base.with_shape(refined.x[0].abs(), refined.x[1])?;
    Ok(OptimizedPulse {
        result: score(&prop, &pulse, settings.policy)?,
        grid_best: (start[0], start[1]),
        grid_best_error: T::lit(10.0).powf(best),
        iterations: refined.iterations,
    })
}
