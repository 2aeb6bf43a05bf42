use serde::{Deserialize, Serialize};

use super::dispersive::{DirectSource, PointSource};
use super::hamiltonian::{CouplingMode, ResonatorParams, Truncation};
use crate::error::{Error, Result};
use crate::optim::{bisect, golden_section};
use crate::qubit::{EnergyParams, FluxBias};
use crate::real::Real;

/// Flux tolerance of the gap minimization.
pub const GAP_TOLERANCE: f64 = 1e-6;
const COARSE_POINTS: usize = 41;

/// Avoided crossing of `|i,0⟩` with `|j,1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anticrossing<T> {
    pub f_star: T,
    /// Minimum splitting (rad/ns).
    pub gap: T,
    /// Effective coupling, `gap / 2`.
    pub g: T,
    /// `π / (2g)` in ns.
    pub t_swap: T,
}

impl<T: Real> Anticrossing<T> {
    fn from_gap(f_star: T, gap: T) -> Self {
        let g = gap * T::lit(0.5);
        Self { f_star, gap, g, t_swap: T::pi() / (g + g) }
    }
}

/// Locates the minimum of `|ω|i,0⟩ − ω|j,1⟩|` inside `window`: a coarse scan
/// picks the bracket, golden-section search refines it.
pub fn find_anticrossing_with<T: Real, S: PointSource<T>>(
    source: &S,
    params: EnergyParams<T>,
    transition: (usize, usize),
    window: (T, T),
) -> Result<Anticrossing<T>> {
    let (i, j) = transition;
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidParameter { name: "window", reason: "need lo < hi".into() });
    }
    let gap = |f: T| source.point(params, FluxBias(f))?.hybridization_gap(i, j);

    let last = COARSE_POINTS - 1;
    let at = |k: usize| lo + (hi - lo) * T::from_usize_lossy(k) / T::from_usize_lossy(last);
    let mut best = (0, T::infinity());
    for k in 0..=last {
        let g = gap(at(k))?;
        if g < best.1 {
            best = (k, g);
        }
    }
    let k = best.0;
    if k == 0 || k == last {
        return Err(Error::Bracketing { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy() });
    }

    let min = golden_section(gap, at(k - 1), at(k + 1), T::lit(GAP_TOLERANCE))?;
    Ok(Anticrossing::from_gap(min.x, min.value))
}

pub fn find_anticrossing<T: Real>(
    params: EnergyParams<T>,
    res: ResonatorParams<T>,
    mode: CouplingMode,
    trunc: Truncation,
    transition: (usize, usize),
    window: (T, T),
) -> Result<Anticrossing<T>> {
    let source = DirectSource::new(params, res, mode, trunc)?;
    find_anticrossing_with(&source, params, transition, window)
}

/// Flux where the dressed `Δ_ij` changes sign inside `window`, if it does.
pub fn find_detuning_zero<T: Real, S: PointSource<T>>(
    source: &S,
    params: EnergyParams<T>,
    transition: (usize, usize),
    window: (T, T),
    tol: T,
) -> Result<Option<T>> {
    let (i, j) = transition;
    let omega_r = source.resonator().omega_r;
    bisect(
        |f: T| {
            let pt = source.point(params, FluxBias(f))?;
            if i >= pt.kept_levels() || j >= pt.kept_levels() {
                return Err(Error::LevelOutOfRange { i, j, bound: pt.kept_levels() });
            }
            Ok(pt.detuning_unchecked(i, j, omega_r))
        },
        window.0,
        window.1,
        tol,
    )
}
