use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupled::PointSource;
use crate::error::{Error, Result};
use crate::qubit::{EnergyParams, FluxBias};
use crate::real::Real;
use crate::units;

/// Flux spacing of a [`ChiProfile`] grid.
pub const PROFILE_STEP: f64 = 1e-4;
const PER_UNIT: i64 = 10_000;
/// Default bound on `|χ|/2π` during ramps, MHz.
pub const DEFAULT_CHI_CLAMP_MHZ: f64 = 50.0;

/// Linear flux ramp from `f_start` to `f_end` over `t_rise`, then held.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxRamp<T> {
    pub f_start: T,
    pub f_end: T,
    pub t_rise: T,
}

impl<T: Real> FluxRamp<T> {
    pub fn new(f_start: T, f_end: T, t_rise: T) -> Result<Self> {
        if !(t_rise >= T::zero()) || !t_rise.is_finite() {
            return Err(Error::InvalidParameter { name: "t_rise", reason: format!("must be >= 0, got {t_rise}") });
        }
        if !f_start.is_finite() || !f_end.is_finite() {
            return Err(Error::InvalidParameter { name: "ramp", reason: "flux endpoints must be finite".into() });
        }
        Ok(Self { f_start, f_end, t_rise })
    }

    /// Constant bias.
    pub fn hold(f: T) -> Self {
        Self { f_start: f, f_end: f, t_rise: T::zero() }
    }

    pub fn flux(&self, t: T) -> T {
        if t >= self.t_rise {
            return self.f_end;
        }
        if t <= T::zero() {
            return self.f_start;
        }
        let s = t / self.t_rise;
        self.f_start * (T::one() - s) + self.f_end * s
    }

    pub fn range(&self) -> (T, T) {
        (self.f_start.min(self.f_end), self.f_start.max(self.f_end))
    }
}

/// `χ(f)` tabulated at `f_k = k·10⁻⁴`, linearly interpolated and clamped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiProfile<T> {
    k_lo: i64,
    /// Unclamped χ (rad/ns) at consecutive grid points from `k_lo`.
    values: Vec<T>,
    clamp: T,
}

impl<T: Real> ChiProfile<T> {
    pub fn from_values(k_lo: i64, values: Vec<T>, clamp: T) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidDimension { what: "profile points", value: values.len(), min: 2 });
        }
        if !(clamp > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "chi_clamp",
                reason: format!("must be positive, got {clamp}"),
            });
        }
        Ok(Self { k_lo, values, clamp })
    }

    /// Grid indices covering `[lo, hi]`.
    pub fn index_range(lo: T, hi: T) -> (i64, i64) {
        let per = T::lit(PER_UNIT as f64);
        let a = (lo * per).floor().to_f64_lossy() as i64;
        let b = (hi * per).ceil().to_f64_lossy() as i64;
        (a, b.max(a + 1))
    }

    pub fn grid_flux(k: i64) -> T {
        T::lit(k as f64) / T::lit(PER_UNIT as f64)
    }

    /// Tabulates χ over `[lo, hi]` from dressed points (labels are used even
    /// where hybridized; the clamp bounds the result).
    pub fn compute<S: PointSource<T>>(source: &S, params: EnergyParams<T>, lo: T, hi: T, clamp: T) -> Result<Self> {
        let (a, b) = Self::index_range(lo, hi);
        let values = (a..=b)
            .into_par_iter()
            .map(|k| source.point(params, FluxBias(Self::grid_flux(k))).map(|p| p.chi_unchecked()))
            .collect::<Result<Vec<T>>>()?;
        Self::from_values(a, values, clamp)
    }

    pub fn k_lo(&self) -> i64 {
        self.k_lo
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn clamp(&self) -> T {
        self.clamp
    }

    pub fn with_clamp(&self, clamp: T) -> Result<Self> {
        Self::from_values(self.k_lo, self.values.clone(), clamp)
    }

    pub fn domain(&self) -> (T, T) {
        (Self::grid_flux(self.k_lo), Self::grid_flux(self.k_lo + self.values.len() as i64 - 1))
    }

    pub fn covers(&self, lo: T, hi: T) -> bool {
        let (a, b) = self.domain();
        lo >= a && hi <= b
    }

    /// Clamped, interpolated χ at `f`.
    pub fn eval(&self, f: T) -> Result<T> {
        let (a, b) = self.domain();
        if !(f >= a && f <= b) {
            return Err(Error::Domain {
                what: "chi profile",
                value: f.to_f64_lossy(),
                lo: a.to_f64_lossy(),
                hi: b.to_f64_lossy(),
            });
        }
        let x = f * T::lit(PER_UNIT as f64) - T::lit(self.k_lo as f64);
        let last = self.values.len() - 1;
        let i = (x.floor().to_f64_lossy() as usize).min(last - 1);
        let w = x - T::from_usize_lossy(i);
        let v = self.values[i] * (T::one() - w) + self.values[i + 1] * w;
        Ok(v.max(-self.clamp).min(self.clamp))
    }

    pub fn default_clamp() -> T {
        units::mhz(T::lit(DEFAULT_CHI_CLAMP_MHZ))
    }
}

/// `χ(t) = clamp(interp(χ, f(t) + δ))`.
#[derive(Debug, Clone, Copy)]
pub struct RampedChi<'a, T> {
    pub ramp: FluxRamp<T>,
    pub profile: &'a ChiProfile<T>,
    pub offset: T,
}

impl<'a, T: Real> RampedChi<'a, T> {
    pub fn with_offset(self, offset: T) -> Result<Self> {
        let shifted = Self { offset, ..self };
        shifted.check()?;
        Ok(shifted)
    }

    fn check(&self) -> Result<()> {
        let (lo, hi) = self.ramp.range();
        let (a, b) = self.profile.domain();
        if !self.profile.covers(lo + self.offset, hi + self.offset) {
            let bad = if lo + self.offset < a { lo + self.offset } else { hi + self.offset };
            return Err(Error::Domain {
                what: "chi profile",
                value: bad.to_f64_lossy(),
                lo: a.to_f64_lossy(),
                hi: b.to_f64_lossy(),
            });
        }
        Ok(())
    }

    pub fn flux(&self, t: T) -> T {
        self.ramp.flux(t) + self.offset
    }

    pub fn chi(&self, t: T) -> Result<T> {
        self.profile.eval(self.flux(t))
    }

    /// χ on the plateau, used to set the drive amplitude.
    pub fn plateau_chi(&self) -> Result<T> {
        self.profile.eval(self.ramp.f_end + self.offset)
    }
}

/// Binds a ramp to a profile, checking that the profile covers the ramp.
pub fn flux_ramp_profile<T: Real>(ramp: FluxRamp<T>, profile: &ChiProfile<T>) -> Result<RampedChi<'_, T>> {
    let r = RampedChi { ramp, profile, offset: T::zero() };
    r.check()?;
    Ok(r)
}
