use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dispersive::{DressedPoint, PointSource};
use super::dressed::{RESONANT_QUALITY, WARN_QUALITY};
use crate::error::{Error, Result};
use crate::qubit::{EnergyParams, FluxBias};
use crate::real::Real;
use crate::units;

/// Emission bound for χ maps, ν in MHz.
pub const CHI_CLAMP_MHZ: f64 = 5.0;
/// Emission bound for detuning maps, ν in GHz.
pub const DETUNING_CLAMP_GHZ: f64 = 5.0;
/// Transitions `(i, j)` mapped by default.
pub const DEFAULT_TRANSITIONS: [(usize, usize); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

/// Strictly increasing sample axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis<T>(Vec<T>);

impl<T: Real> Axis<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDimension { what: "axis length", value: 0, min: 1 });
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter {
                name: "axis",
                reason: "values must be finite and strictly increasing".into(),
            });
        }
        Ok(Self(values))
    }

    /// `n` evenly spaced points on `[lo, hi]`; `n = 1` gives `[lo]`.
    pub fn linspace(lo: T, hi: T, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension { what: "axis length", value: 0, min: 1 });
        }
        if n == 1 {
            return Self::new(vec![lo]);
        }
        let span = hi - lo;
        let last = T::from_usize_lossy(n - 1);
        Self::new((0..n).map(|i| if i == n - 1 { hi } else { lo + span * T::from_usize_lossy(i) / last }).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Quantity mapped by a landscape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Chi,
    OmegaQ,
    Detuning(usize, usize),
}

impl ValueKind {
    pub fn name(self) -> String {
        match self {
            Self::Chi => "chi".into(),
            Self::OmegaQ => "omega_q".into(),
            Self::Detuning(i, j) => format!("delta_{i}{j}"),
        }
    }

    /// Unit of emitted values (ν = ω/2π).
    pub fn unit(self) -> &'static str {
        match self {
            Self::Chi => "MHz",
            Self::OmegaQ | Self::Detuning(..) => "GHz",
        }
    }

    /// Symmetric emission bound in rad/ns, if any.
    pub fn clamp<T: Real>(self) -> Option<T> {
        match self {
            Self::Chi => Some(units::mhz(T::lit(CHI_CLAMP_MHZ))),
            Self::Detuning(..) => Some(units::ghz(T::lit(DETUNING_CLAMP_GHZ))),
            Self::OmegaQ => None,
        }
    }

    fn labels(self) -> Vec<(usize, usize)> {
        match self {
            Self::Chi => vec![(0, 0), (0, 1), (1, 0), (1, 1)],
            Self::OmegaQ => vec![],
            Self::Detuning(i, j) => vec![(i, 0), (j, 0)],
        }
    }

    fn to_display<T: Real>(self, v: T) -> f64 {
        match self {
            Self::Chi => units::to_mhz(v).to_f64_lossy(),
            Self::OmegaQ | Self::Detuning(..) => units::to_ghz(v).to_f64_lossy(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    /// Labels hybridized (quality below the warn threshold) but still usable.
    Hybridized,
    /// Dispersive picture invalid; emitted value saturated.
    Resonant,
    /// Computation failed; emitted value is NaN.
    Failed,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::Hybridized => "hybridized",
            Self::Resonant => "resonant",
            Self::Failed => "failed",
        }
    }
}

/// Dressed points on an `(E_J, f)` grid, row-major over `(e_j, f)`.
#[derive(Debug, Clone)]
pub struct PointGrid<T> {
    pub e_j: Axis<T>,
    pub f: Axis<T>,
    pub points: Vec<Result<DressedPoint<T>>>,
}

impl<T: Real> PointGrid<T> {
    /// Evaluates every cell; order of evaluation does not affect the result.
    pub fn compute<S: PointSource<T>>(source: &S, base: EnergyParams<T>, e_j: Axis<T>, f: Axis<T>) -> Self {
        let (nj, nf) = (e_j.len(), f.len());
        let points = (0..nj * nf)
            .into_par_iter()
            .map(|idx| {
                let params = base.with_e_j(e_j.values()[idx / nf])?;
                source.point(params, FluxBias(f.values()[idx % nf]))
            })
            .collect();
        Self { e_j, f, points }
    }

    pub fn map(&self, kind: ValueKind, omega_r: T) -> Result<LandscapeGrid<T>> {
        if let ValueKind::Detuning(i, j) = kind {
            if i <= j {
                return Err(Error::InvalidParameter {
                    name: "transition",
                    reason: format!("need i > j, got ({i}, {j})"),
                });
            }
        }
        let labels = kind.labels();
        let floor = T::lit(RESONANT_QUALITY);
        let warn = T::lit(WARN_QUALITY);
        let mut values = Vec::with_capacity(self.points.len());
        let mut status = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let (v, s) = match p {
                Err(_) => (T::nan(), CellStatus::Failed),
                Ok(pt) => {
                    if let Some(&(i, _)) = labels.iter().find(|&&(i, _)| i >= pt.kept_levels()) {
                        return Err(Error::LevelOutOfRange { i, j: 0, bound: pt.kept_levels() });
                    }
                    let v = match kind {
                        ValueKind::Chi => pt.chi_unchecked(),
                        ValueKind::OmegaQ => pt.qubit_frequency(),
                        ValueKind::Detuning(i, j) => pt.detuning_unchecked(i, j, omega_r),
                    };
                    let q = pt.min_quality(&labels);
                    let s = if q < floor {
                        CellStatus::Resonant
                    } else if q < warn {
                        CellStatus::Hybridized
                    } else {
                        CellStatus::Ok
                    };
                    (v, s)
                }
            };
            values.push(v);
            status.push(s);
        }
        Ok(LandscapeGrid { e_j: self.e_j.clone(), f: self.f.clone(), kind, values, status, clamp: kind.clamp() })
    }
}

/// One mapped quantity over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeGrid<T> {
    pub e_j: Axis<T>,
    pub f: Axis<T>,
    pub kind: ValueKind,
    /// Raw values (rad/ns), row-major over `(e_j, f)`; NaN where failed.
    pub values: Vec<T>,
    pub status: Vec<CellStatus>,
    pub clamp: Option<T>,
}

impl<T: Real> LandscapeGrid<T> {
    pub fn shape(&self) -> (usize, usize) {
        (self.e_j.len(), self.f.len())
    }

    pub fn value(&self, row: usize, col: usize) -> T {
        self.values[row * self.f.len() + col]
    }

    /// Values as emitted: clamped to the bound, resonant cells saturated
    /// with the sign of the last valid neighbor along `f` (or the next one
    /// if none precedes), failed cells NaN.
    pub fn emitted(&self) -> Vec<T> {
        let nf = self.f.len();
        let mut out = Vec::with_capacity(self.values.len());
        for row in self.values.chunks(nf).zip(self.status.chunks(nf)) {
            let (vals, stat) = row;
            let valid = |c: usize| matches!(stat[c], CellStatus::Ok | CellStatus::Hybridized);
            let mut last_sign: Option<T> = None;
            for c in 0..nf {
                let v = match stat[c] {
                    CellStatus::Failed => T::nan(),
                    CellStatus::Resonant => {
                        let sign = last_sign
                            .or_else(|| (c + 1..nf).find(|&n| valid(n)).map(|n| sign_of(vals[n])))
                            .unwrap_or_else(T::one);
                        match self.clamp {
                            Some(b) => b * sign,
                            None => vals[c],
                        }
                    }
                    _ => {
                        last_sign = Some(sign_of(vals[c]));
                        match self.clamp {
                            Some(b) => vals[c].max(-b).min(b),
                            None => vals[c],
                        }
                    }
                };
                out.push(v);
            }
        }
        out
    }

    /// Emitted values in display units (MHz for χ, GHz otherwise).
    pub fn emitted_display(&self) -> Vec<f64> {
        self.emitted().into_iter().map(|v| self.kind.to_display(v)).collect()
    }
}

fn sign_of<T: Real>(v: T) -> T {
    if v < T::zero() {
        -T::one()
    } else {
        T::one()
    }
}

/// Evaluates a landscape of one quantity.
pub fn landscape<T: Real, S: PointSource<T>>(
    source: &S,
    base: EnergyParams<T>,
    e_j: Axis<T>,
    f: Axis<T>,
    kind: ValueKind,
) -> Result<LandscapeGrid<T>> {
    PointGrid::compute(source, base, e_j, f).map(kind, source.resonator().omega_r)
}

/// χ over flux at fixed energies: a one-row landscape.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiCurve<T> {
    pub f: Axis<T>,
    pub chi: Vec<T>,
    pub status: Vec<CellStatus>,
    pub emitted: Vec<T>,
}

pub fn chi_curve<T: Real, S: PointSource<T>>(source: &S, params: EnergyParams<T>, f: Axis<T>) -> Result<ChiCurve<T>> {
    let grid = landscape(source, params, Axis::new(vec![params.e_j])?, f, ValueKind::Chi)?;
    let emitted = grid.emitted();
    Ok(ChiCurve { f: grid.f, chi: grid.values, status: grid.status, emitted })
}
