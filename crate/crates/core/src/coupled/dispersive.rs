use serde::{Deserialize, Serialize};

use super::dressed::{assign_dressed_levels, DressedLevels, RESONANT_QUALITY};
use super::hamiltonian::{build_coupled_hamiltonian, CouplingMode, QubitBasis, ResonatorParams, Truncation};
use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::qubit::{EnergyParams, FluxBias, FluxoniumModel, Spectrum};
use crate::real::Real;

/// Photon numbers retained in a [`DressedPoint`] (|i,0⟩ and |i,1⟩).
pub const PHOTON_LABELS: usize = 2;

/// Compact summary of the coupled spectrum at one bias point: bare kept
/// levels plus dressed energies of every `|i, n⟩` with `n < 2`.
///
/// Everything the dispersive shift, detuning maps and anticrossing search
/// need is derivable from it, which makes it the unit of caching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DressedPoint<T> {
    pub flux: T,
    /// Bare fluxonium energies of the kept levels (rad/ns).
    pub bare: Vec<T>,
    /// Dressed energy of label `(i, n)` at index `i·2 + n`.
    pub label_energy: Vec<T>,
    pub label_quality: Vec<T>,
    /// Any label of the full assignment below the warn threshold.
    pub warn: bool,
}

impl<T: Real> DressedPoint<T> {
    pub fn from_levels(flux: T, bare: Vec<T>, levels: &DressedLevels<T>) -> Self {
        let k = levels.kept_levels;
        let mut label_energy = Vec::with_capacity(k * PHOTON_LABELS);
        let mut label_quality = Vec::with_capacity(k * PHOTON_LABELS);
        for i in 0..k {
            for n in 0..PHOTON_LABELS {
                label_energy.push(levels.energy(i, n));
                label_quality.push(levels.quality(i, n));
            }
        }
        Self { flux, bare, label_energy, label_quality, warn: levels.warn }
    }

    pub fn kept_levels(&self) -> usize {
        self.bare.len()
    }

    pub fn energy(&self, i: usize, n: usize) -> T {
        self.label_energy[i * PHOTON_LABELS + n]
    }

    pub fn quality(&self, i: usize, n: usize) -> T {
        self.label_quality[i * PHOTON_LABELS + n]
    }

    /// Smallest overlap² among the given labels.
    pub fn min_quality(&self, labels: &[(usize, usize)]) -> T {
        labels.iter().fold(T::one(), |acc, &(i, n)| acc.min(self.quality(i, n)))
    }

    fn require(&self, labels: &[(usize, usize)]) -> Result<()> {
        let floor = T::lit(RESONANT_QUALITY);
        for &(i, n) in labels {
            let q = self.quality(i, n);
            if q < floor {
                return Err(Error::Resonance {
                    flux: self.flux.to_f64_lossy(),
                    label: (i, n),
                    quality: q.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// `χ = ½[(ω|1,1⟩ − ω|1,0⟩) − (ω|0,1⟩ − ω|0,0⟩)]`
    pub fn chi(&self) -> Result<T> {
        self.require(&[(0, 0), (0, 1), (1, 0), (1, 1)])?;
        Ok(self.chi_unchecked())
    }

    pub fn chi_unchecked(&self) -> T {
        ((self.energy(1, 1) - self.energy(1, 0)) - (self.energy(0, 1) - self.energy(0, 0))) * T::lit(0.5)
    }

    /// `Δ_ij = (ω|i,0⟩ − ω|j,0⟩) − ω_r`
    pub fn detuning(&self, i: usize, j: usize, omega_r: T) -> Result<T> {
        self.check_levels(i, j)?;
        self.require(&[(i, 0), (j, 0)])?;
        Ok(self.detuning_unchecked(i, j, omega_r))
    }

    pub fn detuning_unchecked(&self, i: usize, j: usize, omega_r: T) -> T {
        self.energy(i, 0) - self.energy(j, 0) - omega_r
    }

    /// Bare `ω₁ − ω₀`.
    pub fn qubit_frequency(&self) -> T {
        self.bare[1] - self.bare[0]
    }

    /// Dressed qubit frequency `ω|1,0⟩ − ω|0,0⟩`.
    pub fn dressed_qubit_frequency(&self) -> T {
        self.energy(1, 0) - self.energy(0, 0)
    }

    /// `|ω|i,0⟩ − ω|j,1⟩|`: the splitting that closes when `i → j` is resonant
    /// with the resonator.
    pub fn hybridization_gap(&self, i: usize, j: usize) -> Result<T> {
        self.check_levels(i, j)?;
        Ok((self.energy(i, 0) - self.energy(j, 1)).abs())
    }

    fn check_levels(&self, i: usize, j: usize) -> Result<()> {
        let k = self.kept_levels();
        if i >= k || j >= k {
            return Err(Error::LevelOutOfRange { i, j, bound: k });
        }
        Ok(())
    }
}

/// Coupled fluxonium–resonator system reusable across flux points.
#[derive(Debug, Clone)]
pub struct CoupledSystem<T: Real> {
    model: FluxoniumModel<T>,
    pub res: ResonatorParams<T>,
    pub mode: CouplingMode,
    pub trunc: Truncation,
}

impl<T: Real> CoupledSystem<T> {
    pub fn new(
        params: EnergyParams<T>,
        res: ResonatorParams<T>,
        mode: CouplingMode,
        trunc: Truncation,
    ) -> Result<Self> {
        trunc.validate()?;
        let model = FluxoniumModel::new(params, trunc.fluxonium_dim)?;
        Ok(Self { model, res, mode, trunc })
    }

    pub fn model(&self) -> &FluxoniumModel<T> {
        &self.model
    }

    pub fn params(&self) -> &EnergyParams<T> {
        self.model.params()
    }

    /// Bare spectrum and the kept-level qubit basis.
    pub fn qubit_basis(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<(Spectrum<T>, QubitBasis<T>)> {
        let spectrum = self.model.spectrum_for(params, flux)?;
        let qubit = if self.model.shares_basis(&params) {
            QubitBasis::from_spectrum(&self.model, &spectrum, self.trunc.kept_levels)
        } else {
            let model = FluxoniumModel::new(params, self.trunc.fluxonium_dim)?;
            QubitBasis::from_spectrum(&model, &spectrum, self.trunc.kept_levels)
        };
        Ok((spectrum, qubit))
    }

    /// Full dressed labeling at `flux`.
    pub fn dressed_levels(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<(Vec<T>, DressedLevels<T>)> {
        let (_, qubit) = self.qubit_basis(params, flux)?;
        let levels = dress(&qubit, &self.res, self.mode, self.trunc.resonator_levels, flux.0)?;
        Ok((qubit.energies, levels))
    }

    pub fn point_for(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<DressedPoint<T>> {
        let (bare, levels) = self.dressed_levels(params, flux)?;
        Ok(DressedPoint::from_levels(flux.0, bare, &levels))
    }

    pub fn point(&self, flux: FluxBias<T>) -> Result<DressedPoint<T>> {
        self.point_for(*self.model.params(), flux)
    }
}

fn dress<T: Real>(
    qubit: &QubitBasis<T>,
    res: &ResonatorParams<T>,
    mode: CouplingMode,
    m: usize,
    flux: T,
) -> Result<DressedLevels<T>> {
    let h = build_coupled_hamiltonian(qubit, res, mode, m)?;
    let (energies, vectors) =
        eigh(&h, || format!("coupled system at f={flux} ({}, k={}, m={m})", mode.as_str(), qubit.levels()))?;
    Ok(assign_dressed_levels(energies, &vectors, qubit.levels(), m))
}

/// Dressed point for an arbitrary qubit basis (e.g. a two-level surrogate).
pub fn dressed_point<T: Real>(
    qubit: &QubitBasis<T>,
    res: &ResonatorParams<T>,
    mode: CouplingMode,
    resonator_levels: usize,
    flux: T,
) -> Result<DressedPoint<T>> {
    let levels = dress(qubit, res, mode, resonator_levels, flux)?;
    Ok(DressedPoint::from_levels(flux, qubit.energies.clone(), &levels))
}

/// Provider of dressed points, so sweeps can be served from a cache.
pub trait PointSource<T: Real>: Sync {
    fn point(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<DressedPoint<T>>;
    fn resonator(&self) -> &ResonatorParams<T>;
}

/// Computes every point from scratch.
#[derive(Debug, Clone)]
pub struct DirectSource<T: Real> {
    system: CoupledSystem<T>,
}

impl<T: Real> DirectSource<T> {
    pub fn new(
        params: EnergyParams<T>,
        res: ResonatorParams<T>,
        mode: CouplingMode,
        trunc: Truncation,
    ) -> Result<Self> {
        Ok(Self { system: CoupledSystem::new(params, res, mode, trunc)? })
    }

    pub fn system(&self) -> &CoupledSystem<T> {
        &self.system
    }
}

impl<T: Real> PointSource<T> for DirectSource<T> {
    fn point(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<DressedPoint<T>> {
        self.system.point_for(params, flux)
    }

    fn resonator(&self) -> &ResonatorParams<T> {
        &self.system.res
    }
}

pub fn dispersive_shift<T: Real>(
    params: EnergyParams<T>,
    flux: FluxBias<T>,
    res: ResonatorParams<T>,
    mode: CouplingMode,
    trunc: Truncation,
) -> Result<T> {
    CoupledSystem::new(params, res, mode, trunc)?.point(flux)?.chi()
}

/// Signed `Δ_ij` for `i > j`.
pub fn transition_detuning<T: Real>(
    params: EnergyParams<T>,
    flux: FluxBias<T>,
    res: ResonatorParams<T>,
    mode: CouplingMode,
    trunc: Truncation,
    i: usize,
    j: usize,
) -> Result<T> {
    if i <= j {
        return Err(Error::InvalidParameter { name: "transition", reason: format!("need i > j, got ({i}, {j})") });
    }
    CoupledSystem::new(params, res, mode, trunc)?.point(flux)?.detuning(i, j, res.omega_r)
}
