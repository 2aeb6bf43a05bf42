use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{project, CMatrix};
use crate::qubit::{EnergyParams, FluxBias, FluxoniumModel, Spectrum, DEFAULT_FLUXONIUM_DIM};
use crate::real::{cplx, czero, Cplx, Real};
use crate::units;

/// Readout resonator: frequency, linewidth and coupling, all in rad/ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonatorParams<T> {
    pub omega_r: T,
    pub kappa: T,
    pub g: T,
}

impl<T: Real> ResonatorParams<T> {
    pub fn new(omega_r: T, kappa: T, g: T) -> Result<Self> {
        if !(omega_r > T::zero()) || !omega_r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega_r",
                reason: format!("must be positive, got {omega_r}"),
            });
        }
        if !(kappa > T::zero()) || !kappa.is_finite() {
            return Err(Error::InvalidParameter { name: "kappa", reason: format!("must be positive, got {kappa}") });
        }
        if !(g >= T::zero()) || !g.is_finite() {
            return Err(Error::InvalidParameter { name: "g", reason: format!("must be non-negative, got {g}") });
        }
        Ok(Self { omega_r, kappa, g })
    }

    /// ω_r/2π in GHz, κ/2π and g/2π in MHz.
    pub fn from_ghz_mhz(omega_r_ghz: T, kappa_mhz: T, g_mhz: T) -> Result<Self> {
        Self::new(units::ghz(omega_r_ghz), units::mhz(kappa_mhz), units::mhz(g_mhz))
    }

    pub fn with_g(self, g: T) -> Result<Self> {
        Self::new(self.omega_r, self.kappa, g)
    }
}

/// Form of the qubit–resonator interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CouplingMode {
    /// `g n̂ ⊗ (â + â†)`, with `g` multiplying `⟨i|n̂|j⟩` directly.
    ChargeCoupling,
    /// `g (ĉ† ⊗ â + ĉ ⊗ â†)` with the oscillator ladder ĉ projected onto the
    /// kept eigenstates. Reproduces the reference dispersive shifts, so it is
    /// the default.
    #[default]
    LadderRwa,
}

impl CouplingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CouplingMode::ChargeCoupling => "charge_coupling",
            CouplingMode::LadderRwa => "ladder_rwa",
        }
    }
}

/// Two-stage truncation: oscillator basis for the bare fluxonium, then the
/// lowest `kept_levels` eigenstates tensored with `resonator_levels` Fock states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub fluxonium_dim: usize,
    pub kept_levels: usize,
    pub resonator_levels: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { fluxonium_dim: DEFAULT_FLUXONIUM_DIM, kept_levels: 8, resonator_levels: 8 }
    }
}

impl Truncation {
    pub fn validate(&self) -> Result<()> {
        if self.kept_levels < 2 {
            return Err(Error::InvalidDimension { what: "kept fluxonium levels", value: self.kept_levels, min: 2 });
        }
        if self.resonator_levels < 2 {
            return Err(Error::InvalidDimension { what: "resonator levels", value: self.resonator_levels, min: 2 });
        }
        if self.kept_levels > self.fluxonium_dim {
            return Err(Error::InvalidDimension {
                what: "fluxonium_dim (must hold the kept levels)",
                value: self.fluxonium_dim,
                min: self.kept_levels,
            });
        }
        Ok(())
    }
}

/// Qubit side of the coupled problem expressed in its own eigenbasis.
#[derive(Debug, Clone)]
pub struct QubitBasis<T: Real> {
    /// Bare level energies (rad/ns).
    pub energies: Vec<T>,
    /// `⟨i|n̂|j⟩`
    pub charge: CMatrix<T>,
    /// `⟨i|ĉ|j⟩`
    pub lowering: CMatrix<T>,
}

impl<T: Real> QubitBasis<T> {
    /// Lowest `kept` eigenstates of a fluxonium spectrum.
    pub fn from_spectrum(model: &FluxoniumModel<T>, spectrum: &Spectrum<T>, kept: usize) -> Self {
        let ops = model.operators();
        Self {
            energies: spectrum.eigenvalues[..kept].to_vec(),
            charge: project(&ops.charge, &spectrum.eigenvectors, kept),
            lowering: project(&ops.annihilation, &spectrum.eigenvectors, kept),
        }
    }

    /// Bare two-level system `{|g⟩, |e⟩}` with splitting `omega_q`; the charge
    /// operator is taken as σ_x.
    pub fn two_level(omega_q: T) -> Self {
        let one = cplx(T::one(), T::zero());
        let mut lowering = CMatrix::from_element(2, 2, czero());
        lowering[(0, 1)] = one;
        let mut charge = CMatrix::from_element(2, 2, czero());
        charge[(0, 1)] = one;
        charge[(1, 0)] = one;
        Self { energies: vec![T::zero(), omega_q], charge, lowering }
    }

    pub fn levels(&self) -> usize {
        self.energies.len()
    }
}

/// Coupled Hamiltonian on `qubit ⊗ resonator`, index `i_q·m + n_r`.
pub fn build_coupled_hamiltonian<T: Real>(
    qubit: &QubitBasis<T>,
    res: &ResonatorParams<T>,
    mode: CouplingMode,
    resonator_levels: usize,
) -> Result<CMatrix<T>> {
    let k = qubit.levels();
    let m = resonator_levels;
    if k < 2 {
        return Err(Error::InvalidDimension { what: "kept fluxonium levels", value: k, min: 2 });
    }
    if m < 2 {
        return Err(Error::InvalidDimension { what: "resonator levels", value: m, min: 2 });
    }
    let dim = k * m;
    let half = T::lit(0.5);
    let mut h = CMatrix::from_element(dim, dim, czero());
    for i in 0..k {
        for n in 0..m {
            let e = qubit.energies[i] + res.omega_r * (T::from_usize_lossy(n) + half);
            h[(i * m + n, i * m + n)] = Cplx::from(e);
        }
    }

    let g = Cplx::from(res.g);
    // ⟨i,n| · |j,n+1⟩ picks up √(n+1) from â; the partner entry is its conjugate.
    for n in 0..m - 1 {
        let sqrt_n1 = T::from_usize_lossy(n + 1).sqrt();
        for i in 0..k {
            for j in 0..k {
                let q = match mode {
                    CouplingMode::ChargeCoupling => qubit.charge[(i, j)],
                    // (ĉ† ⊗ â): ⟨i|ĉ†|j⟩ = conj(⟨j|ĉ|i⟩)
                    CouplingMode::LadderRwa => qubit.lowering[(j, i)].conj(),
                };
                let v = g * q * sqrt_n1;
                h[(i * m + n, j * m + n + 1)] += v;
                h[(j * m + n + 1, i * m + n)] += v.conj();
            }
        }
    }
    Ok(h)
}

/// Coupled Hamiltonian for a fluxonium at `flux`.
pub fn coupled_hamiltonian<T: Real>(
    params: EnergyParams<T>,
    flux: FluxBias<T>,
    res: &ResonatorParams<T>,
    mode: CouplingMode,
    trunc: Truncation,
) -> Result<CMatrix<T>> {
    trunc.validate()?;
    let model = FluxoniumModel::new(params, trunc.fluxonium_dim)?;
    let spectrum = model.spectrum(flux)?;
    let qubit = QubitBasis::from_spectrum(&model, &spectrum, trunc.kept_levels);
    build_coupled_hamiltonian(&qubit, res, mode, trunc.resonator_levels)
}
