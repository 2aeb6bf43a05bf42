use serde::{Deserialize, Serialize};

use super::ho::{build_ho_operators, HoBasis, HoOperators};
use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix};
use crate::real::{czero, Cplx, Real};
use crate::units;

/// Default oscillator truncation for the bare fluxonium.
pub const DEFAULT_FLUXONIUM_DIM: usize = 40;

/// Josephson, charging and inductive energies in rad/ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyParams<T> {
    pub e_j: T,
    pub e_c: T,
    pub e_l: T,
}

impl<T: Real> EnergyParams<T> {
    /// `e_j = 0` is accepted: it is the harmonic limit.
    pub fn new(e_j: T, e_c: T, e_l: T) -> Result<Self> {
        let check = |name, v: T, strict: bool| {
            let ok = v.is_finite() && if strict { v > T::zero() } else { v >= T::zero() };
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!(
                        "must be {}finite, got {v}",
                        if strict { "positive and " } else { "non-negative and " }
                    ),
                })
            }
        };
        check("e_j", e_j, false)?;
        check("e_c", e_c, true)?;
        check("e_l", e_l, true)?;
        Ok(Self { e_j, e_c, e_l })
    }

    /// Energies given as ν = E/2π in GHz.
    pub fn from_ghz(e_j: T, e_c: T, e_l: T) -> Result<Self> {
        Self::new(units::ghz(e_j), units::ghz(e_c), units::ghz(e_l))
    }

    pub fn with_e_j(self, e_j: T) -> Result<Self> {
        Self::new(e_j, self.e_c, self.e_l)
    }

    /// `(8 E_C / E_L)^{1/4}`
    pub fn phi0(&self) -> T {
        (T::lit(8.0) * self.e_c / self.e_l).sqrt().sqrt()
    }

    /// Plasma frequency `√(8 E_C E_L)`: level spacing in the harmonic limit.
    pub fn plasma_frequency(&self) -> T {
        (T::lit(8.0) * self.e_c * self.e_l).sqrt()
    }
}

/// Reduced external flux `f = Φ_ext/Φ₀`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FluxBias<T>(pub T);

impl<T: Real> FluxBias<T> {
    pub fn new(f: T) -> Result<Self> {
        if f.is_finite() {
            Ok(Self(f))
        } else {
            Err(Error::InvalidParameter { name: "flux", reason: format!("must be finite, got {f}") })
        }
    }

    pub fn value(self) -> T {
        self.0
    }

    /// `φ_ext = 2π f`
    pub fn phi_ext(self) -> T {
        T::two_pi() * self.0
    }

    /// Representative in `[0, 1)`.
    pub fn canonical(self) -> Self {
        let r = self.0 - self.0.floor();
        Self(if r >= T::one() { T::zero() } else { r })
    }

    pub fn offset(self, delta: T) -> Self {
        Self(self.0 + delta)
    }
}

/// Operators and the spectral decomposition of φ̂ for one (E_C, E_L, dim).
///
/// Sweeps over flux or E_J reuse one model so φ̂ is diagonalized once.
#[derive(Debug, Clone)]
pub struct FluxoniumModel<T: Real> {
    params: EnergyParams<T>,
    basis: HoBasis<T>,
    ops: HoOperators<T>,
    /// `4 E_C n̂² + ½ E_L φ̂²`
    quadratic: CMatrix<T>,
    flux_eigenvalues: Vec<T>,
    flux_eigenvectors: CMatrix<T>,
}

impl<T: Real> FluxoniumModel<T> {
    pub fn new(params: EnergyParams<T>, dim: usize) -> Result<Self> {
        let basis = HoBasis::new(dim, params.phi0())?;
        let ops = build_ho_operators(dim, basis.phi0)?;
        let n2 = &ops.charge * &ops.charge;
        let phi2 = &ops.flux * &ops.flux;
        let quadratic = n2 * Cplx::from(T::lit(4.0) * params.e_c) + phi2 * Cplx::from(T::lit(0.5) * params.e_l);
        let (flux_eigenvalues, flux_eigenvectors) = eigh(&ops.flux, || format!("flux operator, dim {dim}"))?;
        Ok(Self { params, basis, ops, quadratic, flux_eigenvalues, flux_eigenvectors })
    }

    pub fn params(&self) -> &EnergyParams<T> {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.basis.dim
    }

    pub fn operators(&self) -> &HoOperators<T> {
        &self.ops
    }

    /// Same oscillator basis with a different Josephson energy.
    pub fn with_e_j(&self, e_j: T) -> Result<Self> {
        let params = self.params.with_e_j(e_j)?;
        Ok(Self { params, ..self.clone() })
    }

    /// `cos(φ̂ − φ_ext)` by spectral calculus on the truncated φ̂.
    pub fn cos_phase(&self, flux: FluxBias<T>) -> CMatrix<T> {
        let phi_ext = flux.phi_ext();
        let w = &self.flux_eigenvectors;
        let n = self.dim();
        let mut scaled = w.clone();
        for (col, &lam) in self.flux_eigenvalues.iter().enumerate() {
            let c = (lam - phi_ext).cos();
            for row in 0..n {
                scaled[(row, col)] *= c;
            }
        }
        scaled * w.adjoint()
    }

    /// `4E_C n̂² + ½E_L φ̂² − E_J cos(φ̂ − φ_ext)`, symmetrized to be exactly Hermitian.
    pub fn hamiltonian(&self, flux: FluxBias<T>) -> CMatrix<T> {
        self.hamiltonian_with_e_j(flux, self.params.e_j)
    }

    fn hamiltonian_with_e_j(&self, flux: FluxBias<T>, e_j: T) -> CMatrix<T> {
        let mut h = &self.quadratic - self.cos_phase(flux) * Cplx::from(e_j);
        let n = self.dim();
        let half = T::lit(0.5);
        for i in 0..n {
            h[(i, i)] = Cplx::from(h[(i, i)].re);
            for j in (i + 1)..n {
                let avg = (h[(i, j)] + h[(j, i)].conj()) * half;
                h[(i, j)] = avg;
                h[(j, i)] = avg.conj();
            }
        }
        h
    }

    pub fn spectrum(&self, flux: FluxBias<T>) -> Result<Spectrum<T>> {
        self.spectrum_for(self.params, flux)
    }

    /// Spectrum for `params`, which must share E_C and E_L with the model.
    pub fn spectrum_for(&self, params: EnergyParams<T>, flux: FluxBias<T>) -> Result<Spectrum<T>> {
        if !self.shares_basis(&params) {
            return FluxoniumModel::new(params, self.dim())?.spectrum(flux);
        }
        let h = self.hamiltonian_with_e_j(flux, params.e_j);
        let (eigenvalues, eigenvectors) = eigh(&h, || {
            format!(
                "fluxonium E_J={:.6} E_C={:.6} E_L={:.6} rad/ns, f={}, dim={}",
                params.e_j,
                self.params.e_c,
                self.params.e_l,
                flux.0,
                self.dim()
            )
        })?;
        Ok(Spectrum { eigenvalues, eigenvectors, params, flux, dim: self.dim() })
    }

    /// True when `params` has the same E_C and E_L (hence the same operators).
    pub fn shares_basis(&self, params: &EnergyParams<T>) -> bool {
        params.e_c == self.params.e_c && params.e_l == self.params.e_l
    }
}

/// Eigen-decomposition of the bare fluxonium at one bias point.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Real> {
    /// Ascending, rad/ns.
    pub eigenvalues: Vec<T>,
    /// Column `k` is eigenstate `|k⟩` in the oscillator basis.
    pub eigenvectors: CMatrix<T>,
    pub params: EnergyParams<T>,
    pub flux: FluxBias<T>,
    pub dim: usize,
}

impl<T: Real> Spectrum<T> {
    /// Levels trusted for matrix elements (half the truncation).
    pub fn converged_levels(&self) -> usize {
        self.dim / 2
    }

    pub fn transition(&self, i: usize, j: usize) -> T {
        self.eigenvalues[i] - self.eigenvalues[j]
    }

    /// `⟨i|op|j⟩` for an operator given in the oscillator basis.
    pub fn matrix_element(&self, op: &CMatrix<T>, i: usize, j: usize) -> Cplx<T> {
        let vi = self.eigenvectors.column(i);
        let vj = self.eigenvectors.column(j);
        let opvj = op * vj;
        vi.iter().zip(opvj.iter()).fold(czero(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn to_record(&self) -> SpectrumRecord {
        let n = self.dim;
        let mut eigenvectors = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let z = self.eigenvectors[(r, c)];
                eigenvectors.push([z.re.to_f64_lossy(), z.im.to_f64_lossy()]);
            }
        }
        SpectrumRecord {
            e_j_ghz: units::to_ghz(self.params.e_j).to_f64_lossy(),
            e_c_ghz: units::to_ghz(self.params.e_c).to_f64_lossy(),
            e_l_ghz: units::to_ghz(self.params.e_l).to_f64_lossy(),
            flux: self.flux.0.to_f64_lossy(),
            dim: n,
            eigenvalues_ghz: self.eigenvalues.iter().map(|&w| units::to_ghz(w).to_f64_lossy()).collect(),
            eigenvectors,
        }
    }
}

/// JSON layout of a spectrum: eigenvalues as ν = ω/2π in GHz, eigenvectors
/// row-major as `[re, im]` pairs (`eigenvectors[r*dim + c]` is component `r`
/// of eigenstate `c`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub e_j_ghz: f64,
    pub e_c_ghz: f64,
    pub e_l_ghz: f64,
    pub flux: f64,
    pub dim: usize,
    pub eigenvalues_ghz: Vec<f64>,
    pub eigenvectors: Vec<[f64; 2]>,
}

impl SpectrumRecord {
    /// Rebuilds the spectrum. Energies pass through GHz, so they can differ
    /// from the original in the last bit.
    pub fn to_spectrum(&self) -> Result<Spectrum<f64>> {
        let n = self.dim;
        if self.eigenvalues_ghz.len() != n || self.eigenvectors.len() != n * n {
            return Err(Error::InvalidParameter {
                name: "spectrum record",
                reason: format!("inconsistent with dim {n}"),
            });
        }
        let eigenvectors = CMatrix::from_fn(n, n, |r, c| {
            let [re, im] = self.eigenvectors[r * n + c];
            Cplx::new(re, im)
        });
        Ok(Spectrum {
            eigenvalues: self.eigenvalues_ghz.iter().map(|&v| units::ghz(v)).collect(),
            eigenvectors,
            params: EnergyParams::from_ghz(self.e_j_ghz, self.e_c_ghz, self.e_l_ghz)?,
            flux: FluxBias(self.flux),
            dim: n,
        })
    }
}

pub fn build_fluxonium_hamiltonian<T: Real>(
    params: EnergyParams<T>,
    flux: FluxBias<T>,
    dim: usize,
) -> Result<CMatrix<T>> {
    Ok(FluxoniumModel::new(params, dim)?.hamiltonian(flux))
}

pub fn fluxonium_spectrum<T: Real>(params: EnergyParams<T>, flux: FluxBias<T>, dim: usize) -> Result<Spectrum<T>> {
    FluxoniumModel::new(params, dim)?.spectrum(flux)
}

/// `⟨i|n̂|j⟩` in the eigenbasis; indices must be below `dim/2`.
pub fn charge_matrix_element<T: Real>(spec: &Spectrum<T>, i: usize, j: usize) -> Result<Cplx<T>> {
    let bound = spec.converged_levels();
    if i >= bound || j >= bound {
        return Err(Error::LevelOutOfRange { i, j, bound });
    }
    let ops = build_ho_operators(spec.dim, spec.params.phi0())?;
    Ok(spec.matrix_element(&ops.charge, i, j))
}

/// `ω_q = ω₁ − ω₀`
pub fn qubit_frequency<T: Real>(params: EnergyParams<T>, flux: FluxBias<T>, dim: usize) -> Result<T> {
    let s = fluxonium_spectrum(params, flux, dim)?;
    Ok(s.transition(1, 0))
}

/// `α = (ω₂ − ω₁) − (ω₁ − ω₀)`
pub fn anharmonicity<T: Real>(params: EnergyParams<T>, flux: FluxBias<T>, dim: usize) -> Result<T> {
    let s = fluxonium_spectrum(params, flux, dim)?;
    Ok(s.transition(2, 1) - s.transition(1, 0))
}
