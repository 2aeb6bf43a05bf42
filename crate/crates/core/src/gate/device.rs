use serde::{Deserialize, Serialize};

use crate::coupled::{assign_dressed_levels, build_coupled_hamiltonian, CouplingMode, QubitBasis, ResonatorParams};
use crate::error::{Error, Result};
use crate::linalg::{eigh, identity, kron, CMatrix};
use crate::qubit::{EnergyParams, FluxBias, FluxoniumModel, DEFAULT_FLUXONIUM_DIM};
use crate::real::{Cplx, Real};

/// Simulation space for gate dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateSpace {
    pub fluxonium_dim: usize,
    pub levels_fluxonium: usize,
    pub levels_resonator: usize,
    /// Drop the resonator entirely.
    pub qubit_only: bool,
}

impl Default for GateSpace {
    fn default() -> Self {
        Self { fluxonium_dim: DEFAULT_FLUXONIUM_DIM, levels_fluxonium: 6, levels_resonator: 3, qubit_only: false }
    }
}

impl GateSpace {
    pub fn validate(&self) -> Result<()> {
        if self.levels_fluxonium < 2 {
            return Err(Error::InvalidDimension {
                what: "gate fluxonium levels",
                value: self.levels_fluxonium,
                min: 2,
            });
        }
        if self.levels_fluxonium > self.fluxonium_dim / 2 {
            return Err(Error::InvalidDimension {
                what: "fluxonium basis for gate levels",
                value: self.fluxonium_dim,
                min: 2 * self.levels_fluxonium,
            });
        }
        if !self.qubit_only && self.levels_resonator < 2 {
            return Err(Error::InvalidDimension {
                what: "gate resonator levels",
                value: self.levels_resonator,
                min: 2,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        if self.qubit_only {
            self.levels_fluxonium
        } else {
            self.levels_fluxonium * self.levels_resonator
        }
    }
}

/// Static part of the gate problem at one flux, in the eigenbasis of the
/// undriven Hamiltonian.
#[derive(Debug, Clone)]
pub struct GateDevice<T: Real> {
    pub flux: T,
    pub space: GateSpace,
    /// Eigenvalues of the undriven Hamiltonian (rad/ns), ascending.
    pub energies: Vec<T>,
    /// Qubit charge operator `n̂ ⊗ 1` in that eigenbasis.
    pub charge: CMatrix<T>,
    /// Eigen-indices of the computational states `|0,0⟩`, `|1,0⟩`.
    pub comp: [usize; 2],
    /// Bare `ω₁₂ − ω₀₁`.
    pub anharm: T,
}

impl<T: Real> GateDevice<T> {
    pub fn new(
        params: EnergyParams<T>,
        res: ResonatorParams<T>,
        mode: CouplingMode,
        space: GateSpace,
        flux: FluxBias<T>,
    ) -> Result<Self> {
        space.validate()?;
        let model = FluxoniumModel::new(params, space.fluxonium_dim)?;
        let spectrum = model.spectrum(flux)?;
        let qubit = QubitBasis::from_spectrum(&model, &spectrum, space.levels_fluxonium);
        let anharm = spectrum.transition(2, 1) - spectrum.transition(1, 0);

        if space.qubit_only {
            return Ok(Self {
                flux: flux.0,
                space,
                energies: qubit.energies,
                charge: qubit.charge,
                comp: [0, 1],
                anharm,
            });
        }

        let m = space.levels_resonator;
        let h = build_coupled_hamiltonian(&qubit, &res, mode, m)?;
        let (energies, vectors) = eigh(&h, || format!("gate space at f={}", flux.0))?;
        let levels = assign_dressed_levels(energies.clone(), &vectors, qubit.levels(), m);
        let full = kron(&qubit.charge, &identity(m));
        let mut charge = vectors.adjoint() * full * &vectors;
        // exact Hermiticity after the basis change
        let half = T::lit(0.5);
        for i in 0..charge.nrows() {
            charge[(i, i)] = Cplx::from(charge[(i, i)].re);
            for j in (i + 1)..charge.ncols() {
                let avg = (charge[(i, j)] + charge[(j, i)].conj()) * half;
                charge[(i, j)] = avg;
                charge[(j, i)] = avg.conj();
            }
        }
        let comp = [levels.dressed_index(0, 0), levels.dressed_index(1, 0)];
        Ok(Self { flux: flux.0, space, energies, charge, comp, anharm })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `E|1,0⟩ − E|0,0⟩`
    pub fn qubit_frequency(&self) -> T {
        self.energies[self.comp[1]] - self.energies[self.comp[0]]
    }

    /// `|⟨1,0|n̂|0,0⟩|`
    pub fn transition_charge(&self) -> T {
        self.charge[(self.comp[1], self.comp[0])].norm_sqr().sqrt()
    }
}
