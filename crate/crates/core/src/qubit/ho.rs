use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::real::{cplx, czero, Real};

/// Truncated harmonic-oscillator basis used to represent the fluxonium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoBasis<T> {
    pub dim: usize,
    /// Zero-point flux scale `(8 E_C / E_L)^{1/4}`.
    pub phi0: T,
}

impl<T: Real> HoBasis<T> {
    pub fn new(dim: usize, phi0: T) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { what: "oscillator dimension", value: dim, min: 2 });
        }
        if !(phi0 > T::zero()) || !phi0.is_finite() {
            return Err(Error::InvalidParameter { name: "phi0", reason: format!("must be positive, got {phi0}") });
        }
        Ok(Self { dim, phi0 })
    }
}

/// Ladder, charge and flux operators on a truncated oscillator basis.
#[derive(Debug, Clone)]
pub struct HoOperators<T: Real> {
    pub annihilation: CMatrix<T>,
    pub creation: CMatrix<T>,
    /// `n̂ = −i/(√2 φ₀) (ĉ − ĉ†)`
    pub charge: CMatrix<T>,
    /// `φ̂ = φ₀/√2 (ĉ + ĉ†)`
    pub flux: CMatrix<T>,
}

pub fn build_ho_operators<T: Real>(dim: usize, phi0: T) -> Result<HoOperators<T>> {
    let basis = HoBasis::new(dim, phi0)?;
    let dim = basis.dim;
    let sqrt2 = T::lit(2.0).sqrt();

    let mut annihilation = CMatrix::from_element(dim, dim, czero());
    for k in 1..dim {
        annihilation[(k - 1, k)] = cplx(T::from_usize_lossy(k).sqrt(), T::zero());
    }
    let creation = annihilation.adjoint();

    // Entries are filled directly (rather than via matrix sums) so that n̂ and
    // φ̂ are Hermitian bit-for-bit.
    let mut charge = CMatrix::from_element(dim, dim, czero());
    let mut flux = CMatrix::from_element(dim, dim, czero());
    let n_scale = T::one() / (sqrt2 * phi0);
    let f_scale = phi0 / sqrt2;
    for k in 1..dim {
        let s = T::from_usize_lossy(k).sqrt();
        // −i(ĉ − ĉ†): (k−1,k) → −i√k, (k,k−1) → +i√k
        charge[(k - 1, k)] = cplx(T::zero(), -n_scale * s);
        charge[(k, k - 1)] = cplx(T::zero(), n_scale * s);
        flux[(k - 1, k)] = cplx(f_scale * s, T::zero());
        flux[(k, k - 1)] = cplx(f_scale * s, T::zero());
    }

    Ok(HoOperators { annihilation, creation, charge, flux })
}

/// Reflection `φ → −φ` in the oscillator basis: `diag((−1)^k)`.
pub fn parity_operator<T: Real>(dim: usize) -> CMatrix<T> {
    CMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            czero()
        } else if i % 2 == 0 {
            cplx(T::one(), T::zero())
        } else {
            cplx(-T::one(), T::zero())
        }
    })
}
