//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::real::{czero, Cplx, Real};

/// Dense complex matrix.
pub type CMatrix<T> = DMatrix<Cplx<T>>;

const MAX_SWEEPS: usize = 10_000;

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues and a
/// deterministic eigenvector phase.
///
/// Each eigenvector column is rotated so that its largest-magnitude component
/// is real and positive; ties go to the lowest index.
pub fn eigh<T: Real>(m: &CMatrix<T>, context: impl FnOnce() -> String) -> Result<(Vec<T>, CMatrix<T>)> {
    let n = m.nrows();
    let eig = match SymmetricEigen::try_new(m.clone(), T::default_epsilon(), MAX_SWEEPS) {
        Some(eig) if eig.eigenvalues.iter().all(|v| v.is_finite()) => eig,
        _ => return Err(Error::EigenFailure { context: context() }),
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite eigenvalues"));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::from_element(n, n, czero());
    for (col, &k) in order.iter().enumerate() {
        let src = eig.eigenvectors.column(k);
        let phase = phase_of_largest(src.iter().copied());
        for row in 0..n {
            vectors[(row, col)] = src[row] * phase;
        }
    }
    Ok((values, vectors))
}

/// Unit phase `z̄/|z|` of the first strictly-largest component.
fn phase_of_largest<T: Real>(column: impl Iterator<Item = Cplx<T>>) -> Cplx<T> {
    let mut best = czero::<T>();
    let mut best_mag = T::zero();
    for z in column {
        let mag = z.norm_sqr();
        if mag > best_mag {
            best_mag = mag;
            best = z;
        }
    }
    if best_mag == T::zero() {
        return Cplx::new(T::one(), T::zero());
    }
    best.conj() / best_mag.sqrt()
}

/// Largest entry of |M − M†|.
pub fn hermiticity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Largest entry magnitude.
pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
}

/// `max |U†U − I|`.
pub fn unitarity_defect<T: Real>(u: &CMatrix<T>) -> T {
    let g = u.adjoint() * u;
    let mut worst = T::zero();
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { T::one() } else { T::zero() };
            let d = (g[(i, j)] - Cplx::new(target, T::zero())).norm_sqr().sqrt();
            worst = worst.max(d);
        }
    }
    worst
}

/// Kronecker product `a ⊗ b` (row index = i_a·dim_b + i_b).
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Identity of size `n`.
pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

/// Diagonal matrix from real entries.
pub fn diag<T: Real>(d: &[T]) -> CMatrix<T> {
    let n = d.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { Cplx::new(d[i], T::zero()) } else { czero() })
}

/// `V† A V` restricted to the first `k` columns of `v`.
pub fn project<T: Real>(op: &CMatrix<T>, v: &CMatrix<T>, k: usize) -> CMatrix<T> {
    let vk = v.columns(0, k);
    vk.adjoint() * op * vk
}
