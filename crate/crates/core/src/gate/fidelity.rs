use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use super::pulse::PulseParams;
use crate::linalg::CMatrix;
use crate::real::{czero, Cplx, Real};

/// Treatment of the relative phase of `|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhasePolicy {
    /// Optimize a virtual Z on `|1⟩` before comparing to the target.
    #[default]
    VirtualZ,
    /// Compare as is.
    Fixed,
}

pub fn pauli_x<T: Real>() -> Matrix2<Cplx<T>> {
    let (o, z) = (Cplx::from(T::one()), czero());
    Matrix2::new(z, o, o, z)
}

/// Outcome of one gate simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct GateResult<T: Real> {
    pub fidelity: T,
    pub leakage: T,
    /// Propagator columns for the computational states (or the full matrix).
    pub propagator: CMatrix<T>,
    pub params: PulseParams<T>,
}

impl<T: Real> GateResult<T> {
    pub fn error(&self) -> T {
        T::one() - self.fidelity
    }
}

/// Average fidelity and leakage of the projected propagator `m`
/// (`m[a][b] = ⟨a|U|b⟩` on the computational states):
/// `F = (Tr M†M + |Tr T†M|²)/6`, `leakage = 1 − Tr(M†M)/2`.
pub fn gate_fidelity<T: Real>(m: &Matrix2<Cplx<T>>, target: &Matrix2<Cplx<T>>, policy: PhasePolicy) -> (T, T) {
    let norm: T = m.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
    // Tr(T† Z_φ M) = A + e^{iφ} B with Z_φ = diag(1, e^{iφ})
    let a = target[(0, 0)].conj() * m[(0, 0)] + target[(0, 1)].conj() * m[(0, 1)];
    let b = target[(1, 0)].conj() * m[(1, 0)] + target[(1, 1)].conj() * m[(1, 1)];
    let overlap = match policy {
        PhasePolicy::VirtualZ => a.norm_sqr().sqrt() + b.norm_sqr().sqrt(),
        PhasePolicy::Fixed => (a + b).norm_sqr().sqrt(),
    };
    let fidelity = (norm + overlap * overlap) / T::lit(6.0);
    let leakage = T::one() - norm * T::lit(0.5);
    (fidelity.min(T::one()), leakage.max(T::zero()))
}

/// `M[a][b] = U[comp[a], b]` from the two integrated computational columns.
pub(crate) fn projected<T: Real>(u_cols: &CMatrix<T>, comp: [usize; 2]) -> Matrix2<Cplx<T>> {
    Matrix2::new(u_cols[(comp[0], 0)], u_cols[(comp[0], 1)], u_cols[(comp[1], 0)], u_cols[(comp[1], 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha20Rng;
    use rand_core::{RngCore, SeedableRng};

    fn gaussian(rng: &mut ChaCha20Rng) -> (f64, f64) {
        let u1 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let a = 2.0 * std::f64::consts::PI * u2;
        (r * a.cos(), r * a.sin())
    }

    #[test]
    fn perfect_and_identity() {
        let x = pauli_x::<f64>();
        let (f, l) = gate_fidelity(&x, &x, PhasePolicy::Fixed);
        assert!((f - 1.0).abs() < 1e-15 && l.abs() < 1e-15);
        let (f, _) = gate_fidelity(&Matrix2::identity(), &x, PhasePolicy::Fixed);
        assert!((f - 1.0 / 3.0).abs() < 1e-15);
        let (f, _) = gate_fidelity(&Matrix2::identity(), &x, PhasePolicy::VirtualZ);
        assert!((f - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn virtual_z_removes_relative_phase() {
        let x = pauli_x::<f64>();
        let z = Matrix2::new(Cplx::from(1.0), czero(), czero(), Cplx::from_polar(1.0, 0.8));
        let m = z * x * Cplx::from_polar(1.0, -0.3);
        let (f, _) = gate_fidelity(&m, &x, PhasePolicy::VirtualZ);
        assert!((f - 1.0).abs() < 1e-15);
        assert!(gate_fidelity(&m, &x, PhasePolicy::Fixed).0 < 0.99);
    }

    #[test]
    fn haar_mean_is_one_half() {
        let x = pauli_x::<f64>();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let n = 10_000;
        let mut sum = 0.0;
        for _ in 0..n {
            // uniform point on S³ is Haar SU(2); a global phase does not change F
            let (a, b) = (gaussian(&mut rng), gaussian(&mut rng));
            let nrm = (a.0 * a.0 + a.1 * a.1 + b.0 * b.0 + b.1 * b.1).sqrt();
            let (alpha, beta) = (Cplx::new(a.0, a.1) / nrm, Cplx::new(b.0, b.1) / nrm);
            let u = Matrix2::new(alpha, -beta.conj(), beta, alpha.conj());
            let (f, l) = gate_fidelity(&u, &x, PhasePolicy::Fixed);
            assert!(l.abs() < 1e-12);
            sum += f;
        }
        let mean = sum / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "{mean}");
    }

    #[test]
    fn bounds_hold_for_contractions() {
        let x = pauli_x::<f64>();
        let m = Matrix2::new(Cplx::new(0.1, 0.2), Cplx::new(0.7, -0.1), Cplx::new(0.6, 0.3), Cplx::new(-0.05, 0.0));
        for policy in [PhasePolicy::Fixed, PhasePolicy::VirtualZ] {
            let (f, l) = gate_fidelity(&m, &x, policy);
            assert!((0.0..=1.0).contains(&f) && (0.0..=1.0).contains(&l));
        }
    }
}
