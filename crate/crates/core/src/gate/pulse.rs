use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::real::{Cplx, Real};

/// DRAG pulse `ε_d n̂ [2s(t) sin(ω_d t) + s′(t) cos(ω_d t)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseParams<T> {
    /// ns
    pub tau_g: T,
    /// rad/ns
    pub eps_d: T,
    pub lambda: T,
    /// rad/ns
    pub omega_d: T,
    /// Anharmonicity entering the DRAG term (rad/ns).
    pub anharm: T,
}

impl<T: Real> PulseParams<T> {
    pub fn new(tau_g: T, eps_d: T, lambda: T, omega_d: T, anharm: T) -> Result<Self> {
        if !(tau_g > T::zero()) || !tau_g.is_finite() {
            return Err(Error::InvalidParameter { name: "tau_g", reason: format!("must be positive, got {tau_g}") });
        }
        if !(eps_d >= T::zero()) {
            return Err(Error::InvalidParameter { name: "eps_d", reason: format!("must be >= 0, got {eps_d}") });
        }
        if anharm == T::zero() {
            return Err(Error::SingularAnharmonicity);
        }
        Ok(Self { tau_g, eps_d, lambda, omega_d, anharm })
    }

    pub fn with_shape(self, eps_d: T, lambda: T) -> Result<Self> {
        Self::new(self.tau_g, eps_d, lambda, self.omega_d, self.anharm)
    }
}

fn check_time<T: Real>(t: T, tau_g: T) -> Result<()> {
    if !(t >= T::zero() && t <= tau_g) {
        return Err(Error::Domain { what: "pulse time", value: t.to_f64_lossy(), lo: 0.0, hi: tau_g.to_f64_lossy() });
    }
    Ok(())
}

/// `s(t) = ½(1 − cos(2πt/τ_g))`
pub fn envelope<T: Real>(t: T, tau_g: T) -> Result<T> {
    check_time(t, tau_g)?;
    Ok(T::lit(0.5) * (T::one() - (T::two_pi() * t / tau_g).cos()))
}

/// `s′(t) = (λ/α)·ds/dt = (λ/α)(π/τ_g)·sin(2πt/τ_g)`
pub fn drag_envelope<T: Real>(t: T, tau_g: T, lambda: T, anharm: T) -> Result<T> {
    if anharm == T::zero() {
        return Err(Error::SingularAnharmonicity);
    }
    check_time(t, tau_g)?;
    Ok(lambda / anharm * (T::pi() / tau_g) * (T::two_pi() * t / tau_g).sin())
}

/// Scalar drive `ε_d[2s sin(ω_d t) + s′ cos(ω_d t)]` multiplying n̂.
pub fn drive_signal<T: Real>(pulse: &PulseParams<T>, t: T) -> Result<T> {
    let s = envelope(t, pulse.tau_g)?;
    let ds = drag_envelope(t, pulse.tau_g, pulse.lambda, pulse.anharm)?;
    let w = pulse.omega_d * t;
    Ok(pulse.eps_d * (T::lit(2.0) * s * w.sin() + ds * w.cos()))
}

pub fn build_drive_hamiltonian<T: Real>(pulse: &PulseParams<T>, charge: &CMatrix<T>, t: T) -> Result<CMatrix<T>> {
    Ok(charge * Cplx::from(drive_signal(pulse, t)?))
}
