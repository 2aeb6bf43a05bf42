use crate::real::{cis, cplx, Cplx, Real};

/// `φ_qb = 2·atan(2χ/κ)`
pub fn qubit_phase_shift<T: Real>(chi: T, kappa: T) -> T {
    T::lit(2.0) * (T::lit(2.0) * chi / kappa).atan()
}

/// Drive `ε = √(n̄(κ²/4 + χ²))` giving a steady-state photon number `n̄`.
pub fn drive_amplitude<T: Real>(n_bar: T, kappa: T, chi: T) -> T {
    (n_bar * (kappa * kappa / T::lit(4.0) + chi * chi)).sqrt()
}

/// `⟨â_in⟩ = −ε/√κ`
pub fn input_field<T: Real>(kappa: T, epsilon: T) -> Cplx<T> {
    cplx(-epsilon / kappa.sqrt(), T::zero())
}

/// Intracavity field for static `χ` with the cavity initially empty.
pub fn static_intracavity_field<T: Real>(chi: T, kappa: T, epsilon: T, sigma_z: T, tau: T) -> Cplx<T> {
    let rate = cplx(kappa * T::lit(0.5), chi * sigma_z);
    let decay = decay(rate, tau);
    (Cplx::from(T::one()) - decay) * epsilon / rate
}

/// Closed-form output field `α_out(τ)` for static `χ`, cavity initially empty.
///
/// Equals `α_in` at `τ = 0` and tends to `(ε/√κ)·e^{−iφ_qb σz}`.
pub fn static_output_field<T: Real>(chi: T, kappa: T, epsilon: T, sigma_z: T, tau: T) -> Cplx<T> {
    let sk = kappa.sqrt();
    let half = kappa * T::lit(0.5);
    let rate = cplx(half, chi * sigma_z);
    let decay = decay(rate, tau);
    // −ε/√κ + √κ·ε(1 − e^{−λτ})/λ, written over the common denominator λ
    let num = cplx(half, -chi * sigma_z) - decay * kappa;
    num * (epsilon / sk) / rate
}

/// `e^{−λτ}`
fn decay<T: Real>(rate: Cplx<T>, tau: T) -> Cplx<T> {
    cis(-rate.im * tau) * (-rate.re * tau).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::mhz;
    use std::f64::consts::PI;

    #[test]
    fn phase_shift_values() {
        assert_eq!(qubit_phase_shift(0.0_f64, 1.0), 0.0);
        assert!((qubit_phase_shift(0.5_f64, 1.0) - PI / 2.0).abs() < 1e-15);
        assert!((qubit_phase_shift(mhz::<f64>(0.527), mhz::<f64>(5.0)) - 0.4156).abs() < 1e-4);
        assert!(qubit_phase_shift(-0.3, 1.0) < 0.0);
    }

    #[test]
    fn drive_amplitude_values() {
        assert_eq!(drive_amplitude(0.0, 1.0, 0.3), 0.0);
        assert!((drive_amplitude(4.0_f64, 2.0, 0.0) - 2.0).abs() < 1e-15);
        assert!((drive_amplitude(10.0, mhz::<f64>(5.0), mhz::<f64>(0.527)) - 0.05077).abs() < 1e-4);
    }

    #[test]
    fn closed_form_limits() {
        let (chi, kappa) = (mhz::<f64>(0.527), mhz::<f64>(5.0));
        let eps = drive_amplitude(10.0, kappa, chi);
        let a0 = static_output_field(chi, kappa, eps, 1.0, 0.0);
        assert!((a0 - input_field(kappa, eps)).norm() < 1e-15);

        let inf = static_output_field(chi, kappa, eps, 1.0, 1e5);
        let phi = qubit_phase_shift(chi, kappa);
        assert!((inf.norm() - eps / kappa.sqrt()).abs() < 1e-12);
        assert!((inf.arg() + phi).abs() < 1e-12);

        for tau in [0.0, 3.0, 40.0, 700.0] {
            let p = static_output_field(chi, kappa, eps, 1.0, tau);
            let m = static_output_field(chi, kappa, eps, -1.0, tau);
            assert!((p.conj() - m).norm() < 1e-15);
        }
    }

    #[test]
    fn intracavity_steady_state_photon_number() {
        let (chi, kappa) = (mhz::<f64>(-7.95), mhz::<f64>(5.0));
        let eps = drive_amplitude(10.0, kappa, chi);
        let a = static_intracavity_field(chi, kappa, eps, -1.0, 1e5);
        assert!((a.norm_sqr() - 10.0).abs() < 1e-10);
    }
}
