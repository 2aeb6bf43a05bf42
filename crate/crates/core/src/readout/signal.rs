use crate::real::{Cplx, Real};

/// Cumulative `M_S(τ) = √(κη) ∫₀^τ 2·Re[e^{−iθ} α_out(t)] dt` (trapezoid),
/// one curve per trajectory.
pub fn measurement_signal<T: Real>(alpha_out: &[Cplx<T>], eta: T, kappa: T, theta: T, dt: T) -> Vec<T> {
    let rot = Cplx::new(theta.cos(), -theta.sin());
    let two = T::lit(2.0);
    let scale = eta.sqrt();
    let sk = kappa.sqrt();
    let half_dt = dt * T::lit(0.5);
    let mut acc = T::zero();
    let mut out = Vec::with_capacity(alpha_out.len());
    let mut prev: Option<T> = None;
    for z in alpha_out {
        let y = two * (rot * z).re;
        if let Some(p) = prev {
            acc += (p + y) * half_dt;
        }
        prev = Some(y);
        // √η applied last so that M_S(η) = √η·M_S(1) holds bitwise
        out.push(scale * (sk * acc));
    }
    out
}

/// Demodulation angle maximizing `|M_S,0(τ_max) − M_S,1(τ_max)|`.
///
/// The signal is linear in `e^{−iθ}`: the contrast is `2√(κη)|D|cos(θ − arg D)`
/// with `D = ∫(α_out,0 − α_out,1) dt`, so the maximum is at `θ = arg D`.
pub fn optimal_theta<T: Real>(alpha_out_0: &[Cplx<T>], alpha_out_1: &[Cplx<T>], dt: T) -> T {
    let n = alpha_out_0.len().min(alpha_out_1.len());
    let mut d = Cplx::new(T::zero(), T::zero());
    for k in 1..n {
        let a = alpha_out_0[k - 1] - alpha_out_1[k - 1];
        let b = alpha_out_0[k] - alpha_out_1[k];
        d += (a + b) * (dt * T::lit(0.5));
    }
    d.im.atan2(d.re)
}

/// `SNR(τ) = |M_S,0 − M_S,1| / √(2κτ)`, defined as 0 at `τ = 0`.
pub fn snr_curve<T: Real>(m_s_0: &[T], m_s_1: &[T], kappa: T, times: &[T]) -> Vec<T> {
    let two = T::lit(2.0);
    times
        .iter()
        .zip(m_s_0.iter().zip(m_s_1))
        .map(|(&tau, (&a, &b))| if tau > T::zero() { (a - b).abs() / (two * kappa * tau).sqrt() } else { T::zero() })
        .collect()
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    T::lit(libm::erfc(x.to_f64_lossy()))
}

/// `½·erfc(SNR/2)`
pub fn readout_error<T: Real>(snr: T) -> T {
    T::lit(0.5) * erfc(snr * T::lit(0.5))
}
