use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{cplx, czero, Cplx, Real};

/// Uniform grid `t_k = k·dt`, `k = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid<T> {
    pub dt: T,
    pub steps: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(dt: T, steps: usize) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: format!("must be positive and finite, got {dt}"),
            });
        }
        Ok(Self { dt, steps })
    }

    /// Grid reaching `t_max`, rounded to the nearest whole step.
    pub fn span(t_max: T, dt: T) -> Result<Self> {
        let grid = Self::new(dt, 0)?;
        if !(t_max >= dt) {
            return Err(Error::InvalidParameter { name: "t_max", reason: format!("must be at least dt, got {t_max}") });
        }
        let steps = (t_max / dt).round().to_f64_lossy() as usize;
        Ok(Self { steps, ..grid })
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, k: usize) -> T {
        self.dt * T::from_usize_lossy(k)
    }

    pub fn times(&self) -> Vec<T> {
        (0..self.len()).map(|k| self.time(k)).collect()
    }

    pub fn t_max(&self) -> T {
        self.time(self.steps)
    }
}

/// RK4 integration of `α̇ = −iχ(t)σz α − κα/2 − √κ α_in` from `α(0) = 0`,
/// with `α_in = −ε/√κ`. Returns the intracavity field on the grid.
pub fn integrate_langevin<T: Real>(
    mut chi_of_t: impl FnMut(T) -> Result<T>,
    kappa: T,
    epsilon: T,
    sigma_z: T,
    grid: TimeGrid<T>,
) -> Result<Vec<Cplx<T>>> {
    let half_kappa = kappa * T::lit(0.5);
    let drive = Cplx::from(epsilon);
    let rhs = |chi: T, a: Cplx<T>| -> Cplx<T> { -cplx(half_kappa, chi * sigma_z) * a + drive };

    let dt = grid.dt;
    let h2 = dt * T::lit(0.5);
    let sixth = dt / T::lit(6.0);
    let mut out = Vec::with_capacity(grid.len());
    let mut a = czero();
    out.push(a);
    let mut chi_start = chi_of_t(T::zero())?;
    for k in 0..grid.steps {
        let t = grid.time(k);
        let chi_mid = chi_of_t(t + h2)?;
        let chi_end = chi_of_t(grid.time(k + 1))?;
        let k1 = rhs(chi_start, a);
        let k2 = rhs(chi_mid, a + k1 * h2);
        let k3 = rhs(chi_mid, a + k2 * h2);
        let k4 = rhs(chi_end, a + k3 * dt);
        a += (k1 + (k2 + k3) * T::lit(2.0) + k4) * sixth;
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::NonFinite { what: "intracavity field", t: grid.time(k + 1).to_f64_lossy() });
        }
        out.push(a);
        chi_start = chi_end;
    }
    Ok(out)
}

/// Input–output relation `α_out = α_in + √κ α`.
pub fn output_field<T: Real>(alpha: &[Cplx<T>], kappa: T, epsilon: T) -> Vec<Cplx<T>> {
    let sk = kappa.sqrt();
    let a_in = super::field::input_field(kappa, epsilon);
    alpha.iter().map(|&a| a_in + a * sk).collect()
}
