use serde::{Deserialize, Serialize};

use super::device::GateDevice;
use super::pulse::{drag_envelope, envelope, PulseParams};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::real::{cis, czero, Cplx, Real};

pub const DEFAULT_GATE_DT_NS: f64 = 2e-3;
pub const UNITARITY_TOLERANCE: f64 = 1e-8;

/// Frame in which the time-dependent Schrödinger equation is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveFrame {
    /// Interaction picture of the undriven Hamiltonian; the free phases are
    /// applied exactly at the end. Only the drive is integrated.
    #[default]
    Interaction,
    /// Full Hamiltonian in the lab frame.
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateOptions<T> {
    /// ns
    pub dt: T,
    pub frame: DriveFrame,
}

impl<T: Real> Default for GateOptions<T> {
    fn default() -> Self {
        Self { dt: T::lit(DEFAULT_GATE_DT_NS), frame: DriveFrame::default() }
    }
}

/// Lab-frame propagator `U(τ_g)` by RK4, in the device eigenbasis.
///
/// With `columns`, only `U|k⟩` for the listed eigen-indices is integrated;
/// the result then has one column per entry.
pub fn propagate_gate<T: Real>(
    device: &GateDevice<T>,
    pulse: &PulseParams<T>,
    opts: &GateOptions<T>,
    columns: Option<&[usize]>,
) -> Result<CMatrix<T>> {
    GatePropagator::new(device, pulse, opts)?.run(pulse.eps_d, pulse.lambda, columns)
}

/// Pulse-shape–independent tables for repeated propagation with varying
/// `(ε_d, λ)`: the drive is `ε_d·(a(t) + λ·b(t))` sampled at half steps.
pub struct GatePropagator<'a, T: Real> {
    device: &'a GateDevice<T>,
    frame: DriveFrame,
    tau_g: T,
    steps: usize,
    h: T,
    /// Frame energies (shifted in the lab frame).
    energies: Vec<T>,
    e_ref: T,
    n_rows: Vec<Cplx<T>>,
    in_phase: Vec<T>,
    quadrature: Vec<T>,
    /// `e^{iE_k t}` at each half step (interaction frame only).
    phases: Vec<Cplx<T>>,
}

impl<'a, T: Real> GatePropagator<'a, T> {
    pub fn new(device: &'a GateDevice<T>, pulse: &PulseParams<T>, opts: &GateOptions<T>) -> Result<Self> {
        if !(opts.dt > T::zero()) {
            return Err(Error::InvalidParameter { name: "dt", reason: format!("must be positive, got {}", opts.dt) });
        }
        let dim = device.dim();
        let tau = pulse.tau_g;
        let steps = (tau / opts.dt).ceil().to_f64_lossy().max(1.0) as usize;
        let h = tau / T::from_usize_lossy(steps);
        let half = h * T::lit(0.5);

        // Lab frame runs relative to the computational ground state; the
        // common phase is restored at the end.
        let e_ref = device.energies[device.comp[0]];
        let energies: Vec<T> = match opts.frame {
            DriveFrame::Interaction => device.energies.clone(),
            DriveFrame::Lab => device.energies.iter().map(|&e| e - e_ref).collect(),
        };
        let mut n_rows = vec![czero::<T>(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                n_rows[i * dim + j] = device.charge[(i, j)];
            }
        }

        let samples = 2 * steps + 1;
        let mut in_phase = Vec::with_capacity(samples);
        let mut quadrature = Vec::with_capacity(samples);
        let mut phases = Vec::new();
        for q in 0..samples {
            let t = if q == samples - 1 { tau } else { half * T::from_usize_lossy(q) };
            let s = envelope(t, tau)?;
            let ds = drag_envelope(t, tau, T::one(), pulse.anharm)?;
            let w = pulse.omega_d * t;
            in_phase.push(T::lit(2.0) * s * w.sin());
            quadrature.push(ds * w.cos());
            if opts.frame == DriveFrame::Interaction {
                phases.extend(energies.iter().map(|&e| cis(e * t)));
            }
        }
        Ok(Self {
            device,
            frame: opts.frame,
            tau_g: tau,
            steps,
            h,
            energies,
            e_ref,
            n_rows,
            in_phase,
            quadrature,
            phases,
        })
    }

    pub fn device(&self) -> &GateDevice<T> {
        self.device
    }

    /// Integrates the listed columns (all when `None`) for drive `(eps_d, lambda)`.
    pub fn run(&self, eps_d: T, lambda: T, columns: Option<&[usize]>) -> Result<CMatrix<T>> {
        let dim = self.device.dim();
        let all: Vec<usize> = (0..dim).collect();
        let cols = columns.unwrap_or(&all);
        if let Some(&bad) = cols.iter().find(|&&c| c >= dim) {
            return Err(Error::LevelOutOfRange { i: bad, j: 0, bound: dim });
        }
        let nc = cols.len();
        let len = dim * nc;

        // state: column-major, dim × nc
        let mut y = vec![czero::<T>(); len];
        for (c, &k) in cols.iter().enumerate() {
            y[c * dim + k] = Cplx::from(T::one());
        }

        let minus_i = Cplx::new(T::zero(), -T::one());
        let mut tmp = vec![czero::<T>(); dim];
        let n_rows = &self.n_rows;
        let energies = &self.energies;
        let mut deriv = |q: usize, y: &[Cplx<T>], out: &mut [Cplx<T>]| {
            let amp = eps_d * (self.in_phase[q] + lambda * self.quadrature[q]);
            match self.frame {
                DriveFrame::Interaction => {
                    let phase = &self.phases[q * dim..(q + 1) * dim];
                    for c in 0..nc {
                        let col = &y[c * dim..(c + 1) * dim];
                        for i in 0..dim {
                            tmp[i] = phase[i].conj() * col[i];
                        }
                        for i in 0..dim {
                            let row = &n_rows[i * dim..(i + 1) * dim];
                            let mut acc = czero();
                            for j in 0..dim {
                                acc += row[j] * tmp[j];
                            }
                            out[c * dim + i] = minus_i * phase[i] * acc * amp;
                        }
                    }
                }
                DriveFrame::Lab => {
                    for c in 0..nc {
                        let col = &y[c * dim..(c + 1) * dim];
                        for i in 0..dim {
                            let row = &n_rows[i * dim..(i + 1) * dim];
                            let mut acc = czero();
                            for j in 0..dim {
                                acc += row[j] * col[j];
                            }
                            out[c * dim + i] = minus_i * (acc * amp + col[i] * energies[i]);
                        }
                    }
                }
            }
        };

        let (mut k1, mut k2, mut k3, mut k4) =
            (vec![czero(); len], vec![czero(); len], vec![czero(); len], vec![czero(); len]);
        let mut stage = vec![czero(); len];
        let h = self.h;
        let half = h * T::lit(0.5);
        let sixth = h / T::lit(6.0);
        let two = T::lit(2.0);
        for s in 0..self.steps {
            let q = 2 * s;
            deriv(q, &y, &mut k1);
            for i in 0..len {
                stage[i] = y[i] + k1[i] * half;
            }
            deriv(q + 1, &stage, &mut k2);
            for i in 0..len {
                stage[i] = y[i] + k2[i] * half;
            }
            deriv(q + 1, &stage, &mut k3);
            for i in 0..len {
                stage[i] = y[i] + k3[i] * h;
            }
            deriv(q + 2, &stage, &mut k4);
            for i in 0..len {
                y[i] += (k1[i] + (k2[i] + k3[i]) * two + k4[i]) * sixth;
            }
        }

        let mut u = CMatrix::from_element(dim, nc, czero());
        for c in 0..nc {
            for i in 0..dim {
                let v = y[c * dim + i];
                u[(i, c)] = match self.frame {
                    DriveFrame::Interaction => cis(-self.energies[i] * self.tau_g) * v,
                    DriveFrame::Lab => cis(-self.e_ref * self.tau_g) * v,
                };
            }
        }

        let defect = column_defect(&u);
        if !(defect < T::lit(UNITARITY_TOLERANCE)) {
            return Err(Error::StepSize {
                defect: defect.to_f64_lossy(),
                tolerance: UNITARITY_TOLERANCE,
                dt: h.to_f64_lossy(),
                steps: self.steps,
            });
        }
        Ok(u)
    }
}

/// `‖U†U − I‖_max` over the integrated columns.
fn column_defect<T: Real>(u: &CMatrix<T>) -> T {
    if u.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return T::infinity();
    }
    let g = u.adjoint() * u;
    let mut worst = T::zero();
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { T::one() } else { T::zero() };
            let v = (g[(i, j)] - Cplx::from(target)).norm_sqr().sqrt();
            if !(v <= worst) {
                worst = v;
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupled::{CouplingMode, ResonatorParams};
    use crate::gate::{rabi_estimate, GateSpace};
    use crate::qubit::{EnergyParams, FluxBias};

    fn device(f: f64) -> GateDevice<f64> {
        let p = EnergyParams::from_ghz(4.75, 1.25, 1.5).unwrap();
        let r = ResonatorParams::from_ghz_mhz(7.0, 5.0, 50.0).unwrap();
        GateDevice::new(p, r, CouplingMode::LadderRwa, GateSpace::default(), FluxBias(f)).unwrap()
    }

    fn rabi_pulse(d: &GateDevice<f64>, tau: f64) -> PulseParams<f64> {
        PulseParams::new(tau, rabi_estimate(d, tau), 0.5, d.qubit_frequency(), d.anharm).unwrap()
    }

    #[test]
    fn free_evolution_is_diagonal_phases() {
        let d = device(0.5);
        let p = PulseParams::new(20.0, 0.0, 0.0, d.qubit_frequency(), d.anharm).unwrap();
        let u = propagate_gate(&d, &p, &GateOptions::default(), None).unwrap();
        for i in 0..d.dim() {
            for j in 0..d.dim() {
                let expect = if i == j { cis(-d.energies[i] * 20.0) } else { czero() };
                assert!((u[(i, j)] - expect).norm() < 1e-8, "({i},{j})");
            }
        }
        // the lab frame resolves the computational states (RK4 phase error
        // ~3e-8 here) but not the top of the space
        let lab = GateOptions { dt: 2e-3, frame: DriveFrame::Lab };
        let cols = propagate_gate(&d, &p, &lab, Some(&d.comp)).unwrap();
        for (c, &k) in d.comp.iter().enumerate() {
            assert!((cols[(k, c)] - cis(-d.energies[k] * 20.0)).norm() < 1e-7);
        }
        assert!(matches!(propagate_gate(&d, &p, &lab, None), Err(Error::StepSize { .. })));
    }

    #[test]
    fn unitary_and_step_converged() {
        let d = device(0.5);
        let p = rabi_pulse(&d, 20.0);
        let u = propagate_gate(&d, &p, &GateOptions::default(), None).unwrap();
        assert!(crate::linalg::unitarity_defect(&u) < 1e-8);
        let half = propagate_gate(&d, &p, &GateOptions { dt: 1e-3, frame: DriveFrame::Interaction }, None).unwrap();
        // computational columns converge to 1e-8; the highest dressed level's
        // phase sits just above it (about 1.4e-8)
        for &j in &d.comp {
            let worst = (0..d.dim()).map(|i| (u[(i, j)] - half[(i, j)]).norm()).fold(0.0, f64::max);
            assert!(worst < 1e-8, "column {j}: {worst:e}");
        }
        let diff = crate::linalg::max_abs(&(&u - &half));
        assert!(diff < 2e-8, "{diff:e}");
    }

    #[test]
    fn frames_agree() {
        let d = device(0.5);
        let p = rabi_pulse(&d, 10.0);
        let a = propagate_gate(&d, &p, &GateOptions::default(), Some(&d.comp)).unwrap();
        let b = propagate_gate(&d, &p, &GateOptions { dt: 2e-3, frame: DriveFrame::Lab }, Some(&d.comp)).unwrap();
        assert!(crate::linalg::max_abs(&(&a - &b)) < 1e-6, "{}", crate::linalg::max_abs(&(&a - &b)));
    }

    #[test]
    fn coarse_step_reports_defect() {
        let d = device(0.5);
        let p = rabi_pulse(&d, 10.0);
        let r = propagate_gate(&d, &p, &GateOptions { dt: 0.2, frame: DriveFrame::Lab }, Some(&d.comp));
        assert!(matches!(r, Err(Error::StepSize { .. })), "{r:?}");
    }

    #[test]
    fn tabulated_drive_matches_signal() {
        let d = device(0.5);
        let p = rabi_pulse(&d, 10.0);
        let g = GatePropagator::new(&d, &p, &GateOptions::default()).unwrap();
        for q in [0, 1, 777, 5000, 9999, 10_000] {
            let t = if q == 10_000 { 10.0 } else { g.h * 0.5 * q as f64 };
            let amp = p.eps_d * (g.in_phase[q] + p.lambda * g.quadrature[q]);
            assert!((amp - crate::gate::drive_signal(&p, t).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn column_subset_matches_full() {
        let d = device(0.5);
        let p = rabi_pulse(&d, 10.0);
        let full = propagate_gate(&d, &p, &GateOptions::default(), None).unwrap();
        let cols = propagate_gate(&d, &p, &GateOptions::default(), Some(&d.comp)).unwrap();
        for (c, &k) in d.comp.iter().enumerate() {
            for i in 0..d.dim() {
                assert!((full[(i, k)] - cols[(i, c)]).norm() < 1e-14);
            }
        }
    }
}
