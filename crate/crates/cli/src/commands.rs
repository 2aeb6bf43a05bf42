//! Subcommand implementations. Each returns its tables; the caller writes
//! them and the manifest.

use std::sync::atomic::{AtomicUsize, Ordering};

use clap::ValueEnum;
use fluxpulse_core::coupled::{
    chi_curve, find_anticrossing_with, PointGrid, PointSource, ResonatorParams, Truncation, ValueKind,
    DEFAULT_TRANSITIONS,
};
use fluxpulse_core::gate::{optimize_pulse, GateDevice, GateOptions, GateSpace, OptimizedPulse, OptimizerSettings};
use fluxpulse_core::noise::{noise_profile_range, noisy_gate_error, noisy_readout_snr, McCurve, NoiseSpec};
use fluxpulse_core::qubit::{build_ho_operators, EnergyParams, FluxBias};
use fluxpulse_core::readout::{
    simulate_ramped_readout, simulate_readout, ChiProfile, FluxRamp, ReadoutConfig, ReadoutTrajectory,
};
use fluxpulse_core::units::{ghz, mhz, to_ghz, to_mhz};

use crate::cache::{cached_spectrum, Cache, CachedSource};
use crate::config::{parse_quantity, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    Landscape,
    ChiCurve,
    Readout,
    NoiseReadout,
    Gates,
    NoiseGates,
    Spectrum,
    Anticrossing,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Self::Landscape => "landscape",
            Self::ChiCurve => "chi-curve",
            Self::Readout => "readout",
            Self::NoiseReadout => "noise-readout",
            Self::Gates => "gates",
            Self::NoiseGates => "noise-gates",
            Self::Spectrum => "spectrum",
            Self::Anticrossing => "anticrossing",
        }
    }
}

/// Extra flux margin around the ramp for the χ profile.
const PROFILE_MARGIN: f64 = 1e-3;
/// Reference integration time for readout summaries (ns).
const SUMMARY_TAU_NS: f64 = 200.0;

pub const READOUT_HEADER: [&str; 9] = [
    "tau_ns",
    "snr",
    "error",
    "m_s_0",
    "m_s_1",
    "re_alpha_out_0",
    "im_alpha_out_0",
    "re_alpha_out_1",
    "im_alpha_out_1",
];
pub const NOISE_HEADER: [&str; 7] = ["axis_value", "mean", "stderr", "n_effective", "n_excluded", "scale", "seed"];
pub const GATE_HEADER: [&str; 6] = ["tau_g_ns", "eps_d", "lambda", "fidelity", "error", "leakage"];

pub struct Context<'a> {
    pub config: &'a RunConfig,
    pub cache: Option<&'a Cache>,
    pub eigensolves: AtomicUsize,
}

pub type Outputs = Vec<(String, Table)>;

impl<'a> Context<'a> {
    pub fn new(config: &'a RunConfig, cache: Option<&'a Cache>) -> Self {
        Self { config, cache, eigensolves: AtomicUsize::new(0) }
    }

    fn params(&self) -> Result<EnergyParams<f64>, CliError> {
        let d = &self.config.device;
        Ok(EnergyParams::from_ghz(d.e_j_ghz, d.e_c_ghz, d.e_l_ghz)?)
    }

    fn resonator(&self) -> Result<ResonatorParams<f64>, CliError> {
        let d = &self.config.device;
        Ok(ResonatorParams::from_ghz_mhz(d.omega_r_ghz, self.config.readout.kappa_mhz_over_2pi, d.g_mhz)?)
    }

    fn truncation(&self) -> Truncation {
        let d = &self.config.device;
        Truncation { fluxonium_dim: d.fluxonium_dim, kept_levels: d.kept_levels, resonator_levels: d.resonator_levels }
    }

    fn source(&self) -> Result<CachedSource<'_>, CliError> {
        self.source_with(self.config.device.coupling_mode)
    }

    fn source_with(&self, mode: fluxpulse_core::coupled::CouplingMode) -> Result<CachedSource<'_>, CliError> {
        Ok(CachedSource::new(
            self.params()?,
            self.resonator()?,
            mode,
            self.truncation(),
            self.cache,
            &self.eigensolves,
        )?)
    }

    pub fn eigensolve_count(&self) -> usize {
        self.eigensolves.load(Ordering::Relaxed)
    }

    pub fn run(&self, cmd: Subcommand) -> Result<Outputs, CliError> {
        match cmd {
            Subcommand::Landscape => self.landscape(),
            Subcommand::ChiCurve => self.chi_curve(),
            Subcommand::Readout => self.readout(),
            Subcommand::NoiseReadout => self.noise_readout(),
            Subcommand::Gates => self.gates(),
            Subcommand::NoiseGates => self.noise_gates(),
            Subcommand::Spectrum => self.spectrum(),
            Subcommand::Anticrossing => self.anticrossing(),
        }
    }

    fn landscape(&self) -> Result<Outputs, CliError> {
        let l = &self.config.landscape;
        let e_j_ghz = l.e_j_ghz.axis()?;
        let e_j = fluxpulse_core::coupled::Axis::new(e_j_ghz.values().iter().map(|&v| ghz(v)).collect())?;
        let f = l.f.axis()?;
        let source = self.source()?;
        let grid = PointGrid::compute(&source, self.params()?, e_j, f.clone());
        let mut out = Vec::new();
        for name in &l.quantities {
            let kind = parse_quantity(name).expect("validated at parse time");
            let map = grid.map(kind, source.resonator().omega_r)?;
            let values = map.emitted_display();
            let mut t = Table::new(&["e_j_ghz", "f", "value", "unit", "status"]);
            for (r, &ej) in e_j_ghz.values().iter().enumerate() {
                for (c, &fv) in f.values().iter().enumerate() {
                    let k = r * f.len() + c;
                    t.row(&[
                        Cell::F(ej),
                        Cell::F(fv),
                        Cell::F(values[k]),
                        Cell::S(kind.unit()),
                        Cell::S(map.status[k].as_str()),
                    ]);
                }
            }
            out.push((format!("landscape_{}.csv", kind.name()), t));
        }
        Ok(out)
    }

    fn chi_curve(&self) -> Result<Outputs, CliError> {
        let curve = chi_curve(&self.source()?, self.params()?, self.config.chi_curve.f.axis()?)?;
        let mut t = Table::new(&["f", "chi_mhz", "status"]);
        for ((&f, &chi), status) in curve.f.values().iter().zip(&curve.chi).zip(&curve.status) {
            t.row(&[Cell::F(f), Cell::F(to_mhz(chi)), Cell::S(status.as_str())]);
        }
        Ok(vec![("chi_curve.csv".into(), t)])
    }

    fn readout_config(&self) -> Result<ReadoutConfig<f64>, CliError> {
        let r = &self.config.readout;
        Ok(ReadoutConfig::new(r.n_bar, r.eta, mhz(r.kappa_mhz_over_2pi), r.demod_phase, r.t_max_ns, r.dt_ns)?)
    }

    fn ramp(&self) -> Result<FluxRamp<f64>, CliError> {
        let r = &self.config.readout.ramp;
        Ok(FluxRamp::new(r.f_start, r.f_end, r.t_rise_ns)?)
    }

    fn profile(&self, lo: f64, hi: f64) -> Result<ChiProfile<f64>, CliError> {
        let clamp = mhz(self.config.readout.chi_clamp_mhz);
        Ok(ChiProfile::compute(&self.source()?, self.params()?, lo - PROFILE_MARGIN, hi + PROFILE_MARGIN, clamp)?)
    }

    fn readout(&self) -> Result<Outputs, CliError> {
        let cfg = self.readout_config()?;
        let ramp = self.ramp()?;
        let (lo, hi) = ramp.range();
        let profile = self.profile(lo, hi)?;
        let chi0 = profile.eval(ramp.f_start)?;
        let fixed = simulate_readout(&cfg, |_| Ok(chi0), chi0)?;
        let pulsed = simulate_ramped_readout(&cfg, ramp, &profile, 0.0)?;

        let tau_ref = SUMMARY_TAU_NS.min(cfg.t_max);
        let mut summary = Table::new(&[
            "trajectory",
            "eta",
            "tau_ref_ns",
            "snr_ref",
            "error_ref",
            "theta_rad",
            "epsilon",
            "chi_drive_mhz",
        ]);
        for (name, tr, chi) in [("static", &fixed, chi0), ("pulsed", &pulsed, profile.eval(ramp.f_end)?)] {
            summary.row(&[
                Cell::S(name),
                Cell::F(cfg.eta),
                Cell::F(tau_ref),
                Cell::F(tr.snr_at(tau_ref)),
                Cell::F(tr.error_at(tau_ref)),
                Cell::F(tr.theta),
                Cell::F(tr.epsilon),
                Cell::F(to_mhz(chi)),
            ]);
        }
        Ok(vec![
            ("readout_static.csv".into(), readout_table(&fixed)),
            ("readout_pulsed.csv".into(), readout_table(&pulsed)),
            ("readout_summary.csv".into(), summary),
        ])
    }

    fn noise_spec(&self) -> Result<NoiseSpec, CliError> {
        let n = &self.config.noise;
        Ok(NoiseSpec::new(n.scale, n.n_draws, n.seed)?)
    }

    fn noise_readout(&self) -> Result<Outputs, CliError> {
        let cfg = self.readout_config()?;
        let ramp = self.ramp()?;
        let spec = self.noise_spec()?;
        let (lo, hi) = noise_profile_range(ramp, &spec);
        let profile = self.profile(lo, hi)?;
        let noisy = noisy_readout_snr(&cfg, ramp, &profile, &spec)?;
        Ok(vec![
            ("noise_readout_snr.csv".into(), noise_table(&noisy.snr, &spec)),
            ("noise_readout_error.csv".into(), noise_table(&noisy.error, &spec)),
            ("noise_readout_draws.csv".into(), draws_table(&noisy.snr)),
        ])
    }

    fn gate_space(&self) -> GateSpace {
        let g = &self.config.gate;
        GateSpace {
            fluxonium_dim: self.config.device.fluxonium_dim,
            levels_fluxonium: g.levels_fluxonium,
            levels_resonator: g.levels_resonator,
            qubit_only: false,
        }
    }

    fn gate_options(&self) -> GateOptions<f64> {
        GateOptions { dt: self.config.gate.dt_ns, frame: self.config.gate.drive_frame }
    }

    fn optimized_pulses(&self) -> Result<Vec<OptimizedPulse<f64>>, CliError> {
        let g = &self.config.gate;
        let device = GateDevice::new(
            self.params()?,
            self.resonator()?,
            self.config.device.coupling_mode,
            self.gate_space(),
            FluxBias(g.flux),
        )?;
        self.eigensolves.fetch_add(2, Ordering::Relaxed);
        let settings = OptimizerSettings { policy: g.phase_policy, ..OptimizerSettings::default() };
        let opts = self.gate_options();
        g.tau_g_ns_list.iter().map(|&tau| Ok(optimize_pulse(&device, tau, &opts, &settings)?)).collect()
    }

    fn gates(&self) -> Result<Outputs, CliError> {
        let mut t = Table::new(&GATE_HEADER);
        for opt in self.optimized_pulses()? {
            let r = &opt.result;
            t.row(&[
                Cell::F(r.params.tau_g),
                Cell::F(r.params.eps_d),
                Cell::F(r.params.lambda),
                Cell::F(r.fidelity),
                Cell::F(r.error()),
                Cell::F(r.leakage),
            ]);
        }
        Ok(vec![("gates.csv".into(), t)])
    }

    fn noise_gates(&self) -> Result<Outputs, CliError> {
        let spec = self.noise_spec()?;
        let pulses: Vec<_> = self.optimized_pulses()?.iter().map(|o| o.pulse()).collect();
        let curve = noisy_gate_error(
            self.params()?,
            self.resonator()?,
            self.config.device.coupling_mode,
            self.gate_space(),
            self.config.gate.flux,
            &pulses,
            &self.gate_options(),
            self.config.gate.phase_policy,
            &spec,
        )?;
        self.eigensolves.fetch_add(2 * spec.n_draws, Ordering::Relaxed);
        Ok(vec![
            ("noise_gates.csv".into(), noise_table(&curve, &spec)),
            ("noise_gates_draws.csv".into(), draws_table(&curve)),
        ])
    }

    fn spectrum(&self) -> Result<Outputs, CliError> {
        let s = &self.config.spectrum;
        let d = &self.config.device;
        let record = cached_spectrum(self.cache, self.params()?, s.flux, d.fluxonium_dim, &self.eigensolves)?;
        let spectrum = record.to_spectrum()?;
        let charge = build_ho_operators(spectrum.dim, spectrum.params.phi0())?.charge;
        let mut levels = Table::new(&["level", "energy_ghz", "omega_k0_ghz", "abs_n_k0", "g_abs_n_k0_mhz"]);
        for k in 0..s.levels {
            let n_k0 = spectrum.matrix_element(&charge, k, 0).norm();
            levels.row(&[
                Cell::U(k),
                Cell::F(record.eigenvalues_ghz[k]),
                Cell::F(record.eigenvalues_ghz[k] - record.eigenvalues_ghz[0]),
                Cell::F(n_k0),
                Cell::F(d.g_mhz * n_k0),
            ]);
        }

        let source = self.source()?;
        let point = source.point(self.params()?, FluxBias(s.flux))?;
        let omega_r = source.resonator().omega_r;
        let mut dressed = Table::new(&["quantity", "value", "unit", "status"]);
        let status = |ok: bool| if ok { "ok" } else { "resonant" };
        let chi = point.chi();
        dressed.row(&[
            Cell::S("chi"),
            Cell::F(to_mhz(point.chi_unchecked())),
            Cell::S("MHz"),
            Cell::S(status(chi.is_ok())),
        ]);
        dressed.row(&[Cell::S("omega_q"), Cell::F(to_ghz(point.qubit_frequency())), Cell::S("GHz"), Cell::S("ok")]);
        dressed.row(&[
            Cell::S("omega_q_dressed"),
            Cell::F(to_ghz(point.dressed_qubit_frequency())),
            Cell::S("GHz"),
            Cell::S("ok"),
        ]);
        for &(i, j) in DEFAULT_TRANSITIONS.iter().filter(|&&(i, _)| i < d.kept_levels) {
            let ok = point.detuning(i, j, omega_r).is_ok();
            let name = ValueKind::Detuning(i, j).name();
            dressed.row(&[
                Cell::S(&name),
                Cell::F(to_ghz(point.detuning_unchecked(i, j, omega_r))),
                Cell::S("GHz"),
                Cell::S(status(ok)),
            ]);
        }
        Ok(vec![("spectrum_levels.csv".into(), levels), ("spectrum_dressed.csv".into(), dressed)])
    }

    fn anticrossing(&self) -> Result<Outputs, CliError> {
        let a = &self.config.anticrossing;
        let source = self.source_with(a.coupling_mode)?;
        let [i, j] = a.transition;
        let x = find_anticrossing_with(&source, self.params()?, (i, j), (a.window[0], a.window[1]))?;
        let mut t = Table::new(&["i", "j", "coupling_mode", "f_star", "gap_mhz", "g_mhz", "t_swap_ns"]);
        t.row(&[
            Cell::U(i),
            Cell::U(j),
            Cell::S(a.coupling_mode.as_str()),
            Cell::F(x.f_star),
            Cell::F(to_mhz(x.gap)),
            Cell::F(to_mhz(x.g)),
            Cell::F(x.t_swap),
        ]);
        Ok(vec![("anticrossing.csv".into(), t)])
    }
}

fn readout_table(tr: &ReadoutTrajectory<f64>) -> Table {
    let mut t = Table::new(&READOUT_HEADER);
    for k in 0..tr.len() {
        t.row(&[
            Cell::F(tr.times[k]),
            Cell::F(tr.snr[k]),
            Cell::F(tr.error[k]),
            Cell::F(tr.m_s[0][k]),
            Cell::F(tr.m_s[1][k]),
            Cell::F(tr.alpha_out[0][k].re),
            Cell::F(tr.alpha_out[0][k].im),
            Cell::F(tr.alpha_out[1][k].re),
            Cell::F(tr.alpha_out[1][k].im),
        ]);
    }
    t
}

fn noise_table(curve: &McCurve, spec: &NoiseSpec) -> Table {
    let mut t = Table::new(&NOISE_HEADER);
    for k in 0..curve.axis.len() {
        t.row(&[
            Cell::F(curve.axis[k]),
            Cell::F(curve.mean[k]),
            Cell::F(curve.stderr[k]),
            Cell::U(curve.n_effective),
            Cell::U(curve.n_excluded),
            Cell::F(spec.scale),
            Cell::I(spec.seed),
        ]);
    }
    t
}

fn draws_table(curve: &McCurve) -> Table {
    let mut t = Table::new(&["draw", "offset", "included"]);
    for (k, (off, d)) in curve.offsets.iter().zip(&curve.draws).enumerate() {
        t.row(&[Cell::U(k), Cell::F(*off), Cell::S(if d.is_some() { "true" } else { "false" })]);
    }
    t
}
