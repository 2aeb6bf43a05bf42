//! End-to-end acceptance suite: one PASS/FAIL line per criterion, written
//! straight to stdout so the lines show up without `--nocapture`. Failing
//! criteria are listed at the end; set `FLUXPULSE_ACCEPTANCE_STRICT=1` to
//! make them fail the test.

mod common;

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::Path;

use common::{run_ok, write_config, Csv};
use fluxpulse_core::coupled::{dressed_point, CoupledSystem, CouplingMode, QubitBasis, ResonatorParams, Truncation};
use fluxpulse_core::gate::{
    evaluate_gate, gate_fidelity, optimize_pulse, pauli_x, GateDevice, GateOptions, GateSpace, OptimizerSettings,
    PhasePolicy,
};
use fluxpulse_core::noise::{noisy_gate_error, NoiseSpec, DEFAULT_DRAWS, DEFAULT_SEED};
use fluxpulse_core::qubit::{fluxonium_spectrum, EnergyParams, FluxBias};
use fluxpulse_core::readout::{erfc, integrate_langevin, output_field, readout_error, static_output_field, TimeGrid};
use fluxpulse_core::units::{ghz, mhz};

struct Report {
    failed: Vec<String>,
}

impl Report {
    fn check(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        emit(&format!("{} {id:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" }));
        if !pass {
            self.failed.push(format!("{id} {name}"));
        }
    }
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    ((value - target) / target).abs() <= rel
}

fn device() -> (EnergyParams<f64>, ResonatorParams<f64>) {
    (EnergyParams::from_ghz(4.75, 1.25, 1.5).unwrap(), ResonatorParams::from_ghz_mhz(7.0, 5.0, 50.0).unwrap())
}

fn spectrum_point(dir: &Path, flux: f64) -> (Csv, Csv) {
    let out = dir.join(format!("spectrum_{flux}"));
    let cfg = write_config(dir, &format!("spectrum_{flux}.json"), &format!(r#""spectrum": {{"flux": {flux}}}"#));
    run_ok("spectrum", &cfg, &out, &[]);
    (Csv::read(&out.join("spectrum_levels.csv")), Csv::read(&out.join("spectrum_dressed.csv")))
}

fn max_column_defect(u: &fluxpulse_core::linalg::CMatrix<f64>) -> f64 {
    let g = u.adjoint() * u;
    let mut worst = 0.0f64;
    for r in 0..g.nrows() {
        for c in 0..g.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((g[(r, c)] - target).norm());
        }
    }
    worst
}

#[test]
fn acceptance() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut report = Report { failed: Vec::new() };
    let (params, res) = device();

    // 1. sweet spot
    let (levels, dressed) = spectrum_point(dir, 0.5);
    let wq = levels.lookup("level", "1", "omega_k0_ghz");
    let chi = dressed.lookup("quantity", "chi", "value");
    report.check(
        1,
        "sweet-spot spectrum",
        within(wq, 1.05, 0.02) && within(chi, 0.527, 0.10),
        format!("ω_q/2π = {wq:.4} GHz (1.05 ± 2%), χ/2π = {chi:.4} MHz (0.527 ± 10%)"),
    );

    // 2. readout point
    let (levels, dressed) = spectrum_point(dir, 0.641);
    let wq = levels.lookup("level", "1", "omega_k0_ghz");
    let chi = dressed.lookup("quantity", "chi", "value");
    let d10 = dressed.lookup("quantity", "delta_10", "value");
    let d20 = dressed.lookup("quantity", "delta_20", "value") * 1e3;
    report.check(
        2,
        "readout-point spectrum",
        within(wq, 4.6, 0.02) && within(chi, -7.95, 0.10) && within(d10, -2.4, 0.05) && within(d20, -67.0, 0.15),
        format!("ω_q/2π = {wq:.4} GHz, χ/2π = {chi:.3} MHz, Δ10/2π = {d10:.4} GHz, Δ20/2π = {d20:.2} MHz"),
    );

    // 3. matrix element
    let g20 = levels.lookup("level", "2", "g_abs_n_k0_mhz");
    report.check(3, "matrix element", within(g20, 18.32, 0.05), format!("g|⟨2|n̂|0⟩|/2π = {g20:.3} MHz (18.32 ± 5%)"));

    // 4. anticrossing, with the charge coupling that defines g_ij = g|⟨i|n̂|j⟩|
    let cfg = write_config(dir, "anticrossing.json", r#""anticrossing": {"coupling_mode": "charge_coupling"}"#);
    run_ok("anticrossing", &cfg, &dir.join("anticrossing"), &[]);
    let ac = Csv::read(&dir.join("anticrossing").join("anticrossing.csv"));
    let (g31, t_swap, f_star) = (ac.column("g_mhz")[0], ac.column("t_swap_ns")[0], ac.column("f_star")[0]);
    report.check(
        4,
        "anticrossing",
        within(g31, 5.81, 0.05) && within(t_swap, 43.0, 0.05) && (f_star - 0.575).abs() < 0.01,
        format!("g31/2π = {g31:.3} MHz (5.81 ± 5%), t_swap = {t_swap:.2} ns (43 ± 5%), f* = {f_star:.4}"),
    );

    // 5. pulsed vs static SNR; √η scaling
    let cache = dir.join("cache");
    let readout = |eta: f64| {
        let name = format!("readout_{eta}");
        let cfg = write_config(
            dir,
            &format!("{name}.json"),
            &format!(r#""readout": {{"eta": {eta}, "t_max_ns": 300}}, "cache_dir": {:?}"#, cache.to_str().unwrap()),
        );
        let out = dir.join(&name);
        run_ok("readout", &cfg, &out, &[]);
        out
    };
    let (full, quarter) = (readout(1.0), readout(0.25));
    let summary = Csv::read(&full.join("readout_summary.csv"));
    let static_snr = summary.lookup("trajectory", "static", "snr_ref");
    let pulsed_snr = summary.lookup("trajectory", "pulsed", "snr_ref");
    let ratio = pulsed_snr / static_snr;
    let halved = ["readout_static.csv", "readout_pulsed.csv"].iter().all(|f| {
        let a = Csv::read(&full.join(f)).column("snr");
        let b = Csv::read(&quarter.join(f)).column("snr");
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| *y == 0.5 * x)
    });
    report.check(
        5,
        "SNR improvement ratio",
        within(ratio, 10.0, 0.30) && halved && (0.5..=5.0).contains(&static_snr),
        format!(
            "pulsed/static SNR(200 ns) = {ratio:.3} (10 ± 30%); static SNR(200 ns) = {static_snr:.3} (calibration, [0.5, 5]); η = 0.25 halves SNR pointwise: {halved}"
        ),
    );

    // 6. noisy readout
    let clean_quarter = Csv::read(&quarter.join("readout_summary.csv")).lookup("trajectory", "pulsed", "snr_ref");
    let noisy = |scale: f64| {
        let name = format!("noise_readout_{scale}");
        let cfg = write_config(
            dir,
            &format!("{name}.json"),
            &format!(
                r#""readout": {{"eta": 0.25, "t_max_ns": 300}}, "noise": {{"scale": {scale}}}, "cache_dir": {:?}"#,
                cache.to_str().unwrap()
            ),
        );
        let out = dir.join(&name);
        run_ok("noise-readout", &cfg, &out, &[]);
        let snr = Csv::read(&out.join("noise_readout_snr.csv"));
        let err = Csv::read(&out.join("noise_readout_error.csv"));
        (snr.nearest("axis_value", 200.0, "mean"), err.nearest("axis_value", 200.0, "mean"))
    };
    let (snr_hi, err_hi) = noisy(1e-2);
    let (snr_mid, _) = noisy(1e-3);
    let (snr_lo, _) = noisy(1e-4);
    let snr_ratio = snr_hi / static_snr;
    let dev_mid = (snr_mid - clean_quarter) / clean_quarter;
    let dev_lo = (snr_lo - clean_quarter) / clean_quarter;
    report.check(
        6,
        "noisy readout",
        within(snr_ratio, 3.0, 0.30) && (err_hi - 0.04).abs() <= 0.02 && dev_mid.abs() < 0.02 && dev_lo.abs() < 0.02,
        format!(
            "scale 1e-2: mean SNR(200)/static = {snr_ratio:.3} (3 ± 30%), mean error = {:.2}% (4 ± 2); scale 1e-3: {:+.2}%, 1e-4: {:+.2}% vs noise-free (< 2%)",
            100.0 * err_hi,
            100.0 * dev_mid,
            100.0 * dev_lo
        ),
    );

    // 7. noisy gates at τ_g ∈ {10, 30} ns
    let space = GateSpace::default();
    let opts = GateOptions::default();
    let device = GateDevice::new(params, res, CouplingMode::LadderRwa, space, FluxBias(0.5)).unwrap();
    let optimized: Vec<_> = [10.0, 30.0]
        .iter()
        .map(|&t| optimize_pulse(&device, t, &opts, &OptimizerSettings::default()).unwrap())
        .collect();
    let pulses: Vec<_> = optimized.iter().map(|o| o.pulse()).collect();
    let gate_mc = |scale: f64| {
        let spec = NoiseSpec::new(scale, DEFAULT_DRAWS, DEFAULT_SEED).unwrap();
        noisy_gate_error(params, res, CouplingMode::LadderRwa, space, 0.5, &pulses, &opts, PhasePolicy::VirtualZ, &spec)
            .unwrap()
    };
    let (hi, mid, lo) = (gate_mc(1e-2), gate_mc(1e-3), gate_mc(1e-4));
    let ratio10 = mid.mean[0] / lo.mean[0];
    let ratio30 = mid.mean[1] / lo.mean[1];
    let in_decade = |r: f64| (r / 1e4).log10().abs() <= 1.0;
    report.check(
        7,
        "noisy gates",
        (hi.mean[0] - 0.36).abs() <= 0.10 && in_decade(ratio10) && in_decade(ratio30),
        format!(
            "τ_g = 10 ns, scale 1e-2: mean error {:.3} (0.36 ± 0.10); error ratio 1e-3/1e-4: {ratio10:.3e} at 10 ns, {ratio30:.3e} at 30 ns (1e4 within a decade); 30 ns at 1e-2: {:.3}",
            hi.mean[0], hi.mean[1]
        ),
    );

    // 8. closed-form oracle
    let (chi, kappa) = (mhz(0.527), mhz(5.0));
    let eps = fluxpulse_core::readout::drive_amplitude(10.0, kappa, chi);
    let grid = TimeGrid::span(1000.0, 0.05).unwrap();
    let mut dev8 = 0.0f64;
    for sigma in [-1.0, 1.0] {
        let alpha = integrate_langevin(|_| Ok(chi), kappa, eps, sigma, grid).unwrap();
        let out = output_field(&alpha, kappa, eps);
        for (k, o) in out.iter().enumerate() {
            dev8 = dev8.max((o - static_output_field(chi, kappa, eps, sigma, grid.time(k))).norm());
        }
    }
    report.check(
        8,
        "closed-form Langevin oracle",
        dev8 < 1e-8,
        format!("max |α_out − closed form| over 1 µs = {dev8:.2e} (< 1e-8)"),
    );

    // 9. Jaynes–Cummings oracle
    let wq = ghz(6.0);
    let (wr, g) = (res.omega_r, res.g);
    let pt = dressed_point(&QubitBasis::two_level(wq), &res, CouplingMode::LadderRwa, 8, 0.0).unwrap();
    let d = wq - wr;
    let branch = |n: f64, s: f64| wr * (n + 1.0) + wq / 2.0 + s * 0.5 * (d * d + 4.0 * g * g * (n + 1.0)).sqrt();
    let exact = (branch(1.0, -1.0) - branch(0.0, -1.0)) - (branch(0.0, 1.0) - wr / 2.0);
    let dev9 = (2.0 * pt.chi().unwrap() - exact).abs() / exact.abs();
    report.check(
        9,
        "Jaynes–Cummings oracle",
        dev9 <= 1e-10,
        format!("relative deviation of 2χ = {dev9:.2e} (≤ 1e-10)"),
    );

    // 10. harmonic limit
    let harmonic = EnergyParams::from_ghz(0.0, 1.25, 1.5).unwrap();
    let s = fluxonium_spectrum::<f64>(harmonic, FluxBias(0.3), 40).unwrap();
    let w_p: f64 = harmonic.plasma_frequency();
    let dev10 = (1..s.converged_levels())
        .map(|k| ((s.eigenvalues[k] - s.eigenvalues[k - 1]) - w_p).abs() / w_p)
        .fold(0.0, f64::max);
    report.check(
        10,
        "harmonic limit",
        dev10 <= 1e-10,
        format!("max relative spacing deviation = {dev10:.2e} (≤ 1e-10)"),
    );

    // 11. flux symmetry
    let system = CoupledSystem::new(params, res, CouplingMode::LadderRwa, Truncation::default()).unwrap();
    let mut dev11 = 0.0f64;
    for f in [0.07, 0.19, 0.31, 0.42, 0.53] {
        let (a, b) = (system.point(FluxBias(f)).unwrap(), system.point(FluxBias(1.0 - f)).unwrap());
        dev11 = dev11.max(((a.chi_unchecked() - b.chi_unchecked()) / a.chi_unchecked()).abs());
        let (sa, sb) = (
            fluxonium_spectrum(params, FluxBias(f), 40).unwrap(),
            fluxonium_spectrum(params, FluxBias(1.0 - f), 40).unwrap(),
        );
        for (x, y) in sa.eigenvalues.iter().zip(&sb.eigenvalues) {
            dev11 = dev11.max(((x - y) / x).abs());
        }
    }
    report.check(
        11,
        "flux symmetry",
        dev11 <= 1e-8,
        format!("max relative asymmetry of χ and spectrum = {dev11:.2e} (≤ 1e-8)"),
    );

    // 12. convergence ladder
    let mut chi_dev = 0.0f64;
    let mut level_dev = 0.0f64;
    for f in [0.5, 0.641] {
        let base = system.point(FluxBias(f)).unwrap().chi().unwrap();
        let wide_basis = Truncation { fluxonium_dim: 60, ..Truncation::default() };
        let wide_dressed = Truncation { kept_levels: 12, resonator_levels: 10, ..Truncation::default() };
        for trunc in [wide_basis, wide_dressed] {
            let c = CoupledSystem::new(params, res, CouplingMode::LadderRwa, trunc)
                .unwrap()
                .point(FluxBias(f))
                .unwrap()
                .chi()
                .unwrap();
            chi_dev = chi_dev.max(((c - base) / base).abs());
        }
        let (s40, s60) = (
            fluxonium_spectrum(params, FluxBias(f), 40).unwrap(),
            fluxonium_spectrum(params, FluxBias(f), 60).unwrap(),
        );
        for k in 0..6 {
            level_dev = level_dev.max((s40.eigenvalues[k] - s60.eigenvalues[k]).abs());
        }
    }
    let level_bound = ghz(1e-6);
    report.check(
        12,
        "convergence ladder",
        chi_dev < 0.01 && level_dev < level_bound,
        format!("max relative χ change = {chi_dev:.2e} (< 1e-2), max eigenvalue change = {level_dev:.2e} rad/ns (< 2π·1e-6 GHz)"),
    );

    // 13. gate propagators and fidelity bounds
    let mut defect = 0.0f64;
    let mut bounded = true;
    for opt in &optimized {
        for flux in [0.5, 0.51] {
            let dev = GateDevice::new(params, res, CouplingMode::LadderRwa, space, FluxBias(flux)).unwrap();
            let r = evaluate_gate(&dev, &opt.pulse(), &opts, PhasePolicy::VirtualZ).unwrap();
            defect = defect.max(max_column_defect(&r.propagator));
            bounded &= (0.0..=1.0).contains(&r.fidelity) && (0.0..=1.0).contains(&r.leakage);
        }
    }
    let x = pauli_x::<f64>();
    let identity = x * x;
    let (f_id, _) = gate_fidelity(&identity, &x, PhasePolicy::VirtualZ);
    report.check(
        13,
        "gate unitarity and fidelity bounds",
        defect < 1e-8 && bounded && f_id == 1.0 / 3.0,
        format!("max column unitarity defect = {defect:.2e} (< 1e-8), F and leakage in [0, 1]: {bounded}, F(identity vs X) = {f_id}"),
    );

    // 14. determinism across worker counts
    let cfg = write_config(
        dir,
        "determinism.json",
        r#""readout": {"t_max_ns": 220}, "noise": {"scale": 1e-3, "n_draws": 8, "seed": 77},
           "landscape": {"e_j_ghz": {"min": 4.0, "max": 5.0, "points": 3}, "f": {"min": 0.5, "max": 0.6, "points": 3}}"#,
    );
    let mut identical = true;
    let mut compared = 0;
    for sub in ["noise-readout", "landscape"] {
        let runs: Vec<_> = [("1", false), ("3", false), ("2", true)]
            .iter()
            .map(|&(w, no_cache)| {
                let out = dir.join(format!("det_{sub}_{w}"));
                let mut extra = vec!["--workers", w];
                if no_cache {
                    extra.push("--no-cache");
                }
                run_ok(sub, &cfg, &out, &extra);
                out
            })
            .collect();
        let manifest: serde_json::Value =
            serde_json::from_slice(&fs::read(runs[0].join("manifest.json")).unwrap()).unwrap();
        let mut names: Vec<String> =
            manifest["files"].as_array().unwrap().iter().map(|f| f["path"].as_str().unwrap().to_string()).collect();
        names.push("manifest.json".into());
        for name in &names {
            let first = fs::read(runs[0].join(name)).unwrap();
            for other in &runs[1..] {
                identical &= fs::read(other.join(name)).unwrap() == first;
                compared += 1;
            }
        }
    }
    report.check(
        14,
        "determinism",
        identical,
        format!(
            "{compared} file comparisons across --workers 1/2/3 (with and without cache) byte-identical: {identical}"
        ),
    );

    // 15. erfc and the error curve
    let series = |x: f64| {
        let (mut sum, mut term) = (0.0, x);
        for n in 0..50 {
            sum += term / (2 * n + 1) as f64;
            term *= -x * x / (n + 1) as f64;
        }
        1.0 - 2.0 / PI.sqrt() * sum
    };
    let dev15 = (0..=300).map(|k| k as f64 * 0.01).map(|x| (erfc(x) - series(x)).abs()).fold(0.0, f64::max);
    let pulsed = Csv::read(&full.join("readout_pulsed.csv"));
    let pointwise = pulsed
        .column("snr")
        .iter()
        .zip(pulsed.column("error"))
        .all(|(s, e)| readout_error(*s) == e && e == 0.5 * erfc(s / 2.0));
    report.check(
        15,
        "erfc and error curve",
        dev15 < 1e-12 && pointwise,
        format!("max |erfc − 50-term series| on [0, 3] = {dev15:.2e} (< 1e-12); error = ½erfc(SNR/2) on every CSV row: {pointwise}"),
    );

    let failed = report.failed.len();
    if failed == 0 {
        emit("acceptance: all 15 criteria pass");
    } else {
        emit(&format!("acceptance: {} of 15 criteria pass; failing: {}", 15 - failed, report.failed.join(", ")));
    }
    if std::env::var_os("FLUXPULSE_ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        assert!(report.failed.is_empty(), "failed criteria: {}", report.failed.join(", "));
    }
}
