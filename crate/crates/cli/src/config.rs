//! Run configuration: the raw JSON layout, defaulting with provenance, and
//! validation.

use std::collections::BTreeMap;
use std::path::Path;

use fluxpulse_core::coupled::{Axis, CouplingMode, ValueKind, DEFAULT_TRANSITIONS};
use fluxpulse_core::gate::{DriveFrame, PhasePolicy, DEFAULT_GATE_DT_NS};
use fluxpulse_core::noise::{DEFAULT_DRAWS, DEFAULT_SEED};
use fluxpulse_core::qubit::DEFAULT_FLUXONIUM_DIM;
use fluxpulse_core::readout::{DemodPhase, DEFAULT_CHI_CLAMP_MHZ, DEFAULT_DT_NS};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::ConfigError;

/// Inclusive sampling range `points` values from `min` to `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceConfig {
    pub e_j_ghz: f64,
    pub e_c_ghz: f64,
    pub e_l_ghz: f64,
    pub omega_r_ghz: f64,
    pub g_mhz: f64,
    pub coupling_mode: CouplingMode,
    pub fluxonium_dim: usize,
    pub kept_levels: usize,
    pub resonator_levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RampConfig {
    pub f_start: f64,
    pub f_end: f64,
    pub t_rise_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadoutSection {
    pub n_bar: f64,
    pub eta: f64,
    pub kappa_mhz_over_2pi: f64,
    pub t_max_ns: f64,
    pub dt_ns: f64,
    pub ramp: RampConfig,
    pub demod_phase: DemodPhase<f64>,
    pub chi_clamp_mhz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSection {
    pub tau_g_ns_list: Vec<f64>,
    pub levels_fluxonium: usize,
    pub levels_resonator: usize,
    pub dt_ns: f64,
    pub drive_frame: DriveFrame,
    pub phase_policy: PhasePolicy,
    pub flux: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSection {
    pub scale: f64,
    pub n_draws: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeSection {
    pub e_j_ghz: Range,
    pub f: Range,
    pub quantities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiCurveSection {
    pub f: Range,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub flux: f64,
    pub levels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnticrossingSection {
    pub transition: [usize; 2],
    pub window: [f64; 2],
    pub coupling_mode: CouplingMode,
}

/// Fully resolved and validated configuration. Serializes to a config file
/// that parses back to an equal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub device: DeviceConfig,
    pub readout: ReadoutSection,
    pub gate: GateSection,
    pub noise: NoiseSection,
    pub landscape: LandscapeSection,
    pub chi_curve: ChiCurveSection,
    pub spectrum: SpectrumSection,
    pub anticrossing: AnticrossingSection,
    pub output_dir: String,
    /// Defaults to `<output_dir>/.cache`.
    pub cache_dir: Option<String>,
    pub workers: Option<usize>,
}

/// A parsed config plus every default that was filled in, keyed by path.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub config: RunConfig,
    pub defaults: BTreeMap<String, Value>,
}

// Raw layout: everything optional except the device energies.

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    device: Option<RawDevice>,
    readout: Option<RawReadout>,
    gate: Option<RawGate>,
    noise: Option<RawNoise>,
    landscape: Option<RawLandscape>,
    chi_curve: Option<RawChiCurve>,
    spectrum: Option<RawSpectrum>,
    anticrossing: Option<RawAnticrossing>,
    output_dir: Option<String>,
    cache_dir: Option<String>,
    workers: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDevice {
    e_j_ghz: Option<f64>,
    e_c_ghz: Option<f64>,
    e_l_ghz: Option<f64>,
    omega_r_ghz: Option<f64>,
    g_mhz: Option<f64>,
    coupling_mode: Option<CouplingMode>,
    fluxonium_dim: Option<usize>,
    kept_levels: Option<usize>,
    resonator_levels: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRamp {
    f_start: Option<f64>,
    f_end: Option<f64>,
    t_rise_ns: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReadout {
    n_bar: Option<f64>,
    eta: Option<f64>,
    kappa_mhz_over_2pi: Option<f64>,
    t_max_ns: Option<f64>,
    dt_ns: Option<f64>,
    ramp: Option<RawRamp>,
    demod_phase: Option<DemodPhase<f64>>,
    chi_clamp_mhz: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGate {
    tau_g_ns_list: Option<Vec<f64>>,
    levels_fluxonium: Option<usize>,
    levels_resonator: Option<usize>,
    dt_ns: Option<f64>,
    drive_frame: Option<DriveFrame>,
    phase_policy: Option<PhasePolicy>,
    flux: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    scale: Option<f64>,
    n_draws: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLandscape {
    e_j_ghz: Option<Range>,
    f: Option<Range>,
    quantities: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChiCurve {
    f: Option<Range>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    flux: Option<f64>,
    levels: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnticrossing {
    transition: Option<[usize; 2]>,
    window: Option<[f64; 2]>,
    coupling_mode: Option<CouplingMode>,
}

struct Resolver {
    defaults: BTreeMap<String, Value>,
}

impl Resolver {
    fn take<T: Serialize>(&mut self, value: Option<T>, key: &str, default: T) -> T {
        value.unwrap_or_else(|| {
            self.defaults.insert(key.to_string(), serde_json::to_value(&default).unwrap_or(Value::Null));
            default
        })
    }

    fn require<T>(&self, value: Option<T>, key: &str, text: &str) -> Result<T, ConfigError> {
        value.ok_or_else(|| ConfigError::MissingKey { key: key.to_string(), line: line_of(text, key) })
    }
}

pub fn parse_config(path: &Path) -> Result<Parsed, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::MissingFile { path: path.display().to_string(), reason: e.to_string() })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<Parsed, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(ConfigError::from_json)?;
    let mut r = Resolver { defaults: BTreeMap::new() };

    let d = raw.device.unwrap_or_default();
    let device = DeviceConfig {
        e_j_ghz: r.require(d.e_j_ghz, "device.e_j_ghz", text)?,
        e_c_ghz: r.require(d.e_c_ghz, "device.e_c_ghz", text)?,
        e_l_ghz: r.require(d.e_l_ghz, "device.e_l_ghz", text)?,
        omega_r_ghz: r.take(d.omega_r_ghz, "device.omega_r_ghz", 7.0),
        g_mhz: r.take(d.g_mhz, "device.g_mhz", 50.0),
        coupling_mode: r.take(d.coupling_mode, "device.coupling_mode", CouplingMode::default()),
        fluxonium_dim: r.take(d.fluxonium_dim, "device.fluxonium_dim", DEFAULT_FLUXONIUM_DIM),
        kept_levels: r.take(d.kept_levels, "device.kept_levels", 8),
        resonator_levels: r.take(d.resonator_levels, "device.resonator_levels", 8),
    };

    let ro = raw.readout.unwrap_or_default();
    let ramp = ro.ramp.unwrap_or_default();
    let readout = ReadoutSection {
        n_bar: r.take(ro.n_bar, "readout.n_bar", 10.0),
        eta: r.take(ro.eta, "readout.eta", 1.0),
        kappa_mhz_over_2pi: r.take(ro.kappa_mhz_over_2pi, "readout.kappa_mhz_over_2pi", 5.0),
        t_max_ns: r.take(ro.t_max_ns, "readout.t_max_ns", 1000.0),
        dt_ns: r.take(ro.dt_ns, "readout.dt_ns", DEFAULT_DT_NS),
        ramp: RampConfig {
            f_start: r.take(ramp.f_start, "readout.ramp.f_start", 0.5),
            f_end: r.take(ramp.f_end, "readout.ramp.f_end", 0.641),
            t_rise_ns: r.take(ramp.t_rise_ns, "readout.ramp.t_rise_ns", 50.0),
        },
        demod_phase: r.take(ro.demod_phase, "readout.demod_phase", DemodPhase::Auto),
        chi_clamp_mhz: r.take(ro.chi_clamp_mhz, "readout.chi_clamp_mhz", DEFAULT_CHI_CLAMP_MHZ),
    };

    let g = raw.gate.unwrap_or_default();
    let gate = GateSection {
        tau_g_ns_list: r.take(g.tau_g_ns_list, "gate.tau_g_ns_list", vec![10.0, 20.0, 30.0, 40.0, 50.0]),
        levels_fluxonium: r.take(g.levels_fluxonium, "gate.levels_fluxonium", 6),
        levels_resonator: r.take(g.levels_resonator, "gate.levels_resonator", 3),
        dt_ns: r.take(g.dt_ns, "gate.dt_ns", DEFAULT_GATE_DT_NS),
        drive_frame: r.take(g.drive_frame, "gate.drive_frame", DriveFrame::default()),
        phase_policy: r.take(g.phase_policy, "gate.phase_policy", PhasePolicy::default()),
        flux: r.take(g.flux, "gate.flux", 0.5),
    };

    let n = raw.noise.unwrap_or_default();
    let noise = NoiseSection {
        scale: r.take(n.scale, "noise.scale", 1e-3),
        n_draws: r.take(n.n_draws, "noise.n_draws", DEFAULT_DRAWS),
        seed: r.take(n.seed, "noise.seed", DEFAULT_SEED),
    };

    let l = raw.landscape.unwrap_or_default();
    let default_quantities = std::iter::once("chi".to_string())
        .chain(std::iter::once("omega_q".to_string()))
        .chain(DEFAULT_TRANSITIONS.iter().map(|&(i, j)| ValueKind::Detuning(i, j).name()))
        .collect();
    let landscape = LandscapeSection {
        e_j_ghz: r.take(l.e_j_ghz, "landscape.e_j_ghz", Range { min: 2.0, max: 8.0, points: 31 }),
        f: r.take(l.f, "landscape.f", Range { min: 0.5, max: 1.0, points: 51 }),
        quantities: r.take(l.quantities, "landscape.quantities", default_quantities),
    };

    let c = raw.chi_curve.unwrap_or_default();
    let chi_curve = ChiCurveSection { f: r.take(c.f, "chi_curve.f", Range { min: 0.5, max: 0.7, points: 201 }) };

    let s = raw.spectrum.unwrap_or_default();
    let spectrum =
        SpectrumSection { flux: r.take(s.flux, "spectrum.flux", 0.5), levels: r.take(s.levels, "spectrum.levels", 8) };

    let a = raw.anticrossing.unwrap_or_default();
    let anticrossing = AnticrossingSection {
        transition: r.take(a.transition, "anticrossing.transition", [3, 1]),
        window: r.take(a.window, "anticrossing.window", [0.55, 0.6]),
        coupling_mode: r.take(a.coupling_mode, "anticrossing.coupling_mode", device.coupling_mode),
    };

    let config = RunConfig {
        device,
        readout,
        gate,
        noise,
        landscape,
        chi_curve,
        spectrum,
        anticrossing,
        output_dir: r.take(raw.output_dir, "output_dir", "out".to_string()),
        cache_dir: raw.cache_dir,
        workers: raw.workers,
    };
    validate(&config, text)?;
    Ok(Parsed { config, defaults: r.defaults })
}

/// Parses a landscape quantity name: `chi`, `omega_q` or `delta_<i><j>`.
pub fn parse_quantity(name: &str) -> Option<ValueKind> {
    match name {
        "chi" => Some(ValueKind::Chi),
        "omega_q" => Some(ValueKind::OmegaQ),
        _ => {
            let digits = name.strip_prefix("delta_")?;
            let (i, j) = match digits.split_once('_') {
                Some((i, j)) => (i.parse().ok()?, j.parse().ok()?),
                None if digits.len() == 2 => (digits[..1].parse().ok()?, digits[1..].parse().ok()?),
                None => return None,
            };
            (i > j).then_some(ValueKind::Detuning(i, j))
        }
    }
}

/// First line mentioning the last path segment of `key`.
fn line_of(text: &str, key: &str) -> Option<usize> {
    let leaf = key.rsplit('.').next().unwrap_or(key);
    let needle = format!("\"{leaf}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn validate(c: &RunConfig, text: &str) -> Result<(), ConfigError> {
    let fail = |key: &str, kind: &'static str, reason: String| {
        Err(ConfigError::Invalid { key: key.to_string(), kind, reason, line: line_of(text, key) })
    };
    let positive = |key: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            fail(key, "out_of_range", format!("must be positive and finite, got {v}"))
        }
    };
    let finite = |key: &str, v: f64| {
        if v.is_finite() {
            Ok(())
        } else {
            fail(key, "out_of_range", format!("must be finite, got {v}"))
        }
    };

    let d = &c.device;
    if !(d.e_j_ghz >= 0.0 && d.e_j_ghz.is_finite()) {
        return fail("device.e_j_ghz", "out_of_range", format!("must be >= 0 and finite, got {}", d.e_j_ghz));
    }
    positive("device.e_c_ghz", d.e_c_ghz)?;
    positive("device.e_l_ghz", d.e_l_ghz)?;
    positive("device.omega_r_ghz", d.omega_r_ghz)?;
    if !(d.g_mhz >= 0.0 && d.g_mhz.is_finite()) {
        return fail("device.g_mhz", "out_of_range", format!("must be >= 0 and finite, got {}", d.g_mhz));
    }
    if d.fluxonium_dim < 2 {
        return fail("device.fluxonium_dim", "invalid_dimension", format!("must be >= 2, got {}", d.fluxonium_dim));
    }
    if d.kept_levels < 2 || d.kept_levels > d.fluxonium_dim / 2 {
        return fail(
            "device.kept_levels",
            "invalid_dimension",
            format!("must lie in [2, fluxonium_dim/2 = {}], got {}", d.fluxonium_dim / 2, d.kept_levels),
        );
    }
    if d.resonator_levels < 2 {
        return fail(
            "device.resonator_levels",
            "invalid_dimension",
            format!("must be >= 2, got {}", d.resonator_levels),
        );
    }

    let ro = &c.readout;
    if !(ro.n_bar >= 0.0 && ro.n_bar.is_finite()) {
        return fail("readout.n_bar", "out_of_range", format!("must be >= 0, got {}", ro.n_bar));
    }
    if !(ro.eta > 0.0 && ro.eta <= 1.0) {
        return fail(
            "readout.eta",
            "efficiency_out_of_range",
            format!("efficiency must lie in (0, 1], got {}", ro.eta),
        );
    }
    positive("readout.kappa_mhz_over_2pi", ro.kappa_mhz_over_2pi)?;
    positive("readout.dt_ns", ro.dt_ns)?;
    if !(ro.t_max_ns >= ro.dt_ns && ro.t_max_ns.is_finite()) {
        return fail("readout.t_max_ns", "out_of_range", format!("must be >= dt_ns, got {}", ro.t_max_ns));
    }
    finite("readout.ramp.f_start", ro.ramp.f_start)?;
    finite("readout.ramp.f_end", ro.ramp.f_end)?;
    if !(ro.ramp.t_rise_ns >= 0.0 && ro.ramp.t_rise_ns.is_finite()) {
        return fail("readout.ramp.t_rise_ns", "out_of_range", format!("must be >= 0, got {}", ro.ramp.t_rise_ns));
    }
    if let DemodPhase::Fixed { angle_rad } = ro.demod_phase {
        finite("readout.demod_phase.angle_rad", angle_rad)?;
    }
    positive("readout.chi_clamp_mhz", ro.chi_clamp_mhz)?;

    let g = &c.gate;
    if g.tau_g_ns_list.is_empty() {
        return fail("gate.tau_g_ns_list", "out_of_range", "must not be empty".into());
    }
    for &t in &g.tau_g_ns_list {
        positive("gate.tau_g_ns_list", t)?;
    }
    if g.levels_fluxonium < 2 || g.levels_fluxonium > d.fluxonium_dim / 2 {
        return fail(
            "gate.levels_fluxonium",
            "invalid_dimension",
            format!("must lie in [2, fluxonium_dim/2 = {}], got {}", d.fluxonium_dim / 2, g.levels_fluxonium),
        );
    }
    if g.levels_resonator < 2 {
        return fail("gate.levels_resonator", "invalid_dimension", format!("must be >= 2, got {}", g.levels_resonator));
    }
    positive("gate.dt_ns", g.dt_ns)?;
    finite("gate.flux", g.flux)?;

    if !(c.noise.scale >= 0.0 && c.noise.scale.is_finite()) {
        return fail("noise.scale", "out_of_range", format!("must be >= 0, got {}", c.noise.scale));
    }
    if c.noise.n_draws == 0 {
        return fail("noise.n_draws", "out_of_range", "must be >= 1".into());
    }

    for (key, range) in
        [("landscape.e_j_ghz", c.landscape.e_j_ghz), ("landscape.f", c.landscape.f), ("chi_curve.f", c.chi_curve.f)]
    {
        check_range(range).or_else(|reason| fail(key, "out_of_range", reason))?;
    }
    if c.landscape.e_j_ghz.min < 0.0 {
        return fail("landscape.e_j_ghz", "out_of_range", "E_J must be >= 0".into());
    }
    for q in &c.landscape.quantities {
        let Some(kind) = parse_quantity(q) else {
            return fail(
                "landscape.quantities",
                "unknown_quantity",
                format!("`{q}` is not chi, omega_q or delta_<i><j> with i > j"),
            );
        };
        if let ValueKind::Detuning(i, _) = kind {
            if i >= d.kept_levels {
                return fail(
                    "landscape.quantities",
                    "invalid_dimension",
                    format!("`{q}` needs more than {} kept levels", d.kept_levels),
                );
            }
        }
    }

    finite("spectrum.flux", c.spectrum.flux)?;
    if c.spectrum.levels < 2 || c.spectrum.levels > d.fluxonium_dim / 2 {
        return fail(
            "spectrum.levels",
            "invalid_dimension",
            format!("must lie in [2, fluxonium_dim/2 = {}], got {}", d.fluxonium_dim / 2, c.spectrum.levels),
        );
    }

    let [i, j] = c.anticrossing.transition;
    if i <= j || i >= d.kept_levels {
        return fail("anticrossing.transition", "out_of_range", format!("need kept_levels > i > j, got [{i}, {j}]"));
    }
    let [lo, hi] = c.anticrossing.window;
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return fail("anticrossing.window", "out_of_range", format!("need lo < hi, got [{lo}, {hi}]"));
    }
    if c.workers == Some(0) {
        return fail("workers", "out_of_range", "must be >= 1".into());
    }
    Ok(())
}

fn check_range(r: Range) -> Result<(), String> {
    if r.points == 0 {
        return Err("points must be >= 1".into());
    }
    if !(r.min.is_finite() && r.max.is_finite()) {
        return Err("bounds must be finite".into());
    }
    if r.points > 1 && r.min.partial_cmp(&r.max) != Some(std::cmp::Ordering::Less) {
        return Err(format!("need min < max, got [{}, {}]", r.min, r.max));
    }
    Ok(())
}

impl Range {
    pub fn axis(&self) -> fluxpulse_core::Result<Axis<f64>> {
        Axis::linspace(self.min, self.max, self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"device": {"e_j_ghz": 4.75, "e_c_ghz": 1.25, "e_l_ghz": 1.5}}"#;

    #[test]
    fn minimal_config_gets_documented_defaults() {
        let p = parse_config_str(MINIMAL).unwrap();
        assert_eq!(p.config.device.fluxonium_dim, 40);
        assert_eq!(p.config.readout.dt_ns, 0.05);
        assert_eq!(p.config.gate.dt_ns, 2e-3);
        assert_eq!(p.config.noise.seed, 1234);
        assert_eq!(p.defaults["device.fluxonium_dim"], serde_json::json!(40));
        assert_eq!(p.defaults["readout.dt_ns"], serde_json::json!(0.05));
        assert!(!p.defaults.contains_key("device.e_j_ghz"));
    }

    #[test]
    fn round_trip() {
        let p = parse_config_str(MINIMAL).unwrap();
        let text = serde_json::to_string_pretty(&p.config).unwrap();
        let again = parse_config_str(&text).unwrap();
        assert_eq!(again.config, p.config);
        assert!(again.defaults.is_empty());
    }

    #[test]
    fn eta_out_of_range_names_key() {
        let text = "{\n  \"device\": {\"e_j_ghz\": 4.75, \"e_c_ghz\": 1.25, \"e_l_ghz\": 1.5},\n  \"readout\": {\"eta\": 1.5}\n}";
        match parse_config_str(text).unwrap_err() {
            ConfigError::Invalid { key, kind, line, .. } => {
                assert_eq!(key, "readout.eta");
                assert_eq!(kind, "efficiency_out_of_range");
                assert_eq!(line, Some(3));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn error_categories() {
        let unknown = r#"{"device": {"e_j_ghz": 4.75, "e_c_ghz": 1.25, "e_l_ghz": 1.5, "ej": 1}}"#;
        assert!(matches!(parse_config_str(unknown), Err(ConfigError::UnknownKey { ref key, .. }) if key == "ej"));
        assert!(matches!(parse_config_str("{\"device\": "), Err(ConfigError::Malformed { line: 1, .. })));
        assert!(matches!(parse_config_str("{}"), Err(ConfigError::MissingKey { .. })));
        let bad_type = r#"{"device": {"e_j_ghz": "big", "e_c_ghz": 1.25, "e_l_ghz": 1.5}}"#;
        assert!(matches!(parse_config_str(bad_type), Err(ConfigError::InvalidType { .. })));
        assert!(matches!(parse_config(Path::new("/nonexistent/run.json")), Err(ConfigError::MissingFile { .. })));
    }

    #[test]
    fn quantity_names() {
        assert_eq!(parse_quantity("chi"), Some(ValueKind::Chi));
        assert_eq!(parse_quantity("delta_31"), Some(ValueKind::Detuning(3, 1)));
        assert_eq!(parse_quantity("delta_10_2"), Some(ValueKind::Detuning(10, 2)));
        assert_eq!(parse_quantity("delta_13"), None);
        assert_eq!(parse_quantity("omega"), None);
        for &(i, j) in &DEFAULT_TRANSITIONS {
            assert_eq!(parse_quantity(&ValueKind::Detuning(i, j).name()), Some(ValueKind::Detuning(i, j)));
        }
    }

    #[test]
    fn range_hits_endpoints() {
        let v = Range { min: 0.5, max: 0.7, points: 201 }.axis().unwrap().values().to_vec();
        assert_eq!(v[0], 0.5);
        assert_eq!(v[200], 0.7);
    }
}
