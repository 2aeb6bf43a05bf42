use std::sync::OnceLock;

use fluxpulse_core::coupled::{CouplingMode, DirectSource, ResonatorParams, Truncation};
use fluxpulse_core::noise::{noise_profile_range, noisy_readout_snr, NoiseSpec};
use fluxpulse_core::qubit::EnergyParams;
use fluxpulse_core::readout::{
    simulate_ramped_readout, simulate_readout, ChiProfile, DemodPhase, FluxRamp, ReadoutConfig, DEFAULT_DT_NS,
};
use fluxpulse_core::units::mhz;

fn params() -> EnergyParams<f64> {
    EnergyParams::from_ghz(4.75, 1.25, 1.5).unwrap()
}

fn ramp() -> FluxRamp<f64> {
    FluxRamp::new(0.5, 0.641, 50.0).unwrap()
}

fn config(eta: f64) -> ReadoutConfig<f64> {
    ReadoutConfig::new(10.0, eta, mhz(5.0), DemodPhase::Auto, 300.0, DEFAULT_DT_NS).unwrap()
}

/// χ on a grid wide enough for draws at scale 1e-2.
fn profile() -> &'static ChiProfile<f64> {
    static PROFILE: OnceLock<ChiProfile<f64>> = OnceLock::new();
    PROFILE.get_or_init(|| {
        let res = ResonatorParams::from_ghz_mhz(7.0, 5.0, 50.0).unwrap();
        let source = DirectSource::new(params(), res, CouplingMode::LadderRwa, Truncation::default()).unwrap();
        let spec = NoiseSpec::new(1e-2, 50, 1234).unwrap();
        let (lo, hi) = noise_profile_range(ramp(), &spec);
        ChiProfile::compute(&source, params(), lo, hi, ChiProfile::<f64>::default_clamp()).unwrap()
    })
}

fn static_snr_200() -> f64 {
    let chi = profile().eval(0.5).unwrap();
    simulate_readout(&config(1.0), |_| Ok(chi), chi).unwrap().snr_at(200.0)
}

#[test]
fn pulsed_readout_improves_snr_tenfold() {
    let pulsed = simulate_ramped_readout(&config(1.0), ramp(), profile(), 0.0).unwrap();
    let ratio = pulsed.snr_at(200.0) / static_snr_200();
    println!("pulsed/static SNR(200 ns) = {ratio:.3}");
    assert!((7.0..=13.0).contains(&ratio), "{ratio}");

    let quarter = simulate_ramped_readout(&config(0.25), ramp(), profile(), 0.0).unwrap();
    for (a, b) in pulsed.snr.iter().zip(&quarter.snr) {
        assert_eq!(*b, 0.5 * a);
    }
}

#[test]
fn resonance_clamp_is_immaterial() {
    let base = simulate_ramped_readout(&config(1.0), ramp(), profile(), 0.0).unwrap();
    let doubled = profile().with_clamp(2.0 * profile().clamp()).unwrap();
    let wide = simulate_ramped_readout(&config(1.0), ramp(), &doubled, 0.0).unwrap();
    let (a, b) = (base.snr_at(200.0), wide.snr_at(200.0));
    assert!(((a - b) / a).abs() < 0.01, "{a} vs {b}");
}

#[test]
fn zero_noise_matches_noise_free_run() {
    let spec = NoiseSpec::new(0.0, 1, 1234).unwrap();
    let noisy = noisy_readout_snr(&config(0.25), ramp(), profile(), &spec).unwrap();
    let clean = simulate_ramped_readout(&config(0.25), ramp(), profile(), 0.0).unwrap();
    assert_eq!(noisy.snr.draws[0].as_deref(), Some(clean.snr.as_slice()));
    assert_eq!(noisy.snr.mean, clean.snr);
}

#[test]
fn noisy_readout_against_reference() {
    let clean = simulate_ramped_readout(&config(0.25), ramp(), profile(), 0.0).unwrap();
    let baseline = static_snr_200();
    for scale in [1e-4, 1e-3, 1e-2] {
        let spec = NoiseSpec::new(scale, 50, 1234).unwrap();
        let noisy = noisy_readout_snr(&config(0.25), ramp(), profile(), &spec).unwrap();
        let k = noisy.snr.index_at(200.0);
        assert_eq!(noisy.snr.n_effective + noisy.snr.n_excluded, 50);
        println!(
            "scale {scale:e}: mean SNR(200) = {:.4} (clean {:.4}, static baseline {:.4}), mean error {:.4}, excluded {}",
            noisy.snr.mean[k], clean.snr[k], baseline, noisy.error.mean[k], noisy.snr.n_excluded
        );
        if scale <= 1e-3 {
            assert!(((noisy.snr.mean[k] - clean.snr[k]) / clean.snr[k]).abs() < 0.02);
        }
    }
}
