use fluxpulse_core::coupled::{CouplingMode, ResonatorParams};
use fluxpulse_core::gate::{optimize_pulse, GateOptions, GateSpace, OptimizerSettings, PhasePolicy};
use fluxpulse_core::noise::{noisy_gate_error, NoiseSpec, DEFAULT_DRAWS, DEFAULT_SEED};
use fluxpulse_core::qubit::{EnergyParams, FluxBias};
use fluxpulse_core::GateDevice;

#[test]
fn gate_error_grows_with_noise_scale() {
    let p = EnergyParams::from_ghz(4.75, 1.25, 1.5).unwrap();
    let r = ResonatorParams::from_ghz_mhz(7.0, 5.0, 50.0).unwrap();
    let space = GateSpace::default();
    let opts = GateOptions::default();
    let device = GateDevice::new(p, r, CouplingMode::LadderRwa, space, FluxBias(0.5)).unwrap();
    let opt = optimize_pulse(&device, 10.0, &opts, &OptimizerSettings::default()).unwrap();
    let pulses = [opt.pulse()];

    let run = |scale: f64| {
        let spec = NoiseSpec::new(scale, DEFAULT_DRAWS, DEFAULT_SEED).unwrap();
        noisy_gate_error(p, r, CouplingMode::LadderRwa, space, 0.5, &pulses, &opts, PhasePolicy::VirtualZ, &spec)
            .unwrap()
    };

    let zero = run(0.0);
    assert!(zero.draws.iter().all(|d| d.as_deref() == Some(&[opt.result.error()][..])));

    let means: Vec<f64> =
        [0.0, 1e-4, 1e-3, 1e-2].iter().map(|&s| if s == 0.0 { zero.mean[0] } else { run(s).mean[0] }).collect();
    println!("mean gate error at scales 0, 1e-4, 1e-3, 1e-2: {means:?}");
    assert!(means.windows(2).all(|w| w[1] >= w[0]), "{means:?}");
}
