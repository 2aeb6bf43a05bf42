//! DRAG-pulsed single-qubit X gate on the driven fluxonium–resonator system.

mod device;
mod fidelity;
mod optimize;
mod propagate;
mod pulse;

pub use device::{GateDevice, GateSpace};
pub use fidelity::{gate_fidelity, pauli_x, GateResult, PhasePolicy};
pub use optimize::{evaluate_gate, optimize_pulse, rabi_estimate, OptimizedPulse, OptimizerSettings};
pub use propagate::{propagate_gate, DriveFrame, GateOptions, GatePropagator, DEFAULT_GATE_DT_NS, UNITARITY_TOLERANCE};
pub use pulse::{build_drive_hamiltonian, drag_envelope, drive_signal, envelope, PulseParams};
