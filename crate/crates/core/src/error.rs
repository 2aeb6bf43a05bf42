use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {what} = {value} (need at least {min})")]
    InvalidDimension { what: &'static str, value: usize, min: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("eigensolver failed to converge for {context}")]
    EigenFailure { context: String },

    #[error("level index ({i}, {j}) outside the converged range (< {bound})")]
    LevelOutOfRange { i: usize, j: usize, bound: usize },

    #[error("dressed assignment too weak near resonance at f = {flux}: label {label:?} has overlap {quality:.3}")]
    Resonance { flux: f64, label: (usize, usize), quality: f64 },

    #[error("no interior gap minimum in flux window [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    #[error("value {value} outside domain [{lo}, {hi}] of {what}")]
    Domain { what: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("non-finite value during {what} at t = {t} ns")]
    NonFinite { what: &'static str, t: f64 },

    #[error("propagator unitarity defect {defect:.3e} exceeds {tolerance:.1e} (dt = {dt} ns, {steps} steps)")]
    StepSize { defect: f64, tolerance: f64, dt: f64, steps: usize },

    #[error("anharmonicity is zero; DRAG envelope undefined")]
    SingularAnharmonicity,

    #[error("optimizer refinement returned {refined:.6e}, worse than best grid point {grid:.6e}")]
    OptimizerRegression { grid: f64, refined: f64 },
}

impl Error {
    /// True for failures caused by the numerics rather than by bad inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenFailure { .. }
                | Error::NonFinite { .. }
                | Error::StepSize { .. }
                | Error::OptimizerRegression { .. }
                | Error::Resonance { .. }
                | Error::Bracketing { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
