use thiserror::Error;

/// Errors raised by the oscillator model, propagators and closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid oscillator parameter `{name}` = {value}: {reason}")]
    InvalidParams {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("overdamped or critically damped dynamics unsupported: omega = {omega} must exceed |mu| = {mu}")]
    OverdampedUnsupported { omega: f64, mu: f64 },

    #[error("invalid bath: {0}")]
    InvalidBath(String),

    #[error("thermal bath invalid: {0}")]
    ThermalBathInvalid(String),

    #[error("invalid diffusion coefficients: {0}")]
    InvalidDiffusion(String),

    #[error("invalid initial state: {0}")]
    InvalidInitialState(String),

    #[error("invalid covariance state: {0}")]
    InvalidState(String),

    #[error("invalid time {0}: must be finite and non-negative")]
    InvalidTime(f64),

    #[error("no asymptotic state without friction (lambda = 0)")]
    NoAsymptoticState,

    #[error("no relaxation without friction (lambda = 0)")]
    NoRelaxation,

    #[error("nonzero diffusion with lambda = 0 is not a Lindblad oscillator")]
    DiffusionWithoutFriction,

    #[error("integration step {step} too large (must be below {limit})")]
    StepTooLarge { step: f64, limit: f64 },

    #[error("closed-form Heisenberg uncertainty requires r = 0 (got r = {r})")]
    UnsupportedForHeisenbergClosedForm { r: f64 },

    #[error("quantum/thermal decomposition is defined only for delta = 1, r = 0 (got delta = {delta}, r = {r})")]
    DecompositionUndefined { delta: f64, r: f64 },

    #[error("numerical inconsistency in {what}: residual {residual:e} exceeds {bound:e}")]
    NumericalInconsistency {
        what: &'static str,
        residual: f64,
        bound: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
