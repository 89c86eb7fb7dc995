//! Second-moment dynamics of a damped harmonic oscillator in the Lindblad
//! theory of open quantum systems.
//!
//! The crate propagates the covariance `(sigma_qq, sigma_pp, sigma_pq)` of a
//! Gaussian state coupled to a thermal bath, evaluates the Heisenberg and
//! Schrödinger generalized uncertainty functions, and classifies the
//! quantum, thermal and classical regimes of the evolution.

pub mod constraints;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod regimes;
pub mod uncertainty;

pub use constraints::{
    check_fundamental_constraints, check_initial_positivity, check_positivity_functional,
    check_thermal_positivity, check_thermal_validity, ConstraintCheck, ValidityReport,
};
pub use dynamics::{
    asymptotic_state, drift_matrix, drive_vector, propagate_exact, propagate_ode, ModalDecomposition, Propagator,
    ScaledCovariance,
};
pub use error::{Error, Result};
pub use model::{
    initial_covariance, thermal_diffusion, thermal_diffusion_unchecked, BathSpec, CovarianceState,
    DiffusionCoefficients, DiffusionOrigin, InitialStateSpec, OscillatorParams, Scenario,
};
pub use regimes::{
    classify_regime, classify_regime_with, decoherence_time, fluctuation_decomposition, relaxation_time,
    short_time_uncertainty, RegimeLabel, RegimeThresholds, Timescale,
};
pub use uncertainty::{
    evaluate, heisenberg_closed_form, schrodinger_closed_form, uncertainty_of_state, UncertaintyPoint,
};
