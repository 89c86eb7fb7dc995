//! Heisenberg `U = sigma_qq sigma_pp` and Schrödinger
//! `sigma = sigma_qq sigma_pp - sigma_pq^2` uncertainty functions.
//!
//! The closed forms are evaluated in a rearranged but algebraically exact
//! arrangement. With `q = e^{-2 lambda t}`, `p = 1 - q`, `c = coth(eps)`,
//! `a = delta + 1/(delta(1-r^2))`, `b = delta - 1/(delta(1-r^2))` and
//! `theta = 2 Omega t`:
//!
//! ```text
//! sigma/(hbar^2/4) = q^2 + a c q p + c^2 p^2
//!                  + q c [ (a - 2c) mu^2 (1 - cos theta)/Omega^2
//!                        + b mu sin theta / Omega
//!                        + 2 r mu omega (1 - cos theta) / (Omega^2 sqrt(1 - r^2)) ]
//! ```
//!
//! and, for `r = 0`, `U = sigma + (hbar^2/4) [q omega Y / (2 Omega^2)]^2` with
//! `Y = Omega b sin theta + mu (a - 2c)(1 - cos theta)`. Expanding either
//! gives the usual polynomial in `e^{-4 lambda t}`, `e^{-2 lambda t}`; this
//! arrangement avoids the cancellation between `coth^2` terms and keeps
//! `U >= sigma` exact in floating point.

pub mod special;

use std::f64::consts::TAU;

use crate::dynamics::Propagator;
use crate::error::{Error, Result};
use crate::model::{BathSpec, CovarianceState, Scenario};

/// Uncertainty functions of one covariance state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyPoint {
    pub t: Option<f64>,
    /// Heisenberg product `sigma_qq sigma_pp`.
    pub heisenberg: f64,
    /// Generalized (Schrödinger) uncertainty.
    pub schrodinger: f64,
    /// Correlation coefficient `sigma_pq / sqrt(sigma_qq sigma_pp)`.
    pub correlation: f64,
}

pub fn uncertainty_of_state(x: &CovarianceState) -> Result<UncertaintyPoint> {
    x.validate()?;
    Ok(UncertaintyPoint {
        t: None,
        heisenberg: x.heisenberg(),
        schrodinger: x.schrodinger(),
        correlation: x.correlation(),
    })
}

/// Time-dependent factors shared by every closed form.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Phase {
    /// `e^{-2 lambda t}`
    pub q: f64,
    /// `1 - e^{-2 lambda t}`
    pub p: f64,
    /// `sin(2 Omega t)`
    pub sin: f64,
    /// `1 - cos(2 Omega t)`
    pub vers: f64,
}

impl Phase {
    pub fn new(omega_shift: f64, lambda: f64, t: f64) -> Self {
        let decay = -2.0 * lambda * t;
        let theta = (2.0 * omega_shift * t).rem_euclid(TAU);
        let half = (0.5 * theta).sin();
        Self {
            q: decay.exp(),
            p: -decay.exp_m1(),
            sin: theta.sin(),
            vers: 2.0 * half * half,
        }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTime(t))
    }
}

fn check_zero_temperature(s: &Scenario) -> Result<()> {
    if s.bath().is_zero_temperature() && s.params().mu() != 0.0 {
        return Err(Error::ThermalBathInvalid(format!(
            "zero temperature requires mu = 0 (got mu = {})",
            s.params().mu()
        )));
    }
    Ok(())
}

/// `sigma(t) / (hbar^2/4)` for the general correlated coherent state.
#[allow(clippy::too_many_arguments)]
pub(crate) fn schrodinger_reduced(
    omega: f64,
    omega_shift: f64,
    mu: f64,
    delta: f64,
    r: f64,
    c: f64,
    ph: &Phase,
) -> f64 {
    let one_minus_r2 = 1.0 - r * r;
    let dr = 1.0 / (delta * one_minus_r2);
    let a = delta + dr;
    let b = delta - dr;
    let w2 = omega_shift * omega_shift;
    let base = ph.q * ph.q + a * c * ph.q * ph.p + c * c * ph.p * ph.p;
    let osc = (a - 2.0 * c) * mu * mu * ph.vers / w2
        + b * mu * ph.sin / omega_shift
        + 2.0 * r * mu * omega * ph.vers / (w2 * one_minus_r2.sqrt());
    base + ph.q * c * osc
}

/// `U(t) / (hbar^2/4)` for an uncorrelated (`r = 0`) squeezed state.
pub(crate) fn heisenberg_reduced(
    omega: f64,
    omega_shift: f64,
    mu: f64,
    delta: f64,
    c: f64,
    ph: &Phase,
) -> f64 {
    let a = delta + 1.0 / delta;
    let b = delta - 1.0 / delta;
    let sigma = schrodinger_reduced(omega, omega_shift, mu, delta, 0.0, c, ph);
    let y = omega_shift * b * ph.sin + mu * (a - 2.0 * c) * ph.vers;
    let covariance = ph.q * omega * y / (2.0 * omega_shift * omega_shift);
    sigma + covariance * covariance
}

/// Closed-form Heisenberg uncertainty `U(t)` at finite temperature.
///
/// Only defined for uncorrelated initial states (`r = 0`); use
/// [`heisenberg_via_propagator`] otherwise.
pub fn heisenberg_closed_form(s: &Scenario, t: f64) -> Result<f64> {
    check_time(t)?;
    let r = s.initial().r();
    if r != 0.0 {
        return Err(Error::UnsupportedForHeisenbergClosedForm { r });
    }
    check_zero_temperature(s)?;
    let p = s.params();
    let ph = Phase::new(p.shifted_frequency(), p.lambda(), t);
    let u = heisenberg_reduced(
        p.omega(),
        p.shifted_frequency(),
        p.mu(),
        s.initial().delta(),
        s.bath().coth_eps(),
        &ph,
    );
    Ok(p.minimum_uncertainty() * u)
}

/// Closed-form Schrödinger generalized uncertainty `sigma(t)`.
pub fn schrodinger_closed_form(s: &Scenario, t: f64) -> Result<f64> {
    check_time(t)?;
    check_zero_temperature(s)?;
    let p = s.params();
    let ph = Phase::new(p.shifted_frequency(), p.lambda(), t);
    let sigma = schrodinger_reduced(
        p.omega(),
        p.shifted_frequency(),
        p.mu(),
        s.initial().delta(),
        s.initial().r(),
        s.bath().coth_eps(),
        &ph,
    );
    Ok(p.minimum_uncertainty() * sigma)
}

/// `U(t)` from the exact propagator; the only route for `r != 0`.
pub fn heisenberg_via_propagator(s: &Scenario, t: f64) -> Result<f64> {
    let prop = Propagator::new(s.params(), &s.diffusion())?;
    Ok(prop.propagate(&s.initial_covariance(), t)?.heisenberg())
}

/// Long-time limit `(hbar^2/4) coth^2(eps)` of both uncertainty functions.
pub fn asymptotic_uncertainty(bath: &BathSpec, hbar: f64) -> f64 {
    let c = bath.coth_eps();
    0.25 * hbar * hbar * c * c
}

/// Classical equipartition value `(kT/omega)^2` of the long-time uncertainty.
pub fn classical_uncertainty(temperature: f64, omega: f64, boltzmann: f64) -> f64 {
    let x = boltzmann * temperature / omega;
    x * x
}

/// `U(t)` of the isolated oscillator (`lambda = mu = 0`) from a squeezed state:
/// `(hbar^2/4)[1 + (delta - 1/delta)^2 sin^2(2 omega t) / 4]`.
pub fn zero_coupling_heisenberg(delta: f64, omega: f64, hbar: f64, t: f64) -> f64 {
    let theta = (2.0 * omega * t).rem_euclid(TAU);
    let b = delta - 1.0 / delta;
    let s = theta.sin();
    0.25 * hbar * hbar * (1.0 + 0.25 * b * b * s * s)
}

/// Generalized uncertainty of the isolated oscillator: constant `hbar^2/4`
/// for every correlated coherent initial state.
pub fn zero_coupling_schrodinger(hbar: f64) -> f64 {
    0.25 * hbar * hbar
}

/// Uncertainty functions of a scenario at time `t`.
///
/// `heisenberg` comes from the closed form when `r = 0` and from the
/// propagator otherwise; `schrodinger` always from the closed form.
pub fn evaluate(s: &Scenario, prop: &Propagator, t: f64) -> Result<UncertaintyPoint> {
    let x = prop.propagate(&s.initial_covariance(), t)?;
    let heisenberg = if s.initial().r() == 0.0 {
        heisenberg_closed_form(s, t)?
    } else {
        x.heisenberg()
    };
    Ok(UncertaintyPoint {
        t: Some(t),
        heisenberg,
        schrodinger: schrodinger_closed_form(s, t)?,
        correlation: x.correlation(),
    })
}
