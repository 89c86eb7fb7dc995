//! Physical parameters, bath description, diffusion coefficients and
//! second-moment states of the open oscillator.
//!
//! Units are natural by default (`hbar = k = m = 1`); every quantity keeps
//! its dimension so non-default unit systems work unchanged.

use crate::constraints::{check_fundamental_constraints, check_thermal_validity};
use crate::error::{Error, Result};

/// Largest accepted `|r|` for the initial correlation coefficient.
///
/// The momentum variance of a correlated coherent state diverges as
/// `1/(1 - r^2)`; values closer to one than this are rejected.
pub const MAX_ABS_CORRELATION: f64 = 0.999_999;

/// Above this value of `eps = hbar*omega/2kT`, `coth(eps)` is returned as 1.
pub const COTH_SATURATION_EPS: f64 = 30.0;

fn require_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            name,
            value,
            reason: "must be finite",
        })
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            name,
            value,
            reason: "must be positive",
        })
    }
}

/// Physical constants and dynamical parameters of the oscillator with
/// Hamiltonian `p^2/2m + m omega^2 q^2/2 + (mu/2)(qp + pq)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    hbar: f64,
    boltzmann: f64,
    mass: f64,
    omega: f64,
    lambda: f64,
    mu: f64,
}

impl OscillatorParams {
    /// Natural units (`hbar = k = m = 1`).
    pub fn new(omega: f64, lambda: f64, mu: f64) -> Result<Self> {
        Self::with_units(omega, lambda, mu, 1.0, 1.0, 1.0)
    }

    pub fn with_units(
        omega: f64,
        lambda: f64,
        mu: f64,
        hbar: f64,
        mass: f64,
        boltzmann: f64,
    ) -> Result<Self> {
        require_positive("omega", omega)?;
        require_finite("lambda", lambda)?;
        if lambda < 0.0 {
            return Err(Error::InvalidParams {
                name: "lambda",
                value: lambda,
                reason: "must be non-negative",
            });
        }
        require_finite("mu", mu)?;
        require_positive("hbar", hbar)?;
        require_positive("mass", mass)?;
        require_positive("boltzmann", boltzmann)?;
        if omega <= mu.abs() {
            return Err(Error::OverdampedUnsupported { omega, mu });
        }
        Ok(Self {
            hbar,
            boltzmann,
            mass,
            omega,
            lambda,
            mu,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `Omega = sqrt(omega^2 - mu^2)`, the oscillation frequency of the
    /// covariance dynamics.
    pub fn shifted_frequency(&self) -> f64 {
        (self.omega * self.omega - self.mu * self.mu).sqrt()
    }

    /// `m * omega`, the scale converting lengths to momenta.
    pub fn mass_frequency(&self) -> f64 {
        self.mass * self.omega
    }

    /// `hbar^2 / 4`, the minimum allowed generalized uncertainty.
    pub fn minimum_uncertainty(&self) -> f64 {
        0.25 * self.hbar * self.hbar
    }

    pub fn is_closed(&self) -> bool {
        self.lambda == 0.0 && self.mu == 0.0
    }
}

/// `coth(eps)` with `eps = hbar*omega / 2kT`, saturating to 1 for large `eps`.
pub fn coth_from_eps(eps: f64) -> f64 {
    if eps > COTH_SATURATION_EPS {
        1.0
    } else {
        1.0 / eps.tanh()
    }
}

/// Thermal environment, stored through `coth(hbar*omega/2kT)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    coth_eps: f64,
    eps: f64,
}

impl BathSpec {
    pub fn from_coth(coth_eps: f64) -> Result<Self> {
        if !coth_eps.is_finite() || coth_eps < 1.0 {
            return Err(Error::InvalidBath(format!(
                "coth_eps = {coth_eps} must be finite and >= 1"
            )));
        }
        Ok(Self {
            coth_eps,
            eps: (1.0 / coth_eps).atanh(),
        })
    }

    /// Bath at temperature `temperature` for an oscillator of frequency
    /// `params.omega()`. `temperature = 0` gives `coth_eps = 1`.
    pub fn from_temperature(temperature: f64, params: &OscillatorParams) -> Result<Self> {
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::InvalidBath(format!(
                "temperature = {temperature} must be finite and >= 0"
            )));
        }
        let eps = params.hbar() * params.omega() / (2.0 * params.boltzmann() * temperature);
        Ok(Self {
            coth_eps: coth_from_eps(eps),
            eps,
        })
    }

    pub fn zero_temperature() -> Self {
        Self {
            coth_eps: 1.0,
            eps: f64::INFINITY,
        }
    }

    pub fn coth_eps(&self) -> f64 {
        self.coth_eps
    }

    /// `eps = hbar*omega / 2kT`; infinite at zero temperature.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Reduced temperature `tau = 2kT / hbar*omega = 1/eps`.
    pub fn tau(&self) -> f64 {
        1.0 / self.eps
    }

    pub fn temperature(&self, params: &OscillatorParams) -> f64 {
        params.hbar() * params.omega() / (2.0 * params.boltzmann() * self.eps)
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.coth_eps == 1.0
    }
}

/// Where a set of diffusion coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionOrigin {
    /// Gibbs-state bath coefficients.
    Thermal,
    /// All coefficients zero, for the frictionless closed oscillator.
    Closed,
    /// User supplied, checked against the complete-positivity constraints.
    Explicit,
    /// User supplied without checks; diagnostic use only.
    Unchecked,
}

/// Diffusion coefficients `D_pp`, `D_qq`, `D_pq` of the master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionCoefficients {
    d_pp: f64,
    d_qq: f64,
    d_pq: f64,
    origin: DiffusionOrigin,
}

impl DiffusionCoefficients {
    /// Explicit coefficients, rejected unless they satisfy the
    /// complete-positivity constraints for friction `lambda`.
    pub fn explicit(d_pp: f64, d_qq: f64, d_pq: f64, lambda: f64, hbar: f64) -> Result<Self> {
        let d = Self::unchecked(d_pp, d_qq, d_pq);
        let report = check_fundamental_constraints(&d, lambda, hbar);
        if !report.is_valid() {
            return Err(Error::InvalidDiffusion(report.failure_summary()));
        }
        Ok(Self {
            origin: DiffusionOrigin::Explicit,
            ..d
        })
    }

    /// Coefficients accepted as given. States propagated with these are
    /// not guaranteed to be physical.
    pub fn unchecked(d_pp: f64, d_qq: f64, d_pq: f64) -> Self {
        Self {
            d_pp,
            d_qq,
            d_pq,
            origin: DiffusionOrigin::Unchecked,
        }
    }

    pub fn zero() -> Self {
        Self {
            d_pp: 0.0,
            d_qq: 0.0,
            d_pq: 0.0,
            origin: DiffusionOrigin::Closed,
        }
    }

    pub fn d_pp(&self) -> f64 {
        self.d_pp
    }

    pub fn d_qq(&self) -> f64 {
        self.d_qq
    }

    pub fn d_pq(&self) -> f64 {
        self.d_pq
    }

    pub fn origin(&self) -> DiffusionOrigin {
        self.origin
    }

    pub fn is_diagnostic(&self) -> bool {
        self.origin == DiffusionOrigin::Unchecked
    }

    pub fn is_zero(&self) -> bool {
        self.d_pp == 0.0 && self.d_qq == 0.0 && self.d_pq == 0.0
    }
}

/// Thermal-bath coefficients evaluated without any validity check.
pub fn thermal_diffusion_unchecked(
    params: &OscillatorParams,
    bath: &BathSpec,
) -> DiffusionCoefficients {
    let (l, m) = (params.lambda(), params.mu());
    let c = bath.coth_eps();
    let d_pp = 0.5 * (l + m) * params.hbar() * params.mass_frequency() * c;
    let d_qq = 0.5 * (l - m) * params.hbar() / params.mass_frequency() * c;
    DiffusionCoefficients::unchecked(d_pp, d_qq, 0.0)
}

/// Diffusion coefficients for which the asymptotic state is the Gibbs state
/// of the bath.
///
/// Requires `lambda > mu` together with `(lambda^2 - mu^2) coth^2 >= lambda^2`;
/// the frictionless closed oscillator (`lambda = mu = 0`) yields zeros.
pub fn thermal_diffusion(params: &OscillatorParams, bath: &BathSpec) -> Result<DiffusionCoefficients> {
    if params.is_closed() {
        return Ok(DiffusionCoefficients::zero());
    }
    if params.lambda() <= params.mu() {
        return Err(Error::ThermalBathInvalid(format!(
            "lambda = {} must exceed mu = {} (D_qq would be <= 0)",
            params.lambda(),
            params.mu()
        )));
    }
    let report = check_thermal_validity(params, bath);
    if !report.is_valid() {
        return Err(Error::ThermalBathInvalid(report.failure_summary()));
    }
    Ok(DiffusionCoefficients {
        origin: DiffusionOrigin::Thermal,
        ..thermal_diffusion_unchecked(params, bath)
    })
}

/// Variances and covariance of coordinate and momentum at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceState {
    pub sigma_qq: f64,
    pub sigma_pp: f64,
    pub sigma_pq: f64,
}

impl CovarianceState {
    pub fn new(sigma_qq: f64, sigma_pp: f64, sigma_pq: f64) -> Result<Self> {
        let state = Self {
            sigma_qq,
            sigma_pp,
            sigma_pq,
        };
        state.validate()?;
        Ok(state)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.sigma_qq.is_finite() && self.sigma_pp.is_finite() && self.sigma_pq.is_finite();
        if !finite || self.sigma_qq <= 0.0 || self.sigma_pp <= 0.0 {
            return Err(Error::InvalidState(format!(
                "variances must be finite and positive (sigma_qq = {}, sigma_pp = {}, sigma_pq = {})",
                self.sigma_qq, self.sigma_pp, self.sigma_pq
            )));
        }
        Ok(())
    }

    /// Heisenberg product `sigma_qq * sigma_pp`.
    pub fn heisenberg(&self) -> f64 {
        self.sigma_qq * self.sigma_pp
    }

    /// Schrödinger generalized uncertainty, the determinant of the
    /// second-moment matrix.
    pub fn schrodinger(&self) -> f64 {
        self.sigma_qq * self.sigma_pp - self.sigma_pq * self.sigma_pq
    }

    pub fn correlation(&self) -> f64 {
        self.sigma_pq / (self.sigma_qq * self.sigma_pp).sqrt()
    }
}

/// Correlated coherent initial state: squeezing `delta` and correlation `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateSpec {
    delta: f64,
    r: f64,
}

impl InitialStateSpec {
    pub fn new(delta: f64, r: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::InvalidInitialState(format!(
                "squeezing delta = {delta} must be finite and positive"
            )));
        }
        if !r.is_finite() || r.abs() >= MAX_ABS_CORRELATION {
            return Err(Error::InvalidInitialState(format!(
                "correlation r = {r} must satisfy |r| < {MAX_ABS_CORRELATION}"
            )));
        }
        Ok(Self { delta, r })
    }

    /// Glauber coherent state (`delta = 1`, `r = 0`).
    pub fn coherent() -> Self {
        Self { delta: 1.0, r: 0.0 }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Minimum-uncertainty second moments of a correlated coherent state.
pub fn initial_covariance(spec: &InitialStateSpec, params: &OscillatorParams) -> CovarianceState {
    let (hbar, mw) = (params.hbar(), params.mass_frequency());
    let (delta, r) = (spec.delta(), spec.r());
    let one_minus_r2 = 1.0 - r * r;
    CovarianceState {
        sigma_qq: hbar * delta / (2.0 * mw),
        sigma_pp: hbar * mw / (2.0 * delta * one_minus_r2),
        sigma_pq: hbar * r / (2.0 * one_minus_r2.sqrt()),
    }
}

/// Oscillator, bath and initial state: the input of every closed-form
/// evaluator. Construction enforces the thermal-bath validity condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    params: OscillatorParams,
    bath: BathSpec,
    initial: InitialStateSpec,
}

impl Scenario {
    pub fn new(params: OscillatorParams, bath: BathSpec, initial: InitialStateSpec) -> Result<Self> {
        let report = check_thermal_validity(&params, &bath);
        if !report.is_valid() {
            return Err(Error::ThermalBathInvalid(report.failure_summary()));
        }
        Ok(Self {
            params,
            bath,
            initial,
        })
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn bath(&self) -> &BathSpec {
        &self.bath
    }

    pub fn initial(&self) -> &InitialStateSpec {
        &self.initial
    }

    pub fn diffusion(&self) -> DiffusionCoefficients {
        thermal_diffusion(&self.params, &self.bath)
            .expect("scenario construction checked thermal validity")
    }

    pub fn initial_covariance(&self) -> CovarianceState {
        initial_covariance(&self.initial, &self.params)
    }
}
