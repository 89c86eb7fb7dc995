//! Exact second-moment dynamics.
//!
//! The scaled covariance vector `X = (m omega sigma_qq, sigma_pp/(m omega), sigma_pq)`
//! obeys the linear system `dX/dt = A X + D`, solved as
//! `X(t) = T e^{Kt} T (X(0) - X(inf)) + X(inf)` with the modal matrices of
//! [`ModalDecomposition`].

mod modal;
mod ode;

use nalgebra::{Matrix3, Vector3};

pub use modal::{ModalDecomposition, C64};
pub use ode::{default_ode_step, max_ode_step, propagate_ode};

use crate::error::{Error, Result};
use crate::model::{CovarianceState, DiffusionCoefficients, OscillatorParams};

const ASYMPTOTE_RESIDUAL: f64 = 1e-12;
const IMAGINARY_RESIDUAL: f64 = 1e-10;

/// Covariances rescaled to action units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCovariance {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl ScaledCovariance {
    pub fn from_state(x: &CovarianceState, params: &OscillatorParams) -> Self {
        let mw = params.mass_frequency();
        Self {
            x1: mw * x.sigma_qq,
            x2: x.sigma_pp / mw,
            x3: x.sigma_pq,
        }
    }

    pub fn to_state(&self, params: &OscillatorParams) -> CovarianceState {
        let mw = params.mass_frequency();
        CovarianceState {
            sigma_qq: self.x1 / mw,
            sigma_pp: self.x2 * mw,
            sigma_pq: self.x3,
        }
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.x1, self.x2, self.x3)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self {
            x1: v[0],
            x2: v[1],
            x3: v[2],
        }
    }
}

/// Drift matrix `A` of `dX/dt = A X + D`.
pub fn drift_matrix(params: &OscillatorParams) -> Matrix3<f64> {
    let (w, l, m) = (params.omega(), params.lambda(), params.mu());
    #[rustfmt::skip]
    let a = Matrix3::new(
        -2.0 * (l - m), 0.0,            2.0 * w,
        0.0,            -2.0 * (l + m), -2.0 * w,
        -w,             w,              -2.0 * l,
    );
    a
}

/// Inhomogeneous term `D = (2 m omega D_qq, 2 D_pp/(m omega), 2 D_pq)`.
pub fn drive_vector(params: &OscillatorParams, d: &DiffusionCoefficients) -> Vector3<f64> {
    let mw = params.mass_frequency();
    Vector3::new(2.0 * mw * d.d_qq(), 2.0 * d.d_pp() / mw, 2.0 * d.d_pq())
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTime(t))
    }
}

fn real_part(v: &Vector3<C64>) -> Vector3<f64> {
    v.map(|z| z.re)
}

fn asymptote_vector(
    params: &OscillatorParams,
    modal: &ModalDecomposition,
    drive: &Vector3<f64>,
) -> Result<Vector3<f64>> {
    let inverse = modal.inverse_drift().ok_or(Error::NoAsymptoticState)?;
    let x_inf = real_part(&(-(inverse * drive.map(|x| C64::new(x, 0.0)))));
    let residual = (drift_matrix(params) * x_inf + drive).norm();
    let bound = ASYMPTOTE_RESIDUAL * drive.norm();
    if residual > bound {
        return Err(Error::NumericalInconsistency {
            what: "asymptotic state residual",
            residual,
            bound,
        });
    }
    Ok(x_inf)
}

/// Stationary second moments `X(inf) = -(T K^{-1} T) D`, independent of the
/// initial state. Requires friction.
pub fn asymptotic_state(params: &OscillatorParams, d: &DiffusionCoefficients) -> Result<CovarianceState> {
    if params.lambda() == 0.0 {
        return Err(Error::NoAsymptoticState);
    }
    let modal = ModalDecomposition::new(params)?;
    let x_inf = asymptote_vector(params, &modal, &drive_vector(params, d))?;
    Ok(ScaledCovariance::from_vector(&x_inf).to_state(params))
}

/// Exact propagator for one oscillator and diffusion model.
///
/// Holds the modal decomposition and the asymptote so repeated evaluations
/// (time series, grids) reuse them. Immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: OscillatorParams,
    diffusion: DiffusionCoefficients,
    modal: ModalDecomposition,
    asymptote: Vector3<f64>,
}

impl Propagator {
    pub fn new(params: &OscillatorParams, d: &DiffusionCoefficients) -> Result<Self> {
        let modal = ModalDecomposition::new(params)?;
        let asymptote = if params.lambda() == 0.0 {
            if !d.is_zero() {
                return Err(Error::DiffusionWithoutFriction);
            }
            Vector3::zeros()
        } else {
            asymptote_vector(params, &modal, &drive_vector(params, d))?
        };
        Ok(Self {
            params: *params,
            diffusion: *d,
            modal,
            asymptote,
        })
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn diffusion(&self) -> &DiffusionCoefficients {
        &self.diffusion
    }

    pub fn modal(&self) -> &ModalDecomposition {
        &self.modal
    }

    /// Stationary state; `None` for the frictionless oscillator.
    pub fn asymptote(&self) -> Option<CovarianceState> {
        (self.params.lambda() > 0.0)
            .then(|| ScaledCovariance::from_vector(&self.asymptote).to_state(&self.params))
    }

    pub fn propagate(&self, x0: &CovarianceState, t: f64) -> Result<CovarianceState> {
        check_time(t)?;
        x0.validate()?;
        let start = ScaledCovariance::from_state(x0, &self.params).to_vector();
        let offset = (start - self.asymptote).map(|x| C64::new(x, 0.0));
        let evolved = self.modal.propagator(t) * offset;
        let imaginary = evolved.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        let bound = IMAGINARY_RESIDUAL * (start.norm() + self.asymptote.norm());
        if imaginary > bound {
            return Err(Error::NumericalInconsistency {
                what: "imaginary part of propagated covariance",
                residual: imaginary,
                bound,
            });
        }
        let x = real_part(&evolved) + self.asymptote;
        Ok(ScaledCovariance::from_vector(&x).to_state(&self.params))
    }
}

/// Covariance state at time `t` evolved exactly from `x0`.
pub fn propagate_exact(
    x0: &CovarianceState,
    params: &OscillatorParams,
    d: &DiffusionCoefficients,
    t: f64,
) -> Result<CovarianceState> {
    Propagator::new(params, d)?.propagate(x0, t)
}
