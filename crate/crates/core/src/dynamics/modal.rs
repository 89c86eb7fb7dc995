use nalgebra::{Complex, Matrix3};

use crate::error::{Error, Result};
use crate::model::OscillatorParams;

use super::drift_matrix;

pub type C64 = Complex<f64>;

const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Eigen-decomposition of the drift matrix, `A = T K T` with `T^2 = I`.
///
/// `K = diag(-2(lambda - i Omega), -2(lambda + i Omega), -2 lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalDecomposition {
    t: Matrix3<C64>,
    k: [C64; 3],
    omega_shift: f64,
}

impl ModalDecomposition {
    pub fn new(params: &OscillatorParams) -> Result<Self> {
        let (omega, lambda, mu) = (params.omega(), params.lambda(), params.mu());
        if omega <= mu.abs() {
            return Err(Error::OverdampedUnsupported { omega, mu });
        }
        let big = params.shifted_frequency();
        let i = C64::i();
        let scale = C64::new(1.0, 0.0) / (2.0 * big * i);
        let re = |x: f64| C64::new(x, 0.0);
        let plus = C64::new(mu, big);
        let minus = C64::new(mu, -big);
        #[rustfmt::skip]
        let t = Matrix3::new(
            plus,       minus,      re(2.0 * omega),
            minus,      plus,       re(2.0 * omega),
            re(-omega), re(-omega), re(-2.0 * mu),
        ) * scale;
        let k = [
            C64::new(-2.0 * lambda, 2.0 * big),
            C64::new(-2.0 * lambda, -2.0 * big),
            C64::new(-2.0 * lambda, 0.0),
        ];
        let modal = Self {
            t,
            k,
            omega_shift: big,
        };
        modal.verify(params)?;
        Ok(modal)
    }

    fn verify(&self, params: &OscillatorParams) -> Result<()> {
        let square = self.t * self.t - Matrix3::identity();
        let residual = max_abs(&square);
        if residual > IDENTITY_TOLERANCE {
            return Err(Error::NumericalInconsistency {
                what: "T^2 = I",
                residual,
                bound: IDENTITY_TOLERANCE,
            });
        }
        let a = drift_matrix(params).map(|x| C64::new(x, 0.0));
        let scale = max_abs(&a).max(1.0);
        let residual = max_abs(&(self.t * self.k_matrix() * self.t - a));
        if residual > IDENTITY_TOLERANCE * scale {
            return Err(Error::NumericalInconsistency {
                what: "T K T = A",
                residual,
                bound: IDENTITY_TOLERANCE * scale,
            });
        }
        Ok(())
    }

    pub fn t_matrix(&self) -> &Matrix3<C64> {
        &self.t
    }

    pub fn k_diagonal(&self) -> [C64; 3] {
        self.k
    }

    pub fn k_matrix(&self) -> Matrix3<C64> {
        Matrix3::from_diagonal(&self.k.into())
    }

    /// `Omega = sqrt(omega^2 - mu^2)`.
    pub fn omega_shift(&self) -> f64 {
        self.omega_shift
    }

    /// `T e^{K t} T`, the homogeneous propagator of the scaled covariance.
    pub fn propagator(&self, t: f64) -> Matrix3<C64> {
        let e = Matrix3::from_diagonal(&self.k.map(|k| (k * t).exp()).into());
        self.t * e * self.t
    }

    /// `T K^{-1} T`, the inverse of the drift matrix. `None` without friction.
    pub fn inverse_drift(&self) -> Option<Matrix3<C64>> {
        if self.k.iter().any(|k| k.norm() == 0.0) {
            return None;
        }
        let inv = Matrix3::from_diagonal(&self.k.map(|k| k.inv()).into());
        Some(self.t * inv * self.t)
    }
}

pub(crate) fn max_abs(m: &Matrix3<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
