//! Fixed-step classical Runge-Kutta integration of the variance equations
//! of motion. Serves as an oracle for the modal propagator.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::model::{CovarianceState, DiffusionCoefficients, OscillatorParams};

use super::{check_time, drift_matrix, drive_vector, ScaledCovariance};

/// Default step `1e-3 * min(1/omega, 1/max(lambda, 1e-9))`.
pub fn default_ode_step(params: &OscillatorParams) -> f64 {
    1e-3 * (1.0 / params.omega()).min(1.0 / params.lambda().max(1e-9))
}

/// Largest admissible step, exclusive: `1 / (10 max(omega, lambda))`.
pub fn max_ode_step(params: &OscillatorParams) -> f64 {
    1.0 / (10.0 * params.omega().max(params.lambda()))
}

fn rk4_step(a: &Matrix3<f64>, drive: &Vector3<f64>, x: &Vector3<f64>, h: f64) -> Vector3<f64> {
    let f = |y: &Vector3<f64>| a * y + drive;
    let k1 = f(x);
    let k2 = f(&(x + k1 * (0.5 * h)));
    let k3 = f(&(x + k2 * (0.5 * h)));
    let k4 = f(&(x + k3 * h));
    x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Integrates `dX/dt = A X + D` from `x0` up to time `t` with RK4.
///
/// The interval is split into `ceil(t/step)` equal steps so the final time is
/// hit exactly; the effective step never exceeds `step`.
pub fn propagate_ode(
    x0: &CovarianceState,
    params: &OscillatorParams,
    d: &DiffusionCoefficients,
    t: f64,
    step: f64,
) -> Result<CovarianceState> {
    check_time(t)?;
    let limit = max_ode_step(params);
    if step.is_nan() || step <= 0.0 || step >= limit {
        return Err(Error::StepTooLarge { step, limit });
    }
    x0.validate()?;
    if t == 0.0 {
        return Ok(*x0);
    }
    let a = drift_matrix(params);
    let drive = drive_vector(params, d);
    let n = (t / step).ceil().max(1.0) as u64;
    let h = t / n as f64;
    let mut x = ScaledCovariance::from_state(x0, params).to_vector();
    for _ in 0..n {
        x = rk4_step(&a, &drive, &x, h);
    }
    Ok(ScaledCovariance::from_vector(&x).to_state(params))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::dynamics::propagate_exact;
    use crate::model::{initial_covariance, thermal_diffusion, BathSpec, InitialStateSpec};

    #[test]
    fn closed_system_is_periodic() {
        let p = OscillatorParams::new(1.0, 0.0, 0.0).unwrap();
        let x0 = initial_covariance(&InitialStateSpec::coherent(), &p);
        let x = propagate_ode(&x0, &p, &DiffusionCoefficients::zero(), 2.0 * PI, 1e-3).unwrap();
        assert!((x.sigma_qq - x0.sigma_qq).abs() < 1e-8);
        assert!((x.sigma_pp - x0.sigma_pp).abs() < 1e-8);
        assert!((x.sigma_pq - x0.sigma_pq).abs() < 1e-8);

        let x0 = initial_covariance(&InitialStateSpec::new(2.0, 0.4).unwrap(), &p);
        let x = propagate_ode(&x0, &p, &DiffusionCoefficients::zero(), 2.0 * PI, 1e-3).unwrap();
        assert!((x.sigma_qq - x0.sigma_qq).abs() < 1e-8);
        assert!((x.sigma_pq - x0.sigma_pq).abs() < 1e-8);
    }

    #[test]
    fn zero_time_returns_input() {
        let p = OscillatorParams::new(1.0, 0.1, 0.0).unwrap();
        let x0 = initial_covariance(&InitialStateSpec::new(2.0, 0.5).unwrap(), &p);
        let d = thermal_diffusion(&p, &BathSpec::from_coth(2.0).unwrap()).unwrap();
        assert_eq!(propagate_ode(&x0, &p, &d, 0.0, 1e-3).unwrap(), x0);
    }

    #[test]
    fn step_limits() {
        let p = OscillatorParams::new(2.0, 0.1, 0.0).unwrap();
        let x0 = initial_covariance(&InitialStateSpec::coherent(), &p);
        let d = thermal_diffusion(&p, &BathSpec::from_coth(2.0).unwrap()).unwrap();
        assert!(matches!(
            propagate_ode(&x0, &p, &d, 1.0, 0.05),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(matches!(
            propagate_ode(&x0, &p, &d, 1.0, 0.0),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(propagate_ode(&x0, &p, &d, 1.0, 0.049).is_ok());
        assert!(matches!(propagate_ode(&x0, &p, &d, -1.0, 1e-3), Err(Error::InvalidTime(_))));
    }

    #[test]
    fn fourth_order_convergence() {
        let p = OscillatorParams::new(1.0, 0.1, 0.08).unwrap();
        let bath = BathSpec::from_coth(2.0).unwrap();
        let d = thermal_diffusion(&p, &bath).unwrap();
        let x0 = initial_covariance(&InitialStateSpec::new(2.0, 0.8).unwrap(), &p);
        let exact = propagate_exact(&x0, &p, &d, 3.0).unwrap();
        let err = |h: f64| {
            let x = propagate_ode(&x0, &p, &d, 3.0, h).unwrap();
            (x.sigma_qq - exact.sigma_qq)
                .abs()
                .max((x.sigma_pp - exact.sigma_pp).abs())
                .max((x.sigma_pq - exact.sigma_pq).abs())
        };
        let ratio = err(0.05) / err(0.025);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn default_step_is_admissible() {
        for (w, l) in [(1.0, 0.1), (0.2, 0.5), (3.0, 0.0)] {
            let p = OscillatorParams::new(w, l, 0.0).unwrap();
            assert!(default_ode_step(&p) < max_ode_step(&p));
        }
    }
}
