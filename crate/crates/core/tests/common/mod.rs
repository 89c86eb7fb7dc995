#![allow(dead_code)]

use lindblad_osc::{BathSpec, InitialStateSpec, OscillatorParams, Scenario};
use proptest::prelude::*;
use rand::Rng;

/// Parameters of a randomized scenario with `omega = 1` unless stated.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    pub lambda: f64,
    pub mu: f64,
    pub delta: f64,
    pub r: f64,
    pub coth: f64,
}

impl Draw {
    pub fn scenario(&self) -> Option<Scenario> {
        let p = OscillatorParams::with_units(self.omega, self.lambda, self.mu, self.hbar, self.mass, 1.0).ok()?;
        let bath = BathSpec::from_coth(self.coth).ok()?;
        let init = InitialStateSpec::new(self.delta, self.r).ok()?;
        Scenario::new(p, bath, init).ok()
    }
}

/// Draws from `lambda in [0.01, 0.5]`, `mu in [0, 0.9 lambda]`,
/// `delta in [0.2, 5]`, `|r| <= 0.9`, `coth in [1, 50]` with `mu = 0` at
/// zero temperature, rejecting draws outside the thermal validity region.
pub fn sample_scenario<R: Rng>(rng: &mut R) -> (Draw, Scenario) {
    loop {
        let lambda = rng.gen_range(0.01..=0.5);
        let zero_t = rng.gen_bool(0.15);
        let coth = if zero_t { 1.0 } else { (rng.gen_range(0.0..=50f64.ln())).exp() };
        let mu = if zero_t { 0.0 } else { rng.gen_range(0.0..=0.9) * lambda };
        let draw = Draw {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
            lambda,
            mu,
            delta: rng.gen_range(0.2..=5.0),
            r: rng.gen_range(-0.9..=0.9),
            coth,
        };
        if let Some(s) = draw.scenario() {
            return (draw, s);
        }
    }
}

pub fn scenario_strategy() -> impl Strategy<Value = (Draw, Scenario)> {
    (
        0.01f64..=0.5,
        0.0f64..=0.9,
        0.2f64..=5.0,
        -0.9f64..=0.9,
        prop_oneof![1 => Just(1.0f64), 6 => 1.0f64..=50.0],
        prop_oneof![3 => Just((1.0f64, 1.0f64, 1.0f64)), 1 => (0.5f64..2.0, 0.5f64..3.0, 0.5f64..2.0)],
    )
        .prop_filter_map("outside thermal validity", |(lambda, mu_frac, delta, r, coth, (hbar, mass, omega))| {
            let mu = if coth == 1.0 { 0.0 } else { mu_frac * lambda };
            let draw = Draw {
                hbar,
                mass,
                omega,
                lambda,
                mu,
                delta,
                r,
                coth,
            };
            draw.scenario().map(|s| (draw, s))
        })
}

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        actual.abs()
    } else {
        ((actual - expected) / expected).abs()
    }
}

/// Distance in units in the last place between two finite doubles.
pub fn ulps(a: f64, b: f64) -> u64 {
    fn key(x: f64) -> i64 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    }
    key(a).abs_diff(key(b))
}

/// The textbook expressions, transcribed term by term with the trigonometric
/// arguments left unreduced. Used only as oracles.
pub mod verbatim {
    fn shift(omega: f64, mu: f64) -> f64 {
        (omega * omega - mu * mu).sqrt()
    }

    /// General Heisenberg uncertainty for `r = 0`.
    pub fn heisenberg(hbar: f64, omega: f64, lambda: f64, mu: f64, delta: f64, c: f64, t: f64) -> f64 {
        let big = shift(omega, mu);
        let (s, co) = (2.0 * big * t).sin_cos();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / delta;
        let b = delta - 1.0 / delta;
        let dc = delta - c;
        let ic = 1.0 / delta - c;
        let inner = omega * omega * b * b * s * s
            + 2.0 * mu * mu * (dc * dc + ic * ic) * co * (co - 1.0)
            + 4.0 * mu * mu * dc * ic * (1.0 - co)
            + 2.0 * mu * big * (dc * dc - ic * ic) * s * (1.0 - co);
        let first = e4 * (1.0 - a * c + c * c + omega * omega / (4.0 * big.powi(4)) * inner);
        let second = e2 * c * ((a - 2.0 * c) * (omega * omega - mu * mu * co) / (big * big) + b * mu * s / big);
        hbar * hbar / 4.0 * (first + second + c * c)
    }

    /// Heisenberg uncertainty of a coherent state.
    pub fn heisenberg_coherent(hbar: f64, omega: f64, lambda: f64, mu: f64, c: f64, t: f64) -> f64 {
        let big = shift(omega, mu);
        let co = (2.0 * big * t).cos();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let v = 1.0 - co;
        hbar * hbar / 4.0
            * (e4 * (c - 1.0).powi(2) * (1.0 + omega * omega * mu * mu / big.powi(4) * v * v)
                + 2.0 * e2 * c * (1.0 - c) * (omega * omega - mu * mu * co) / (big * big)
                + c * c)
    }

    /// Heisenberg uncertainty with the free Hamiltonian.
    pub fn heisenberg_free(hbar: f64, omega: f64, lambda: f64, delta: f64, c: f64, t: f64) -> f64 {
        let s = (2.0 * omega * t).sin();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / delta;
        let b = delta - 1.0 / delta;
        hbar * hbar / 4.0 * (e4 * (1.0 - a * c + c * c + 0.25 * b * b * s * s) + e2 * c * (a - 2.0 * c) + c * c)
    }

    /// Coherent state, free Hamiltonian: a perfect square.
    pub fn heisenberg_coherent_free(hbar: f64, lambda: f64, c: f64, t: f64) -> f64 {
        let e2 = (-2.0 * lambda * t).exp();
        let amp = e2 + c * (1.0 - e2);
        hbar * hbar / 4.0 * amp * amp
    }

    /// Zero-temperature Heisenberg uncertainty.
    pub fn heisenberg_zero_temperature(hbar: f64, omega: f64, lambda: f64, delta: f64, t: f64) -> f64 {
        let s = (2.0 * omega * t).sin();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / delta;
        let b = delta - 1.0 / delta;
        hbar * hbar / 4.0 * (1.0 + e4 * (2.0 - a + 0.25 * b * b * s * s) + e2 * (a - 2.0))
    }

    /// General Schrödinger uncertainty.
    #[allow(clippy::too_many_arguments)]
    pub fn schrodinger(hbar: f64, omega: f64, lambda: f64, mu: f64, delta: f64, r: f64, c: f64, t: f64) -> f64 {
        let big = shift(omega, mu);
        let (s, co) = (2.0 * big * t).sin_cos();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let dr = 1.0 / (delta * (1.0 - r * r));
        let a = delta + dr;
        let b = delta - dr;
        let bracket = (a - 2.0 * c) * (omega * omega - mu * mu * co) / (big * big)
            + b * mu * s / big
            + 2.0 * r * mu * omega * (1.0 - co) / (big * big * (1.0 - r * r).sqrt());
        hbar * hbar / 4.0 * (e4 * (1.0 - a * c + c * c) + e2 * c * bracket + c * c)
    }

    /// Schrödinger uncertainty of an uncorrelated squeezed state.
    pub fn schrodinger_squeezed(hbar: f64, omega: f64, lambda: f64, mu: f64, delta: f64, c: f64, t: f64) -> f64 {
        let big = shift(omega, mu);
        let (s, co) = (2.0 * big * t).sin_cos();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / delta;
        let b = delta - 1.0 / delta;
        hbar * hbar / 4.0
            * (e4 * (1.0 - a * c + c * c)
                + e2 * c * ((a - 2.0 * c) * (omega * omega - mu * mu * co) / (big * big) + b * mu * s / big)
                + c * c)
    }

    /// Schrödinger uncertainty of a coherent state.
    pub fn schrodinger_coherent(hbar: f64, omega: f64, lambda: f64, mu: f64, c: f64, t: f64) -> f64 {
        let big = shift(omega, mu);
        let co = (2.0 * big * t).cos();
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        hbar * hbar / 4.0
            * (e4 * (c - 1.0).powi(2) + 2.0 * e2 * c * (1.0 - c) * (omega * omega - mu * mu * co) / (big * big) + c * c)
    }

    /// Schrödinger uncertainty with the free Hamiltonian.
    pub fn schrodinger_free(hbar: f64, lambda: f64, delta: f64, r: f64, c: f64, t: f64) -> f64 {
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / (delta * (1.0 - r * r));
        hbar * hbar / 4.0 * (e4 * (1.0 - a * c + c * c) + e2 * c * (a - 2.0 * c) + c * c)
    }

    /// Zero-temperature Schrödinger uncertainty.
    pub fn schrodinger_zero_temperature(hbar: f64, lambda: f64, delta: f64, r: f64, t: f64) -> f64 {
        let e4 = (-4.0 * lambda * t).exp();
        let e2 = (-2.0 * lambda * t).exp();
        let a = delta + 1.0 / (delta * (1.0 - r * r));
        hbar * hbar / 4.0 * (1.0 + (e4 - e2) * (2.0 - a))
    }
}
