//! Restricted families of the closed-form uncertainty functions.
//!
//! Each function is the general evaluator with some parameters fixed
//! (coherent state `delta = 1`, uncorrelated `r = 0`, free Hamiltonian
//! `mu = 0`, zero temperature `coth = 1`) and the vanishing terms removed.
//! The remaining operations are performed in the same order as the general
//! evaluator, so each restriction reproduces it to the last bit. They are
//! used to check that the general formulas reduce correctly.

use super::Phase;

fn reduced_base(a: f64, c: f64, ph: &Phase) -> f64 {
    ph.q * ph.q + a * c * ph.q * ph.p + c * c * ph.p * ph.p
}

/// `U(t)` for a coherent initial state (`delta = 1`, `r = 0`).
pub fn heisenberg_coherent(hbar: f64, omega: f64, lambda: f64, mu: f64, coth: f64, t: f64) -> f64 {
    let big = (omega * omega - mu * mu).sqrt();
    let ph = Phase::new(big, lambda, t);
    let w2 = big * big;
    let sigma = reduced_base(2.0, coth, &ph) + ph.q * coth * ((2.0 - 2.0 * coth) * mu * mu * ph.vers / w2);
    let y = mu * (2.0 - 2.0 * coth) * ph.vers;
    let cov = ph.q * omega * y / (2.0 * big * big);
    0.25 * hbar * hbar * (sigma + cov * cov)
}

/// `U(t)` for a squeezed state with the free Hamiltonian (`mu = 0`, `r = 0`).
pub fn heisenberg_free(hbar: f64, omega: f64, lambda: f64, delta: f64, coth: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    let a = delta + 1.0 / delta;
    let b = delta - 1.0 / delta;
    let y = omega * b * ph.sin;
    let cov = ph.q * omega * y / (2.0 * omega * omega);
    0.25 * hbar * hbar * (reduced_base(a, coth, &ph) + cov * cov)
}

/// `U(t)` for a coherent state with the free Hamiltonian:
/// `(hbar^2/4)[e^{-2 lambda t} + coth (1 - e^{-2 lambda t})]^2`, expanded.
pub fn heisenberg_coherent_free(hbar: f64, omega: f64, lambda: f64, coth: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    0.25 * hbar * hbar * reduced_base(2.0, coth, &ph)
}

/// `U(t)` at zero temperature (`coth = 1`, which forces `mu = 0`).
pub fn heisenberg_zero_temperature(hbar: f64, omega: f64, lambda: f64, delta: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    let a = delta + 1.0 / delta;
    let b = delta - 1.0 / delta;
    let y = omega * b * ph.sin;
    let cov = ph.q * omega * y / (2.0 * omega * omega);
    0.25 * hbar * hbar * (ph.q * ph.q + a * ph.q * ph.p + ph.p * ph.p + cov * cov)
}

/// `sigma(t)` for an uncorrelated squeezed state (`r = 0`).
pub fn schrodinger_squeezed(hbar: f64, omega: f64, lambda: f64, mu: f64, delta: f64, coth: f64, t: f64) -> f64 {
    let big = (omega * omega - mu * mu).sqrt();
    let ph = Phase::new(big, lambda, t);
    let a = delta + 1.0 / delta;
    let b = delta - 1.0 / delta;
    let w2 = big * big;
    let osc = (a - 2.0 * coth) * mu * mu * ph.vers / w2 + b * mu * ph.sin / big;
    0.25 * hbar * hbar * (reduced_base(a, coth, &ph) + ph.q * coth * osc)
}

/// `sigma(t)` for a coherent state (`delta = 1`, `r = 0`).
pub fn schrodinger_coherent(hbar: f64, omega: f64, lambda: f64, mu: f64, coth: f64, t: f64) -> f64 {
    let big = (omega * omega - mu * mu).sqrt();
    let ph = Phase::new(big, lambda, t);
    let w2 = big * big;
    let osc = (2.0 - 2.0 * coth) * mu * mu * ph.vers / w2;
    0.25 * hbar * hbar * (reduced_base(2.0, coth, &ph) + ph.q * coth * osc)
}

/// `sigma(t)` for the free Hamiltonian (`mu = 0`), any `delta`, `r`.
pub fn schrodinger_free(hbar: f64, omega: f64, lambda: f64, delta: f64, r: f64, coth: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    let a = delta + 1.0 / (delta * (1.0 - r * r));
    0.25 * hbar * hbar * reduced_base(a, coth, &ph)
}

/// `sigma(t)` for a squeezed state with the free Hamiltonian (`mu = 0`, `r = 0`).
pub fn schrodinger_squeezed_free(hbar: f64, omega: f64, lambda: f64, delta: f64, coth: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    0.25 * hbar * hbar * reduced_base(delta + 1.0 / delta, coth, &ph)
}

/// `sigma(t)` for a coherent state with the free Hamiltonian; identical to
/// [`heisenberg_coherent_free`].
pub fn schrodinger_coherent_free(hbar: f64, omega: f64, lambda: f64, coth: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    0.25 * hbar * hbar * reduced_base(2.0, coth, &ph)
}

/// `sigma(t)` at zero temperature (`coth = 1`, `mu = 0`):
/// `(hbar^2/4){1 + (e^{-4 lambda t} - e^{-2 lambda t})[2 - delta - 1/(delta(1-r^2))]}`,
/// a pure decay without oscillation.
pub fn schrodinger_zero_temperature(hbar: f64, omega: f64, lambda: f64, delta: f64, r: f64, t: f64) -> f64 {
    let ph = Phase::new(omega, lambda, t);
    let a = delta + 1.0 / (delta * (1.0 - r * r));
    0.25 * hbar * hbar * (ph.q * ph.q + a * ph.q * ph.p + ph.p * ph.p)
}
