//! Fixtures shared by the criterion benchmarks in `benches/`.

use lindblad_osc::{BathSpec, InitialStateSpec, OscillatorParams, Scenario};

/// Correlated squeezed state coupled to a warm bath with a shifted frequency.
pub fn reference_scenario() -> Scenario {
    Scenario::new(
        OscillatorParams::new(1.0, 0.1, 0.08).expect("valid oscillator"),
        BathSpec::from_coth(2.0).expect("valid bath"),
        InitialStateSpec::new(2.0, 0.8).expect("valid state"),
    )
    .expect("valid scenario")
}

/// `n` evenly spaced times on `[0, t_end]`.
pub fn times(t_end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
}
