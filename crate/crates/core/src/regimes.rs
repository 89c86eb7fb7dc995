//! Short-time behaviour, the decoherence and relaxation time scales, and
//! the quantum -> thermal -> classical regime classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{OscillatorParams, Scenario};
use crate::uncertainty::{check_time, heisenberg_closed_form};

/// A time scale that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Timescale {
    Finite(f64),
    Infinite,
}

impl Timescale {
    fn from_rate(rate: f64) -> Self {
        if rate > 0.0 {
            Timescale::Finite(1.0 / rate)
        } else {
            Timescale::Infinite
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Timescale::Finite(t) => *t,
            Timescale::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Timescale::Finite(_))
    }
}

impl fmt::Display for Timescale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Timescale::Finite(t) => write!(f, "{t}"),
            Timescale::Infinite => f.write_str("inf"),
        }
    }
}

/// What the crossover time `t_d` marks for a given scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    /// Thermal fluctuations overtake the quantum ones.
    ThermalOvertakesQuantum,
    /// Zero temperature with a squeezed or correlated state: the linear
    /// growth is of purely quantum origin.
    QuantumFluctuationGrowth,
}

impl CrossoverKind {
    pub fn label(&self) -> &'static str {
        match self {
            CrossoverKind::ThermalOvertakesQuantum => "thermal-overtakes-quantum time",
            CrossoverKind::QuantumFluctuationGrowth => "quantum-fluctuation growth time",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceTime {
    pub time: Timescale,
    pub kind: CrossoverKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timescales {
    pub decoherence: DecoherenceTime,
    /// `1/lambda`; infinite without friction.
    pub relaxation: Timescale,
}

/// Short-time linear expansion of the generalized uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeUncertainty {
    pub value: f64,
    /// `false` when `t` exceeds `0.01 min(1/lambda, 1/Omega)`.
    pub within_validity: bool,
}

/// Growth rate `lambda (delta + dr) coth + mu (delta - dr) coth - 2 lambda` of
/// the linear term, `dr = 1/(delta (1 - r^2))`.
fn growth_bracket(s: &Scenario) -> f64 {
    let p = s.params();
    let (l, m) = (p.lambda(), p.mu());
    let (delta, r) = (s.initial().delta(), s.initial().r());
    let c = s.bath().coth_eps();
    let dr = 1.0 / (delta * (1.0 - r * r));
    l * (delta + dr) * c + m * (delta - dr) * c - 2.0 * l
}

/// `(hbar^2/4){1 + 2 [lambda(delta + dr) coth + mu(delta - dr) coth - 2 lambda] t}`.
///
/// Valid while `lambda t << 1` and `Omega t << 1`; equals both `U` and
/// `sigma` to first order when `r = 0`.
pub fn short_time_uncertainty(s: &Scenario, t: f64) -> Result<ShortTimeUncertainty> {
    check_time(t)?;
    let p = s.params();
    let horizon = 0.01 * (1.0 / p.lambda()).min(1.0 / p.shifted_frequency());
    Ok(ShortTimeUncertainty {
        value: p.minimum_uncertainty() * (1.0 + 2.0 * growth_bracket(s) * t),
        within_validity: t <= horizon,
    })
}

/// Time at which the linear growth term of the short-time expansion equals
/// the quantum term `hbar^2/4`. Infinite when there is no growth.
pub fn decoherence_time(s: &Scenario) -> DecoherenceTime {
    let init = s.initial();
    let pure_quantum = s.bath().is_zero_temperature() && !(init.delta() == 1.0 && init.r() == 0.0);
    DecoherenceTime {
        time: Timescale::from_rate(2.0 * growth_bracket(s)),
        kind: if pure_quantum {
            CrossoverKind::QuantumFluctuationGrowth
        } else {
            CrossoverKind::ThermalOvertakesQuantum
        },
    }
}

/// Zero-temperature form `1 / (2 lambda (delta + 1/(delta(1-r^2)) - 2))`
/// (`mu = 0`).
pub fn decoherence_time_zero_temperature(lambda: f64, delta: f64, r: f64) -> Timescale {
    let dr = 1.0 / (delta * (1.0 - r * r));
    Timescale::from_rate(2.0 * lambda * (delta + dr - 2.0))
}

/// High-temperature form `1 / (2 tau [lambda(delta + dr) + mu(delta - dr)])`,
/// i.e. `hbar omega / (4kT [lambda(delta + dr) + mu(delta - dr)])`, with
/// `tau = 2kT/(hbar omega)`.
pub fn decoherence_time_high_temperature(s: &Scenario) -> Timescale {
    let p = s.params();
    let (delta, r) = (s.initial().delta(), s.initial().r());
    let dr = 1.0 / (delta * (1.0 - r * r));
    let rate = p.lambda() * (delta + dr) + p.mu() * (delta - dr);
    Timescale::from_rate(2.0 * s.bath().tau() * rate)
}

/// High-temperature coherent-state form `hbar omega / (8 k T lambda)`.
pub fn decoherence_time_coherent_high_temperature(params: &OscillatorParams, temperature: f64) -> Timescale {
    let rate = 8.0 * params.boltzmann() * temperature * params.lambda() / (params.hbar() * params.omega());
    Timescale::from_rate(rate)
}

/// `t_rel = 1/lambda`.
pub fn relaxation_time(params: &OscillatorParams) -> Result<f64> {
    if params.lambda() > 0.0 {
        Ok(1.0 / params.lambda())
    } else {
        Err(Error::NoRelaxation)
    }
}

pub fn timescales(s: &Scenario) -> Timescales {
    Timescales {
        decoherence: decoherence_time(s),
        relaxation: relaxation_time(s.params())
            .map(Timescale::Finite)
            .unwrap_or(Timescale::Infinite),
    }
}

/// Quantum and thermal contributions to the coherent-state uncertainty
/// `U = (hbar^2/4)[e^{-2 lambda t} + coth (1 - e^{-2 lambda t})]^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationSplit {
    /// `e^{-2 lambda t}`, the quantum share of the amplitude `sqrt(U)/(hbar/2)`.
    pub quantum_amplitude: f64,
    /// `coth (1 - e^{-2 lambda t})`, the thermal share of the amplitude.
    pub thermal_amplitude: f64,
    /// `(hbar^2/4) e^{-4 lambda t}`, the pure-state part of `U`.
    pub quantum: f64,
    /// `U - quantum`.
    pub thermal: f64,
}

fn require_coherent(s: &Scenario) -> Result<()> {
    let init = s.initial();
    if init.delta() != 1.0 || init.r() != 0.0 {
        return Err(Error::DecompositionUndefined {
            delta: init.delta(),
            r: init.r(),
        });
    }
    Ok(())
}

pub fn fluctuation_decomposition(s: &Scenario, t: f64) -> Result<FluctuationSplit> {
    require_coherent(s)?;
    check_time(t)?;
    let decay = -2.0 * s.params().lambda() * t;
    let q = decay.exp();
    let c = s.bath().coth_eps();
    let h4 = s.params().minimum_uncertainty();
    let u = heisenberg_closed_form(s, t)?;
    let quantum = h4 * q * q;
    Ok(FluctuationSplit {
        quantum_amplitude: q,
        thermal_amplitude: -c * decay.exp_m1(),
        quantum,
        thermal: u - quantum,
    })
}

/// Time at which the thermal amplitude share equals the quantum one,
/// `e^{-2 lambda t} = coth (1 - e^{-2 lambda t})`.
pub fn amplitude_crossover_time(s: &Scenario) -> Result<Timescale> {
    require_coherent(s)?;
    let (l, c) = (s.params().lambda(), s.bath().coth_eps());
    if l == 0.0 {
        return Ok(Timescale::Infinite);
    }
    Ok(Timescale::Finite((1.0 / c).ln_1p() / (2.0 * l)))
}

/// Time at which the thermal part of `U` equals its pure-state part
/// `(hbar^2/4) e^{-4 lambda t}`; of the order of the high-temperature
/// decoherence time.
pub fn variance_crossover_time(s: &Scenario) -> Result<Timescale> {
    require_coherent(s)?;
    let (l, c) = (s.params().lambda(), s.bath().coth_eps());
    if l == 0.0 {
        return Ok(Timescale::Infinite);
    }
    // e^{-2 lambda t} (c + sqrt2 - 1) = c
    Ok(Timescale::Finite(((std::f64::consts::SQRT_2 - 1.0) / c).ln_1p() / (2.0 * l)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeLabel {
    QuantumDominated,
    ThermalNonEquilibrium,
    QuantumStatisticalEquilibrium,
    ClassicalMB,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::QuantumDominated => "quantum_dominated",
            RegimeLabel::ThermalNonEquilibrium => "thermal_non_equilibrium",
            RegimeLabel::QuantumStatisticalEquilibrium => "quantum_statistical_equilibrium",
            RegimeLabel::ClassicalMB => "classical_mb",
        }
    }

    /// Position in the time ordering; both equilibrium labels share rank 2.
    pub fn rank(&self) -> u8 {
        match self {
            RegimeLabel::QuantumDominated => 0,
            RegimeLabel::ThermalNonEquilibrium => 1,
            RegimeLabel::QuantumStatisticalEquilibrium | RegimeLabel::ClassicalMB => 2,
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Boundaries used by [`classify_regime`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    /// Equilibrium is reached at `relaxation_multiple / lambda`.
    pub relaxation_multiple: f64,
    /// `coth(eps)` at or above which equilibrium counts as classical.
    pub classical_coth: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            relaxation_multiple: 5.0,
            classical_coth: 10.0,
        }
    }
}

pub fn classify_regime(s: &Scenario, t: f64) -> RegimeLabel {
    classify_regime_with(s, t, &RegimeThresholds::default())
}

pub fn classify_regime_with(s: &Scenario, t: f64, th: &RegimeThresholds) -> RegimeLabel {
    let scales = timescales(s);
    let equilibrium = th.relaxation_multiple * scales.relaxation.as_f64();
    if t >= equilibrium {
        if s.bath().coth_eps() >= th.classical_coth {
            RegimeLabel::ClassicalMB
        } else {
            RegimeLabel::QuantumStatisticalEquilibrium
        }
    } else if t < scales.decoherence.time.as_f64() {
        RegimeLabel::QuantumDominated
    } else {
        RegimeLabel::ThermalNonEquilibrium
    }
}
