//! Complete-positivity and thermal-bath validity checks.
//!
//! Every check is a pure predicate returning a [`ValidityReport`] with the
//! numeric margin of each inequality, so callers can show how far a
//! parameter set sits from a constraint boundary.

use std::fmt;

use crate::model::{BathSpec, CovarianceState, DiffusionCoefficients, InitialStateSpec, OscillatorParams};

/// One inequality `lhs > rhs` (strict) or `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    /// Stable identifier, e.g. `thermal.coth_bound`.
    pub id: &'static str,
    /// Human-readable form of the inequality.
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub strict: bool,
    pub passed: bool,
}

impl ConstraintCheck {
    fn new(id: &'static str, statement: &'static str, lhs: f64, rhs: f64, strict: bool) -> Self {
        let passed = if strict { lhs > rhs } else { lhs >= rhs };
        Self {
            id,
            statement,
            lhs,
            rhs,
            strict,
            passed,
        }
    }

    /// `lhs - rhs`; non-negative (positive for strict checks) when passing.
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

impl fmt::Display for ConstraintCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} (lhs = {}, rhs = {}, margin = {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.statement,
            self.lhs,
            self.rhs,
            self.margin()
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidityReport {
    pub checks: Vec<ConstraintCheck>,
    pub notes: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| format!("{} violated (margin {})", c.statement, c.margin()))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn extend(&mut self, other: ValidityReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// `D_pp > 0`, `D_qq > 0` and `D_pp D_qq - D_pq^2 >= lambda^2 hbar^2 / 4`.
pub fn check_fundamental_constraints(d: &DiffusionCoefficients, lambda: f64, hbar: f64) -> ValidityReport {
    let det = d.d_pp() * d.d_qq() - d.d_pq() * d.d_pq();
    ValidityReport {
        checks: vec![
            ConstraintCheck::new("diffusion.d_pp_positive", "D_pp > 0", d.d_pp(), 0.0, true),
            ConstraintCheck::new("diffusion.d_qq_positive", "D_qq > 0", d.d_qq(), 0.0, true),
            ConstraintCheck::new(
                "diffusion.determinant",
                "D_pp*D_qq - D_pq^2 >= (lambda*hbar)^2/4",
                det,
                0.25 * lambda * lambda * hbar * hbar,
                false,
            ),
        ],
        notes: Vec::new(),
    }
}

/// Conditions under which the Gibbs-state coefficients satisfy the
/// complete-positivity constraints: `lambda > mu` and
/// `(lambda^2 - mu^2) coth^2(eps) >= lambda^2`.
///
/// The frictionless oscillator (`lambda = mu = 0`) is accepted as a closed
/// system with zero diffusion.
pub fn check_thermal_validity(params: &OscillatorParams, bath: &BathSpec) -> ValidityReport {
    let (l, m, c) = (params.lambda(), params.mu(), bath.coth_eps());
    let mut report = ValidityReport::default();
    if params.is_closed() {
        report.checks.push(ConstraintCheck::new(
            "thermal.lambda_exceeds_mu",
            "lambda > mu, or lambda = mu = 0 (closed system)",
            0.0,
            0.0,
            false,
        ));
        report
            .notes
            .push("lambda = mu = 0: closed oscillator, no diffusion".to_string());
        return report;
    }
    report.checks.push(ConstraintCheck::new(
        "thermal.lambda_exceeds_mu",
        "lambda > mu, or lambda = mu = 0 (closed system)",
        l,
        m,
        true,
    ));
    report.checks.push(ConstraintCheck::new(
        "thermal.coth_bound",
        "(lambda^2 - mu^2)*coth^2(eps) >= lambda^2",
        (l * l - m * m) * c * c,
        l * l,
        false,
    ));
    if bath.is_zero_temperature() {
        report.checks.push(ConstraintCheck::new(
            "thermal.zero_temperature_mu",
            "coth(eps) = 1 (T = 0) requires mu = 0",
            -m.abs(),
            0.0,
            false,
        ));
    }
    report
}

/// `D_pp sigma_qq + D_qq sigma_pp - 2 D_pq sigma_pq >= hbar^2 lambda / 2`.
pub fn check_positivity_functional(
    x: &CovarianceState,
    d: &DiffusionCoefficients,
    lambda: f64,
    hbar: f64,
) -> ValidityReport {
    let lhs = d.d_pp() * x.sigma_qq + d.d_qq() * x.sigma_pp - 2.0 * d.d_pq() * x.sigma_pq;
    ValidityReport {
        checks: vec![ConstraintCheck::new(
            "positivity.functional",
            "D_pp*s_qq + D_qq*s_pp - 2*D_pq*s_pq >= hbar^2*lambda/2",
            lhs,
            0.5 * hbar * hbar * lambda,
            false,
        )],
        notes: Vec::new(),
    }
}

/// Positivity functional with the thermal-bath coefficients substituted:
/// `[(lambda+mu) m omega sigma_qq + (lambda-mu) sigma_pp/(m omega)] coth >= hbar lambda`.
pub fn check_thermal_positivity(x: &CovarianceState, params: &OscillatorParams, bath: &BathSpec) -> ValidityReport {
    let (l, m, mw) = (params.lambda(), params.mu(), params.mass_frequency());
    let lhs = ((l + m) * mw * x.sigma_qq + (l - m) * x.sigma_pp / mw) * bath.coth_eps();
    ValidityReport {
        checks: vec![ConstraintCheck::new(
            "positivity.thermal",
            "[(lambda+mu)*m*omega*s_qq + (lambda-mu)*s_pp/(m*omega)]*coth(eps) >= hbar*lambda",
            lhs,
            params.hbar() * l,
            false,
        )],
        notes: Vec::new(),
    }
}

/// Thermal positivity condition at `t = 0` for a correlated coherent state,
/// together with the bound `(lambda+mu) delta + (lambda-mu)/delta >= 2 sqrt(lambda^2-mu^2)`
/// that makes it follow from the thermal validity condition.
pub fn check_initial_positivity(
    spec: &InitialStateSpec,
    params: &OscillatorParams,
    bath: &BathSpec,
) -> ValidityReport {
    let (l, m) = (params.lambda(), params.mu());
    let (delta, r) = (spec.delta(), spec.r());
    let dr = 1.0 / (delta * (1.0 - r * r));
    let lhs = ((l + m) * delta + (l - m) * dr) * bath.coth_eps();
    let mut report = ValidityReport {
        checks: vec![ConstraintCheck::new(
            "positivity.initial",
            "[(lambda+mu)*delta + (lambda-mu)/(delta*(1-r^2))]*coth(eps) >= 2*lambda",
            lhs,
            2.0 * l,
            false,
        )],
        notes: Vec::new(),
    };
    if l >= m.abs() {
        report.checks.push(ConstraintCheck::new(
            "positivity.initial_bound",
            "(lambda+mu)*delta + (lambda-mu)/delta >= 2*sqrt(lambda^2 - mu^2)",
            (l + m) * delta + (l - m) / delta,
            2.0 * (l * l - m * m).sqrt(),
            false,
        ));
    }
    report
}
