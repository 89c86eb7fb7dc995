use std::io::Write;

use lindblad_osc::regimes::{
    amplitude_crossover_time, classify_regime_with, decoherence_time_high_temperature, timescales,
    variance_crossover_time,
};
use lindblad_osc::{
    check_fundamental_constraints, check_initial_positivity, check_positivity_functional, check_thermal_validity,
    heisenberg_closed_form, initial_covariance, schrodinger_closed_form, thermal_diffusion_unchecked,
    InitialStateSpec, Propagator, Scenario, ValidityReport,
};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::csv::{self, num, short};
use crate::error::{CliError, CliResult};

/// Every constraint the scenario must satisfy, with margins. Construction
/// failures (e.g. `omega <= |mu|`) become failed entries of the report.
pub fn validity_report(cfg: &RunConfig) -> (ValidityReport, Vec<String>) {
    let mut errors = Vec::new();
    let mut report = ValidityReport::default();
    let params = match cfg.params() {
        Ok(p) => p,
        Err(e) => {
            errors.push(format!("oscillator parameters: {e}"));
            return (report, errors);
        }
    };
    let bath = match cfg.bath(&params) {
        Ok(b) => b,
        Err(e) => {
            errors.push(format!("bath: {e}"));
            return (report, errors);
        }
    };
    report.extend(check_thermal_validity(&params, &bath));
    let spec = match InitialStateSpec::new(cfg.delta, cfg.r) {
        Ok(s) => s,
        Err(e) => {
            errors.push(format!("initial state: {e}"));
            return (report, errors);
        }
    };
    if params.is_closed() {
        report
            .notes
            .push("diffusion and positivity checks skipped for the closed oscillator".to_string());
        return (report, errors);
    }
    let d = thermal_diffusion_unchecked(&params, &bath);
    report.extend(check_fundamental_constraints(&d, params.lambda(), params.hbar()));
    report.extend(check_initial_positivity(&spec, &params, &bath));
    let x0 = initial_covariance(&spec, &params);
    report.extend(check_positivity_functional(&x0, &d, params.lambda(), params.hbar()));
    (report, errors)
}

fn render_report(report: &ValidityReport, errors: &[String]) -> String {
    let mut s = String::new();
    for e in errors {
        s.push_str(&format!("FAIL {e}\n"));
    }
    s.push_str(&report.to_string());
    let failures = report.failures().count() + errors.len();
    if failures == 0 {
        s.push_str("result: all constraints satisfied\n");
    } else {
        s.push_str(&format!("result: {failures} constraint(s) violated\n"));
    }
    s
}

/// Prints the constraint report; exit code 0 iff all pass.
pub fn cmd_validate(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<i32> {
    let (report, errors) = validity_report(cfg);
    out.write_all(render_report(&report, &errors).as_bytes())?;
    Ok(if report.is_valid() && errors.is_empty() { 0 } else { 1 })
}

/// The scenario, or a constraint failure carrying the full report.
pub fn checked_scenario(cfg: &RunConfig) -> CliResult<Scenario> {
    cfg.scenario().map_err(|e| {
        let (report, errors) = validity_report(cfg);
        CliError::Constraint(format!("{e}\n{}", render_report(&report, &errors)))
    })
}

fn header_comment(out: &mut dyn Write, title: &str, cfg: &RunConfig) -> std::io::Result<()> {
    let mut body = cfg.clone();
    body.out = None;
    csv::comment(out, &format!("lindblad-osc {title}\n{}", body.dump()))
}

/// Heisenberg and Schrödinger uncertainties as reported in the grid: closed
/// forms, except `U` for correlated states which has none.
fn grid_cell(s: &Scenario, prop: &Propagator, t: f64) -> lindblad_osc::Result<(f64, f64)> {
    let u = if s.initial().r() == 0.0 {
        heisenberg_closed_form(s, t)?
    } else {
        prop.propagate(&s.initial_covariance(), t)?.heisenberg()
    };
    Ok((u, schrodinger_closed_form(s, t)?))
}

pub const SERIES_HEADER: [&str; 10] = [
    "t",
    "sigma_qq",
    "sigma_pp",
    "sigma_pq",
    "U_exact",
    "sigma_exact",
    "U_closed",
    "sigma_closed",
    "r_t",
    "regime",
];

pub fn cmd_series(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    let s = checked_scenario(cfg)?;
    let prop = Propagator::new(s.params(), &s.diffusion())?;
    let x0 = s.initial_covariance();
    let th = cfg.thresholds();
    header_comment(out, "series", cfg)?;
    csv::row(out, &SERIES_HEADER)?;
    for t in cfg.times() {
        let x = prop.propagate(&x0, t)?;
        let u_closed = if s.initial().r() == 0.0 {
            num(heisenberg_closed_form(&s, t)?)
        } else {
            String::new()
        };
        csv::row(
            out,
            &[
                num(t),
                num(x.sigma_qq),
                num(x.sigma_pp),
                num(x.sigma_pq),
                num(x.heisenberg()),
                num(x.schrodinger()),
                u_closed,
                num(schrodinger_closed_form(&s, t)?),
                num(x.correlation()),
                classify_regime_with(&s, t, &th).as_str().to_string(),
            ],
        )?;
    }
    Ok(())
}

/// One column of the grid: all times at a fixed axis value, `None` where the
/// scenario is inadmissible.
fn grid_column(cfg: &RunConfig, times: &[f64]) -> Vec<Option<(f64, f64)>> {
    let built = cfg
        .scenario()
        .and_then(|s| Propagator::new(s.params(), &s.diffusion()).map(|p| (s, p)));
    match built {
        Ok((s, prop)) => times.iter().map(|&t| grid_cell(&s, &prop, t).ok()).collect(),
        Err(_) => vec![None; times.len()],
    }
}

/// Long-format `t, axis_value, U, sigma` grid, rows ordered t-major.
/// `threads = 0` lets rayon choose.
pub fn cmd_grid(cfg: &RunConfig, threads: usize, out: &mut dyn Write) -> CliResult<()> {
    let sweep = cfg
        .sweep
        .ok_or_else(|| CliError::usage("sweep", "the grid command needs a sweep axis"))?;
    let times = cfg.times();
    let axis = sweep.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let columns: Vec<Vec<Option<(f64, f64)>>> = pool.install(|| {
        axis.par_iter()
            .map(|&v| grid_column(&cfg.with_axis(sweep.axis, v), &times))
            .collect()
    });

    header_comment(out, "grid", cfg)?;
    csv::row(out, &["t", sweep.axis.name(), "U", "sigma"])?;
    let mut invalid = 0usize;
    for (i, &t) in times.iter().enumerate() {
        for (j, &v) in axis.iter().enumerate() {
            let (u, sigma) = columns[j][i].unwrap_or_else(|| {
                invalid += 1;
                (f64::NAN, f64::NAN)
            });
            csv::row(out, &[num(t), num(v), num(u), num(sigma)])?;
        }
    }
    writeln!(out, "# invalid_cells = {invalid}")?;
    Ok(())
}

pub fn cmd_timescales(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    let s = checked_scenario(cfg)?;
    let th = cfg.thresholds();
    let scales = timescales(&s);
    let td = scales.decoherence.time.as_f64();
    let t_rel = scales.relaxation.as_f64();
    let t_eq = th.relaxation_multiple * t_rel;
    let mut lines = vec![
        format!("t_d = {}", short(td)),
        format!("t_d_meaning = {}", scales.decoherence.kind.label()),
        format!(
            "t_d_high_temperature = {}",
            short(decoherence_time_high_temperature(&s).as_f64())
        ),
        format!("t_rel = {}", short(t_rel)),
        format!("t_d_over_t_rel = {}", short(td / t_rel)),
    ];
    if let (Ok(a), Ok(v)) = (amplitude_crossover_time(&s), variance_crossover_time(&s)) {
        lines.push(format!("amplitude_crossover = {}", short(a.as_f64())));
        lines.push(format!("variance_crossover = {}", short(v.as_f64())));
    }
    let equilibrium = if s.bath().coth_eps() >= th.classical_coth {
        "classical_mb"
    } else {
        "quantum_statistical_equilibrium"
    };
    lines.push(format!("regime.quantum_dominated = [0, {})", short(td.min(t_eq))));
    lines.push(format!(
        "regime.thermal_non_equilibrium = [{}, {})",
        short(td.min(t_eq)),
        short(t_eq)
    ));
    lines.push(format!("regime.{equilibrium} = [{}, inf)", short(t_eq)));
    lines.push(format!(
        "thresholds = equilibrium at {} t_rel, classical at coth_eps >= {}",
        short(th.relaxation_multiple),
        short(th.classical_coth)
    ));
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}
