//! Run configuration: a flat `key = value` file, command-line overrides and
//! defaults (omega = 1, lambda = 0.1, mu = 0, delta = 2, coth = 2, t in [0, 40]).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use lindblad_osc::model::MAX_ABS_CORRELATION;
use lindblad_osc::regimes::RegimeThresholds;
use lindblad_osc::{BathSpec, InitialStateSpec, OscillatorParams, Scenario};

use crate::error::{CliError, CliResult};

/// Largest number of `(t, axis)` cells a grid may hold.
pub const MAX_GRID_CELLS: usize = 10_000_000;

pub const KEYS: &[&str] = &[
    "omega",
    "lambda",
    "mu",
    "delta",
    "r",
    "coth_eps",
    "T",
    "hbar",
    "mass",
    "k",
    "t_start",
    "t_end",
    "n_points",
    "sweep",
    "sweep_min",
    "sweep_max",
    "sweep_n",
    "out",
    "format",
    "equilibrium_multiple",
    "classical_coth",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Coth(f64),
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    CothEps,
    Delta,
    R,
    Mu,
    Lambda,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::CothEps => "coth_eps",
            SweepAxis::Delta => "delta",
            SweepAxis::R => "r",
            SweepAxis::Mu => "mu",
            SweepAxis::Lambda => "lambda",
        }
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "coth_eps" => SweepAxis::CothEps,
            "delta" => SweepAxis::Delta,
            "r" => SweepAxis::R,
            "mu" => SweepAxis::Mu,
            "lambda" => SweepAxis::Lambda,
            _ => return Err(format!("unknown sweep axis {s:?} (expected coth_eps, delta, r, mu or lambda)")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unsupported format {s:?} (only csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub lambda: f64,
    pub mu: f64,
    pub delta: f64,
    pub r: f64,
    pub temperature: Temperature,
    pub hbar: f64,
    pub mass: f64,
    pub k: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub sweep: Option<Sweep>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub equilibrium_multiple: f64,
    pub classical_coth: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let th = RegimeThresholds::default();
        Self {
            omega: 1.0,
            lambda: 0.1,
            mu: 0.0,
            delta: 2.0,
            r: 0.0,
            temperature: Temperature::Coth(2.0),
            hbar: 1.0,
            mass: 1.0,
            k: 1.0,
            t_start: 0.0,
            t_end: 40.0,
            n_points: 401,
            sweep: None,
            out: None,
            format: OutputFormat::Csv,
            equilibrium_multiple: th.relaxation_multiple,
            classical_coth: th.classical_coth,
        }
    }
}

/// Raw `key -> value` assignments from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assignments(BTreeMap<String, String>);

impl Assignments {
    /// Parses `key = value` lines; blank lines and lines starting with `#`
    /// are ignored.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out = Assignments::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected `key = value`, got {line:?}", i + 1)))?;
            out.insert(key.trim(), value.trim())?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, key: &str, value: &str) -> CliResult<()> {
        if !KEYS.contains(&key) {
            return Err(CliError::usage(key, "unknown configuration key"));
        }
        if self.0.insert(key.to_string(), value.to_string()).is_some() {
            return Err(CliError::usage(key, "given more than once"));
        }
        if self.0.contains_key("T") && self.0.contains_key("coth_eps") {
            return Err(CliError::usage("T", "temperature given both as `T` and as `coth_eps`"));
        }
        Ok(())
    }

    /// Overlays `other` on top of `self`; a temperature in `other`, in
    /// either form, replaces both forms here.
    pub fn overlay(mut self, other: &Assignments) -> Self {
        if other.0.contains_key("T") || other.0.contains_key("coth_eps") {
            self.0.remove("T");
            self.0.remove("coth_eps");
        }
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
        self
    }

    fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.0
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::usage(key, format!("cannot parse {v:?}: {e}"))))
            .transpose()
    }
}

impl RunConfig {
    pub fn from_assignments(a: &Assignments) -> CliResult<Self> {
        let d = RunConfig::default();
        let temperature = match (a.get::<f64>("coth_eps")?, a.get::<f64>("T")?) {
            (Some(c), None) => Temperature::Coth(c),
            (None, Some(t)) => Temperature::Absolute(t),
            (None, None) => d.temperature,
            (Some(_), Some(_)) => return Err(CliError::usage("T", "temperature given both as `T` and as `coth_eps`")),
        };
        let sweep = match a.get::<SweepAxis>("sweep")? {
            Some(axis) => {
                let need = |key: &str| CliError::usage(key, "required when `sweep` is set");
                Some(Sweep {
                    axis,
                    min: a.get("sweep_min")?.ok_or_else(|| need("sweep_min"))?,
                    max: a.get("sweep_max")?.ok_or_else(|| need("sweep_max"))?,
                    n: a.get("sweep_n")?.ok_or_else(|| need("sweep_n"))?,
                })
            }
            None => {
                for key in ["sweep_min", "sweep_max", "sweep_n"] {
                    if a.0.contains_key(key) {
                        return Err(CliError::usage(key, "given without `sweep`"));
                    }
                }
                None
            }
        };
        let cfg = RunConfig {
            omega: a.get("omega")?.unwrap_or(d.omega),
            lambda: a.get("lambda")?.unwrap_or(d.lambda),
            mu: a.get("mu")?.unwrap_or(d.mu),
            delta: a.get("delta")?.unwrap_or(d.delta),
            r: a.get("r")?.unwrap_or(d.r),
            temperature,
            hbar: a.get("hbar")?.unwrap_or(d.hbar),
            mass: a.get("mass")?.unwrap_or(d.mass),
            k: a.get("k")?.unwrap_or(d.k),
            t_start: a.get("t_start")?.unwrap_or(d.t_start),
            t_end: a.get("t_end")?.unwrap_or(d.t_end),
            n_points: a.get("n_points")?.unwrap_or(d.n_points),
            sweep,
            out: a.get::<String>("out")?.map(PathBuf::from),
            format: a.get("format")?.unwrap_or(d.format),
            equilibrium_multiple: a.get("equilibrium_multiple")?.unwrap_or(d.equilibrium_multiple),
            classical_coth: a.get("classical_coth")?.unwrap_or(d.classical_coth),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Self::from_assignments(&Assignments::parse(text)?)
    }

    /// Checks the type-level invariants. Physical admissibility of the
    /// scenario is left to [`RunConfig::scenario`].
    pub fn validate(&self) -> CliResult<()> {
        fn require(ok: bool, key: &str, msg: &str) -> CliResult<()> {
            if ok {
                Ok(())
            } else {
                Err(CliError::usage(key, msg))
            }
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let nonneg = |x: f64| x.is_finite() && x >= 0.0;
        require(positive(self.omega), "omega", "must be finite and > 0")?;
        require(nonneg(self.lambda), "lambda", "must be finite and >= 0")?;
        require(self.mu.is_finite(), "mu", "must be finite")?;
        require(positive(self.delta), "delta", "must be finite and > 0")?;
        require(self.r.abs() < MAX_ABS_CORRELATION, "r", "must satisfy |r| < 0.999999")?;
        match self.temperature {
            Temperature::Coth(c) => require(c.is_finite() && c >= 1.0, "coth_eps", "must be finite and >= 1")?,
            Temperature::Absolute(t) => require(nonneg(t), "T", "must be finite and >= 0")?,
        }
        require(positive(self.hbar), "hbar", "must be finite and > 0")?;
        require(positive(self.mass), "mass", "must be finite and > 0")?;
        require(positive(self.k), "k", "must be finite and > 0")?;
        require(nonneg(self.t_start), "t_start", "must be finite and >= 0")?;
        require(
            self.t_end.is_finite() && self.t_end > self.t_start,
            "t_end",
            "must be finite and greater than t_start",
        )?;
        require(self.n_points >= 2, "n_points", "must be at least 2")?;
        require(positive(self.equilibrium_multiple), "equilibrium_multiple", "must be finite and > 0")?;
        require(
            self.classical_coth.is_finite() && self.classical_coth >= 1.0,
            "classical_coth",
            "must be finite and >= 1",
        )?;
        if let Some(s) = &self.sweep {
            require(s.min.is_finite() && s.max.is_finite(), "sweep_min", "bounds must be finite")?;
            require(s.max >= s.min, "sweep_max", "must not be below sweep_min")?;
            require(s.n >= 1, "sweep_n", "must be at least 1")?;
            require(s.n >= 2 || s.min == s.max, "sweep_n", "a single point needs sweep_min = sweep_max")?;
            let (lo, hi) = (s.min, s.max);
            match s.axis {
                SweepAxis::CothEps => require(lo >= 1.0, "sweep_min", "coth_eps must be >= 1")?,
                SweepAxis::Delta => require(lo > 0.0, "sweep_min", "delta must be > 0")?,
                SweepAxis::R => require(
                    lo.abs() < MAX_ABS_CORRELATION && hi.abs() < MAX_ABS_CORRELATION,
                    "sweep_min",
                    "r bounds must satisfy |r| < 0.999999",
                )?,
                SweepAxis::Lambda => require(lo >= 0.0, "sweep_min", "lambda must be >= 0")?,
                SweepAxis::Mu => {}
            }
            require(
                s.n.checked_mul(self.n_points).is_some_and(|c| c <= MAX_GRID_CELLS),
                "sweep_n",
                "grid exceeds 10^7 cells",
            )?;
        }
        Ok(())
    }

    /// Serializes to the `key = value` format; parsing the result yields an
    /// equal configuration.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("omega", &self.omega);
        kv("lambda", &self.lambda);
        kv("mu", &self.mu);
        kv("delta", &self.delta);
        kv("r", &self.r);
        match self.temperature {
            Temperature::Coth(c) => kv("coth_eps", &c),
            Temperature::Absolute(t) => kv("T", &t),
        }
        kv("hbar", &self.hbar);
        kv("mass", &self.mass);
        kv("k", &self.k);
        kv("t_start", &self.t_start);
        kv("t_end", &self.t_end);
        kv("n_points", &self.n_points);
        if let Some(sw) = &self.sweep {
            kv("sweep", &sw.axis.name());
            kv("sweep_min", &sw.min);
            kv("sweep_max", &sw.max);
            kv("sweep_n", &sw.n);
        }
        if let Some(out) = &self.out {
            kv("out", &out.display());
        }
        kv("format", &"csv");
        kv("equilibrium_multiple", &self.equilibrium_multiple);
        kv("classical_coth", &self.classical_coth);
        s
    }

    pub fn thresholds(&self) -> RegimeThresholds {
        RegimeThresholds {
            relaxation_multiple: self.equilibrium_multiple,
            classical_coth: self.classical_coth,
        }
    }

    pub fn times(&self) -> Vec<f64> {
        linspace(self.t_start, self.t_end, self.n_points)
    }

    pub fn params(&self) -> lindblad_osc::Result<OscillatorParams> {
        OscillatorParams::with_units(self.omega, self.lambda, self.mu, self.hbar, self.mass, self.k)
    }

    pub fn bath(&self, params: &OscillatorParams) -> lindblad_osc::Result<BathSpec> {
        match self.temperature {
            Temperature::Coth(c) => BathSpec::from_coth(c),
            Temperature::Absolute(t) => BathSpec::from_temperature(t, params),
        }
    }

    pub fn scenario(&self) -> lindblad_osc::Result<Scenario> {
        let params = self.params()?;
        let bath = self.bath(&params)?;
        Scenario::new(params, bath, InitialStateSpec::new(self.delta, self.r)?)
    }

    /// Copy with the sweep axis set to `value`.
    pub fn with_axis(&self, axis: SweepAxis, value: f64) -> RunConfig {
        let mut c = self.clone();
        match axis {
            SweepAxis::CothEps => c.temperature = Temperature::Coth(value),
            SweepAxis::Delta => c.delta = value,
            SweepAxis::R => c.r = value,
            SweepAxis::Mu => c.mu = value,
            SweepAxis::Lambda => c.lambda = value,
        }
        c
    }
}

/// `n` evenly spaced points from `a` to `b`, endpoints exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!((c.omega, c.lambda, c.mu, c.delta, c.r), (1.0, 0.1, 0.0, 2.0, 0.0));
        assert_eq!(c.temperature, Temperature::Coth(2.0));
        assert_eq!((c.t_start, c.t_end), (0.0, 40.0));
    }

    #[test]
    fn parses_file_with_comments() {
        let c = RunConfig::parse("# correlated state\nmu = 0.08\n\n  r=0.8 \ndelta = 0.5\nsweep = coth_eps\nsweep_min = 1\nsweep_max = 20\nsweep_n = 5\n")
            .unwrap();
        assert_eq!((c.mu, c.r, c.delta), (0.08, 0.8, 0.5));
        let s = c.sweep.unwrap();
        assert_eq!((s.axis, s.min, s.max, s.n), (SweepAxis::CothEps, 1.0, 20.0, 5));
    }

    fn usage_key(text: &str) -> String {
        match RunConfig::parse(text) {
            Err(CliError::Usage(m)) => m,
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_key() {
        assert!(usage_key("lamda = 0.1").contains("`lamda`"));
        assert!(usage_key("lambda = fast").contains("`lambda`"));
        assert!(usage_key("T = 1\ncoth_eps = 2").contains("`T`"));
        assert!(usage_key("r = 1.0").contains("`r`"));
        assert!(usage_key("n_points = 1").contains("`n_points`"));
        assert!(usage_key("t_start = 5\nt_end = 5").contains("`t_end`"));
        assert!(usage_key("sweep = delta").contains("`sweep_min`"));
        assert!(usage_key("sweep_n = 4").contains("`sweep_n`"));
        assert!(usage_key("sweep = omega").contains("`sweep`"));
        assert!(usage_key("mu = 0\nmu = 1").contains("`mu`"));
        assert!(usage_key("sweep = r\nsweep_min = -1\nsweep_max = 0.5\nsweep_n = 3").contains("`sweep_min`"));
        assert!(usage_key("n_points = 100000\nsweep = delta\nsweep_min = 1\nsweep_max = 2\nsweep_n = 101").contains("10^7"));
        assert!(usage_key("format = json").contains("`format`"));
        assert!(usage_key("no equals sign").contains("line 1"));
    }

    #[test]
    fn overrides_win_and_replace_temperature() {
        let file = Assignments::parse("lambda = 0.2\nT = 3").unwrap();
        let mut flags = Assignments::default();
        flags.insert("coth_eps", "5").unwrap();
        flags.insert("lambda", "0.3").unwrap();
        let c = RunConfig::from_assignments(&file.overlay(&flags)).unwrap();
        assert_eq!(c.lambda, 0.3);
        assert_eq!(c.temperature, Temperature::Coth(5.0));
    }

    #[test]
    fn dump_round_trips() {
        let mut c = RunConfig::parse("mu = 0.08\nr = -0.3\nT = 0.7\nsweep = r\nsweep_min = -0.5\nsweep_max = 0.9\nsweep_n = 7\nout = a b.csv").unwrap();
        c.lambda = 0.1 + 0.2;
        assert_eq!(RunConfig::parse(&c.dump()).unwrap(), c);
        let d = RunConfig::default();
        assert_eq!(RunConfig::parse(&d.dump()).unwrap(), d);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.0, 40.0, 401);
        assert_eq!(v.len(), 401);
        assert_eq!((v[0], v[400]), (0.0, 40.0));
        assert_eq!(v[1], 0.1);
        assert_eq!(linspace(2.0, 2.0, 1), vec![2.0]);
    }

    #[test]
    fn temperature_conversion_uses_units() {
        let c = RunConfig::parse("T = 5\nhbar = 1\nk = 1").unwrap();
        let s = c.scenario().unwrap();
        assert_eq!(s.bath().tau(), 10.0);
    }
}
