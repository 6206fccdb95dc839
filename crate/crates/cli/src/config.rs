//! Run configuration: a flat `key = value` text format with dotted keys.
//!
//! ```text
//! # comments and blank lines are ignored
//! alpha = 1.0
//! beta = 10.0
//! s = 0.5, 1.0, 2.0
//! p = 0.5
//! quad.rel_tol = 1e-9
//! output.format = csv
//! ```
//!
//! The initial state is either `p` (with `family = ghz|anti`) or the four
//! amplitudes `a`, `b`, `c`, `d`, each written `re` or `re,im`. Oracle baths
//! are listed as `oracle.modes = omega,g_re,g_im,phase1,phase2; ...`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use deco_core::oracle::{DiscreteBath, DiscreteMode, DEFAULT_CASES, DEFAULT_SEED, ORACLE_TIMES};
use deco_core::{Amplitudes, EvolutionMode, ModelParams, QuadratureConfig};
use num_complex::Complex64 as C64;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// √p|00⟩ + √(1−p)|11⟩
    Ghz,
    /// √p|01⟩ + √(1−p)|10⟩
    Anti,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    Family { p: f64, family: Family },
    Amplitudes([C64; 4]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSpec {
    pub seed: u64,
    pub cases: usize,
    pub times: Vec<f64>,
    /// Explicit bath; empty means the generated suite.
    pub modes: Vec<DiscreteMode>,
    pub n_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub omega0: f64,
    pub s: Vec<f64>,
    pub state: StateSpec,
    pub mode: EvolutionMode,
    pub t_max: f64,
    pub n_steps: usize,
    pub quad: QuadratureConfig,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub oracle: OracleSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            omega0: 1.0,
            s: vec![1.0],
            state: StateSpec::Family {
                p: 0.5,
                family: Family::Ghz,
            },
            mode: EvolutionMode::CorrelatedThermal,
            t_max: 10.0,
            n_steps: 101,
            quad: QuadratureConfig::default(),
            output_format: OutputFormat::Csv,
            output_path: None,
            oracle: OracleSpec {
                seed: DEFAULT_SEED,
                cases: DEFAULT_CASES,
                times: ORACLE_TIMES.to_vec(),
                modes: Vec::new(),
                n_max: None,
            },
        }
    }
}

pub const KEYS: [&str; 23] = [
    "alpha",
    "beta",
    "omega0",
    "s",
    "p",
    "family",
    "a",
    "b",
    "c",
    "d",
    "mode",
    "t_max",
    "n_steps",
    "quad.omega_max",
    "quad.rel_tol",
    "quad.min_nodes",
    "output.format",
    "output.path",
    "oracle.seed",
    "oracle.cases",
    "oracle.times",
    "oracle.modes",
    "oracle.n_max",
];

fn bad(key: &str, value: &str, what: &str) -> CliError {
    CliError::Config(format!("{key} = {value:?}: {what}"))
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim().parse().map_err(|_| bad(key, v, "expected a number"))
}

fn parse_usize(key: &str, v: &str) -> Result<usize, CliError> {
    v.trim().parse().map_err(|_| bad(key, v, "expected a non-negative integer"))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',').map(|x| parse_f64(key, x)).collect()
}

fn parse_complex(key: &str, v: &str) -> Result<C64, CliError> {
    match parse_list(key, v)?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(bad(key, v, "expected `re` or `re,im`")),
    }
}

fn parse_modes(key: &str, v: &str) -> Result<Vec<DiscreteMode>, CliError> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(';')
        .map(|m| match parse_list(key, m)?.as_slice() {
            &[omega, g_re, g_im, phase1, phase2] => Ok(DiscreteMode {
                omega,
                g: C64::new(g_re, g_im),
                phase1,
                phase2,
            }),
            _ => Err(bad(key, m, "a mode is `omega,g_re,g_im,phase1,phase2`")),
        })
        .collect()
}

fn join(values: &[f64]) -> String {
    values.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
}

/// Splits text into `(key, value)` pairs in file order.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`, got {raw:?}", n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Parses a `key=value` command-line override.
pub fn parse_override(arg: &str) -> Result<(String, String), CliError> {
    let (k, v) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set expects key=value, got {arg:?}")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

impl RunConfig {
    /// Parses a complete config file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        cfg.apply_file(&parse_assignments(text)?)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies the assignments of one file. Keys may appear once, and a file
    /// sets the state either through `p`/`family` or through amplitudes.
    pub fn apply_file(&mut self, pairs: &[(String, String)]) -> Result<(), CliError> {
        let mut seen = HashSet::new();
        for (k, _) in pairs {
            if !seen.insert(k.as_str()) {
                return Err(CliError::Config(format!("duplicate key {k}")));
            }
        }
        let by_population = seen.contains("p") || seen.contains("family");
        let by_amplitude = ["a", "b", "c", "d"].iter().any(|k| seen.contains(k));
        if by_population && by_amplitude {
            return Err(CliError::Config("set either p/family or a/b/c/d, not both".into()));
        }
        if by_amplitude {
            self.state = StateSpec::Amplitudes([C64::ZERO; 4]);
        }
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Sets a single key. Setting an amplitude switches the state to the
    /// explicit form with the other amplitudes zero; setting `p` or `family`
    /// switches back to the two-level family.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), CliError> {
        match key {
            "alpha" => self.alpha = parse_f64(key, v)?,
            "beta" => self.beta = parse_f64(key, v)?,
            "omega0" => self.omega0 = parse_f64(key, v)?,
            "s" => self.s = parse_list(key, v)?,
            "p" | "family" => {
                let (mut p, mut family) = match self.state {
                    StateSpec::Family { p, family } => (p, family),
                    StateSpec::Amplitudes(_) => (0.5, Family::Ghz),
                };
                if key == "p" {
                    p = parse_f64(key, v)?;
                } else {
                    family = match v {
                        "ghz" => Family::Ghz,
                        "anti" => Family::Anti,
                        _ => return Err(bad(key, v, "expected ghz or anti")),
                    };
                }
                self.state = StateSpec::Family { p, family };
            }
            "a" | "b" | "c" | "d" => {
                let mut amps = match self.state {
                    StateSpec::Amplitudes(a) => a,
                    StateSpec::Family { .. } => [C64::ZERO; 4],
                };
                let idx = usize::from(key.as_bytes()[0] - b'a');
                amps[idx] = parse_complex(key, v)?;
                self.state = StateSpec::Amplitudes(amps);
            }
            "mode" => {
                self.mode = match v {
                    "correlated" => EvolutionMode::CorrelatedThermal,
                    "uncorrelated" => EvolutionMode::UncorrelatedThermal,
                    _ => return Err(bad(key, v, "expected correlated or uncorrelated")),
                }
            }
            "t_max" => self.t_max = parse_f64(key, v)?,
            "n_steps" => self.n_steps = parse_usize(key, v)?,
            "quad.omega_max" => self.quad.omega_max = parse_f64(key, v)?,
            "quad.rel_tol" => self.quad.rel_tol = parse_f64(key, v)?,
            "quad.min_nodes" => self.quad.min_nodes_per_period = parse_usize(key, v)?,
            "output.format" => {
                self.output_format = match v {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad(key, v, "expected csv or json")),
                }
            }
            "output.path" => self.output_path = (!v.is_empty()).then(|| PathBuf::from(v)),
            "oracle.seed" => self.oracle.seed = v.parse().map_err(|_| bad(key, v, "expected an integer"))?,
            "oracle.cases" => self.oracle.cases = parse_usize(key, v)?,
            "oracle.times" => self.oracle.times = parse_list(key, v)?,
            "oracle.modes" => self.oracle.modes = parse_modes(key, v)?,
            "oracle.n_max" => self.oracle.n_max = if v.is_empty() { None } else { Some(parse_usize(key, v)?) },
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.s.is_empty() {
            return Err(CliError::Config("s needs at least one value".into()));
        }
        for &s in &self.s {
            self.params(s)?;
        }
        self.quad.validate()?;
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(CliError::Config(format!("t_max = {} must be positive", self.t_max)));
        }
        if self.n_steps < 2 {
            return Err(CliError::Config(format!("n_steps = {} must be at least 2", self.n_steps)));
        }
        self.amplitudes()?;
        let o = &self.oracle;
        if o.times.is_empty() || o.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::Config("oracle.times must be non-empty, finite and >= 0".into()));
        }
        if o.cases == 0 {
            return Err(CliError::Config("oracle.cases must be at least 1".into()));
        }
        if !o.modes.is_empty() {
            self.oracle_bath()?;
        } else if o.n_max.is_some() {
            return Err(CliError::Config("oracle.n_max needs oracle.modes".into()));
        }
        Ok(())
    }

    pub fn params(&self, s: f64) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.alpha, self.beta, self.omega0, s)?)
    }

    pub fn amplitudes(&self) -> Result<Amplitudes, CliError> {
        let psi = match self.state {
            StateSpec::Family { p, family } => match family {
                Family::Ghz => Amplitudes::ghz_family(p),
                Family::Anti => Amplitudes::anti_ghz_family(p),
            },
            StateSpec::Amplitudes([a, b, c, d]) => Amplitudes::new(a, b, c, d),
        };
        Ok(psi?)
    }

    /// The explicit oracle bath, if one is configured.
    pub fn oracle_bath(&self) -> Result<DiscreteBath, CliError> {
        let n_max = self
            .oracle
            .n_max
            .ok_or_else(|| CliError::Config("oracle.modes needs oracle.n_max".into()))?;
        Ok(DiscreteBath::new(self.oracle.modes.clone(), n_max)?)
    }

    pub fn time_grid(&self) -> Vec<f64> {
        deco_core::dynamics::uniform_grid(self.t_max, self.n_steps)
    }

    /// Canonical text form; `parse(to_text(c)) == c`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("alpha", format!("{:?}", self.alpha));
        put("beta", format!("{:?}", self.beta));
        put("omega0", format!("{:?}", self.omega0));
        put("s", join(&self.s));
        match self.state {
            StateSpec::Family { p, family } => {
                put("p", format!("{p:?}"));
                put("family", if family == Family::Ghz { "ghz" } else { "anti" }.into());
            }
            StateSpec::Amplitudes(amps) => {
                for (k, z) in ["a", "b", "c", "d"].iter().zip(amps) {
                    put(k, format!("{:?}, {:?}", z.re, z.im));
                }
            }
        }
        let mode = match self.mode {
            EvolutionMode::CorrelatedThermal => "correlated",
            EvolutionMode::UncorrelatedThermal => "uncorrelated",
        };
        put("mode", mode.into());
        put("t_max", format!("{:?}", self.t_max));
        put("n_steps", self.n_steps.to_string());
        put("quad.omega_max", format!("{:?}", self.quad.omega_max));
        put("quad.rel_tol", format!("{:?}", self.quad.rel_tol));
        put("quad.min_nodes", self.quad.min_nodes_per_period.to_string());
        put(
            "output.format",
            match self.output_format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            }
            .into(),
        );
        if let Some(path) = &self.output_path {
            put("output.path", path.display().to_string());
        }
        put("oracle.seed", self.oracle.seed.to_string());
        put("oracle.cases", self.oracle.cases.to_string());
        put("oracle.times", join(&self.oracle.times));
        if !self.oracle.modes.is_empty() {
            let modes: Vec<String> = self
                .oracle
                .modes
                .iter()
                .map(|m| join(&[m.omega, m.g.re, m.g.im, m.phase1, m.phase2]))
                .collect();
            put("oracle.modes", modes.join("; "));
        }
        if let Some(n) = self.oracle.n_max {
            put("oracle.n_max", n.to_string());
        }
        out
    }
}
