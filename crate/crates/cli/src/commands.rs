use clap::ValueEnum;
use deco_core::kernels::{gamma, gamma0_of_phi, phi};
use deco_core::oracle::{run_case, run_suite, suite, CaseReport, OracleCase};
use deco_core::{series, Execution};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Dataset;

/// Deviation above which an oracle comparison fails.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Figure datasets. Panels `1*` are decoherence functions, `2*` the
/// concurrence of the Bell state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// γ(t) at β = 10
    #[value(name = "1a")]
    GammaCold,
    /// γ(t) at β = 0.1
    #[value(name = "1b")]
    GammaHot,
    /// γ₀(t) at β = 0.1
    #[value(name = "1c")]
    Gamma0Hot,
    /// Φ(t), which does not depend on β
    #[value(name = "1d")]
    Phi,
    /// C(t) at β = 10
    #[value(name = "2a")]
    ConcurrenceCold,
    /// C(t) at β = 0.1
    #[value(name = "2b")]
    ConcurrenceHot,
}

impl Figure {
    /// Separation sweep, grid and regime the panel starts from; config files
    /// and `--set` apply on top.
    pub fn preset(self) -> RunConfig {
        let beta = match self {
            Figure::GammaCold | Figure::ConcurrenceCold => 10.0,
            Figure::GammaHot | Figure::Gamma0Hot | Figure::ConcurrenceHot => 0.1,
            Figure::Phi => 1.0,
        };
        RunConfig {
            beta,
            s: vec![0.5, 1.0, 2.0, 5.0],
            t_max: 30.0,
            n_steps: 301,
            ..RunConfig::default()
        }
    }
}

/// Columns s, t, gamma, gamma0, phi for every (s, t) of the config.
pub fn kernels(cfg: &RunConfig, exec: Execution) -> Result<Dataset, CliError> {
    let grid = cfg.time_grid();
    let params = cfg.s.iter().map(|&s| cfg.params(s)).collect::<Result<Vec<_>, _>>()?;
    let points: Vec<(usize, f64)> = (0..params.len()).flat_map(|i| grid.iter().map(move |&t| (i, t))).collect();
    let rows = exec.try_map(&points, |&(i, t)| -> deco_core::Result<Vec<f64>> {
        let p = &params[i];
        let big_phi = phi(t, p, &cfg.quad)?;
        Ok(vec![p.s, t, gamma(t, p, &cfg.quad)?, gamma0_of_phi(big_phi, p.beta_omega0()), big_phi])
    })?;
    let mut ds = Dataset::new(vec!["s", "t", "gamma", "gamma0", "phi"]);
    rows.into_iter().for_each(|r| ds.push(r));
    Ok(ds)
}

/// Columns s, t, C, N and the six dressing magnitudes. Fails when the
/// coherence of a GHZ-type state departs from its concurrence.
pub fn evolve(cfg: &RunConfig, exec: Execution) -> Result<Dataset, CliError> {
    let psi = cfg.amplitudes()?;
    let grid = cfg.time_grid();
    let mut ds = Dataset::new(vec![
        "s", "t", "C", "N", "abs_phi", "abs_zeta", "abs_kappa", "abs_kappa_bar", "abs_zeta_bar", "abs_phi_bar",
    ]);
    for &s in &cfg.s {
        let p = cfg.params(s)?;
        for row in series(&psi, &p, &cfg.quad, cfg.mode, &grid, exec)? {
            let mut values = vec![s, row.t, row.concurrence, row.coherence];
            values.extend(row.dressings.as_array().iter().map(|z| z.norm()));
            ds.push(values);
        }
    }
    Ok(ds)
}

pub struct OracleOutcome {
    pub dataset: Dataset,
    pub max_deviation: f64,
}

/// Compares the discrete sums with the Fock brute force, either on the
/// configured bath or on the generated suite.
pub fn oracle_check(cfg: &RunConfig, exec: Execution) -> Result<OracleOutcome, CliError> {
    let times = &cfg.oracle.times;
    let (cases, reports): (Vec<OracleCase>, Vec<CaseReport>) = if cfg.oracle.modes.is_empty() {
        let cases = suite(cfg.oracle.seed, cfg.oracle.cases);
        let reports = run_suite(&cases, times, exec)?;
        (cases, reports)
    } else {
        let case = OracleCase {
            bath: cfg.oracle_bath()?,
            psi: cfg.amplitudes()?,
            beta: cfg.beta,
            omega0: cfg.omega0,
        };
        let report = run_case(&case, times)?;
        (vec![case], vec![report])
    };
    let mut ds = Dataset::new(vec!["case", "modes", "beta", "n_max", "indicator", "t", "deviation"]);
    let mut max_deviation = 0.0f64;
    for (i, (case, report)) in cases.iter().zip(&reports).enumerate() {
        for &(t, dev) in &report.deviations {
            ds.push(vec![
                i as f64,
                case.bath.modes.len() as f64,
                case.beta,
                case.bath.n_max as f64,
                report.indicator,
                t,
                dev,
            ]);
        }
        max_deviation = max_deviation.max(report.max_deviation());
    }
    Ok(OracleOutcome {
        dataset: ds,
        max_deviation,
    })
}

pub fn figure(which: Figure, cfg: &RunConfig, exec: Execution) -> Result<Dataset, CliError> {
    let (source, column) = match which {
        Figure::GammaCold | Figure::GammaHot => (kernels(cfg, exec)?, "gamma"),
        Figure::Gamma0Hot => (kernels(cfg, exec)?, "gamma0"),
        Figure::Phi => (kernels(cfg, exec)?, "phi"),
        Figure::ConcurrenceCold | Figure::ConcurrenceHot => (evolve(cfg, exec)?, "C"),
    };
    let mut ds = Dataset::new(vec!["s", "t", column]);
    let (s, t, v) = (
        source.column("s").unwrap_or_default(),
        source.column("t").unwrap_or_default(),
        source.column(column).unwrap_or_default(),
    );
    for i in 0..v.len() {
        ds.push(vec![s[i], t[i], v[i]]);
    }
    Ok(ds)
}
