//! Library side of the `deco` command-line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use deco_core::Execution;

pub use commands::Figure;
pub use config::RunConfig;
pub use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Kernels,
    Evolve,
    OracleCheck,
    Figure(Figure),
}

#[derive(Clone, Debug, Default)]
pub struct Sources {
    pub config: Option<PathBuf>,
    /// `key=value` overrides, applied in order after the config file.
    pub set: Vec<String>,
    pub out: Option<PathBuf>,
}

/// Caps the rayon pool from the `DECO_THREADS` value (0 or unset = auto).
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value.map(str::trim).filter(|v| !v.is_empty()) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Config(format!("DECO_THREADS = {v:?} is not a thread count")))?;
    #[cfg(feature = "parallel")]
    if n > 0 {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

/// Resolves the configuration: command preset, then the config file, then
/// `--set` overrides.
pub fn load_config(command: Command, src: &Sources) -> Result<RunConfig, CliError> {
    let mut cfg = match command {
        Command::Figure(f) => f.preset(),
        _ => RunConfig::default(),
    };
    if let Some(path) = &src.config {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        cfg.apply_file(&config::parse_assignments(&text)?)?;
    }
    for arg in &src.set {
        let (k, v) = config::parse_override(arg)?;
        cfg.set(&k, &v)?;
    }
    if let Some(out) = &src.out {
        cfg.output_path = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(command: Command, src: &Sources) -> Result<(), CliError> {
    let cfg = load_config(command, src)?;
    let exec = Execution::Parallel;
    let dataset = match command {
        Command::Kernels => commands::kernels(&cfg, exec)?,
        Command::Evolve => commands::evolve(&cfg, exec)?,
        Command::Figure(f) => commands::figure(f, &cfg, exec)?,
        Command::OracleCheck => {
            let outcome = commands::oracle_check(&cfg, exec)?;
            output::emit(&outcome.dataset.render(cfg.output_format), cfg.output_path.as_deref())?;
            eprintln!(
                "max deviation {:e} over {} comparisons (tolerance {:e})",
                outcome.max_deviation,
                outcome.dataset.rows.len(),
                commands::ORACLE_TOLERANCE
            );
            if !(outcome.max_deviation < commands::ORACLE_TOLERANCE) {
                return Err(CliError::Numeric(format!(
                    "oracle deviation {:e} exceeds {:e}",
                    outcome.max_deviation,
                    commands::ORACLE_TOLERANCE
                )));
            }
            return Ok(());
        }
    };
    output::emit(&dataset.render(cfg.output_format), cfg.output_path.as_deref())
}
