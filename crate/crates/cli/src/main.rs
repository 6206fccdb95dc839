use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deco_cli::{configure_threads, run, Command, Figure, Sources};

/// Two-qubit dephasing in a shared bosonic bath: kernel tables, time series,
/// oracle checks and figure datasets.
///
/// Exit codes: 0 ok, 2 config, 3 numeric, 4 truncation, 5 I/O.
/// DECO_THREADS caps the worker threads (0 = all cores).
#[derive(Parser)]
#[command(name = "deco", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// gamma, gamma0 and phi over the time grid, one block per separation
    Kernels(Common),
    /// Concurrence, l1 coherence and dressing magnitudes over the time grid
    Evolve(Common),
    /// Compare the discrete-mode sums against exact diagonalization
    OracleCheck(Common),
    /// Dataset for one figure panel
    Figure {
        #[arg(value_enum)]
        which: Figure,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// key = value config file
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override one config key; repeatable, applied after --config
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output file (default: output.path, else stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Kernels(c) => (Command::Kernels, c),
        Cmd::Evolve(c) => (Command::Evolve, c),
        Cmd::OracleCheck(c) => (Command::OracleCheck, c),
        Cmd::Figure { which, common } => (Command::Figure(which), common),
    };
    let sources = Sources {
        config: common.config,
        set: common.set,
        out: common.out,
    };
    let threads = std::env::var("DECO_THREADS").ok();
    let result = configure_threads(threads.as_deref()).and_then(|()| run(command, &sources));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("deco: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
