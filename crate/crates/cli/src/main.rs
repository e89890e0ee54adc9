use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corecalc_cli::{run_script, Options, EXIT_SCRIPT_ERROR};

/// Exact cores, adjoint ideals and reductions of polynomial ideals.
#[derive(Parser)]
#[command(name = "corecalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Mode,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Mode {
    /// Run a script file.
    Run { script: PathBuf },
    /// Run statements given inline, separated by `;` or newlines.
    Eval { text: String },
}

#[derive(Args)]
struct Flags {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "CORECALC_SEED", default_value_t = 0)]
    seed: u64,
    /// Reductions intersected by `sandwich`.
    #[arg(long, global = true, default_value_t = 25)]
    trials: u32,
    /// Random coefficients lie in [-b, b] without 0.
    #[arg(long, global = true, default_value_t = 20)]
    coeff_bound: u64,
    /// Largest reduction number searched for.
    #[arg(long, global = true, default_value_t = 20)]
    r_max: u32,
    /// Emit one JSON object per command.
    #[arg(long, global = true)]
    json: bool,
    /// Compute polyhedral cores of ideals failing the normality check.
    #[arg(long, global = true)]
    force: bool,
    /// Report wall-clock time per command.
    #[arg(long, global = true)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    let opts = Options {
        seed: f.seed,
        trials: f.trials,
        coeff_bound: f.coeff_bound,
        r_max: f.r_max,
        force: f.force,
        timing: f.timing,
    };
    let text = match cli.command {
        Mode::Run { script } => match std::fs::read_to_string(&script) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error[E-IO] {}: {e}", script.display());
                return ExitCode::from(EXIT_SCRIPT_ERROR as u8);
            }
        },
        Mode::Eval { text } => text,
    };
    let out = run_script(&text, &opts, f.json);
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
