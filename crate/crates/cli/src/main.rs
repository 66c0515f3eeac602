use clap::Parser;
use cpdyn::{execute, parse_z, CommandKind, OutputFormat, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Analyze a finite partial dynamical system: reversible extension, ideal
/// lattice, freeness, simplicity and matrix models.
#[derive(Parser, Debug)]
#[command(name = "cpdyn", version, about)]
struct Cli {
    /// What to compute
    #[arg(value_enum)]
    command: CommandKind,

    /// System description file
    file: PathBuf,

    /// Truncation depth for the extension (default 2·|X|+2)
    #[arg(long)]
    depth: Option<usize>,

    /// Numerical tolerance for the matrix checks
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Cycle wrap-around weight as RE,IM (must be unimodular)
    #[arg(long, default_value = "1,0")]
    z: String,

    /// Output format (dot applies to the lattice command)
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    /// Lattice element index for the quotient command
    #[arg(long)]
    pair: Option<usize>,

    /// Cycle period for the witness command
    #[arg(long)]
    period: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let z = match parse_z(&cli.z) {
        Ok(z) => z,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    let config = RunConfig {
        depth: cli.depth,
        tol: cli.tol,
        z,
        output: cli.output,
        pair: cli.pair,
        period: cli.period,
    };

    let text = match std::fs::read_to_string(&cli.file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.file.display());
            return ExitCode::from(1);
        }
    };

    match execute(cli.command, &config, &text) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
