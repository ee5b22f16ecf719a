//! `qbases`: build representation matrices and coproducts in the quantum
//! bases of U_q(su(2)), map between bases, and run the invariant suite.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qbases_core::{DeformParam, HalfInt};

use commands::{BasisArg, CliError};
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "qbases", version, about = "Quantum-basis representations of U_q(su(2))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file, or `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit X3, X+ and X- of one irreducible representation.
    Irrep {
        /// Spin, as `3/2`, `1.5` or `2`.
        #[arg(long)]
        j: HalfInt,
        #[arg(long, value_enum)]
        basis: BasisArg,
        /// Algebra parameter `re[,im]` (analytical basis).
        #[arg(long, allow_hyphen_values = true)]
        z: Option<DeformParam>,
        /// Basis parameter `re[,im]` (quantum basis).
        #[arg(long = "z-prime", allow_hyphen_values = true)]
        z_prime: Option<DeformParam>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the coproduct images on V_j1 ⊗ V_j2 (left factor varies slowest).
    Coproduct {
        #[arg(long)]
        j1: HalfInt,
        #[arg(long)]
        j2: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        z: DeformParam,
        /// Quantum basis parameter; omitted means the analytical basis.
        #[arg(long = "z-prime", allow_hyphen_values = true)]
        z_prime: Option<DeformParam>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Map the spin-j matrices from basis z to basis z-target.
    ChangeBasis {
        #[arg(long)]
        j: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        z: DeformParam,
        #[arg(long = "z-target", allow_hyphen_values = true)]
        z_target: DeformParam,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite; exits 1 when any check fails.
    Verify {
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        checks: String,
        /// `default` or a path to a JSON grid file.
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long = "tol-scale", env = "QBASES_TOL_SCALE", default_value_t = 1.0)]
        tol_scale: f64,
        /// Worker threads; 1 runs sequentially. Defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Include per-entry wall time (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn open_out(path: &str) -> io::Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(PathBuf::from(path))?)))
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (doc, output) = match cli.command {
        Command::Irrep { j, basis, z, z_prime, output } => (commands::irrep(j, basis, z, z_prime)?, output),
        Command::Coproduct { j1, j2, z, z_prime, output } => (commands::coproduct(j1, j2, z, z_prime)?, output),
        Command::ChangeBasis { j, z, z_target, output } => (commands::change_basis(j, z, z_target)?, output),
        Command::Verify { checks, grid, tol_scale, jobs, timings, output } => {
            (commands::verify(&checks, &grid, tol_scale, jobs, timings)?, output)
        }
    };
    let mut out = open_out(&output.out).map_err(CliError::Io)?;
    doc.write(output.format, &mut out).map_err(CliError::Io)?;
    out.flush().map_err(CliError::Io)?;
    Ok(doc.passed.unwrap_or(true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let mut err = io::stderr().lock();
            let _ = output::write_json(&e.to_json(), &mut err);
            ExitCode::from(2)
        }
    }
}
