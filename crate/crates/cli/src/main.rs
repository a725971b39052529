use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gramcal::commands::{self, check_options, Outcome};
use gramcal::Mode;
use gramcal_core::verify::DEFAULT_CELL_CAP;

#[derive(Parser)]
#[command(
    name = "gramcal",
    version,
    about = "Exact weighted Brianchon-Gram, Brion and polar decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Largest hyperplane count verified cell by cell.
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: usize,
    /// Fall back to random sampling with this many trials above the cap.
    #[arg(long)]
    fallback_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a polytope file and verify the result against 1^w_P.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Polarizing covector, e.g. `1,2`; sampled when omitted.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Re-verify a JSON report produced by `decompose`.
    Check {
        report: PathBuf,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Weighted lattice-point sum over a box, directly and via the decomposition.
    LatticeSum {
        file: PathBuf,
        /// Per-axis bounds `a1:b1,a2:b2,...`.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: String,
    },
    /// Draw the polytope and every term of a decomposition as SVG panels.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Faces, genericity class and non-simple vertices.
    Info { file: PathBuf },
}

fn run(cli: Cli) -> gramcal::Result<Outcome> {
    match cli.command {
        Command::Decompose {
            file,
            mode,
            xi,
            out,
            verify,
        } => {
            let opts = check_options(verify.cell_cap, verify.fallback_samples, verify.seed);
            commands::cmd_decompose(&file, mode, xi.as_deref(), out.as_ref(), &opts)
        }
        Command::Check { report, verify } => {
            let opts = check_options(verify.cell_cap, verify.fallback_samples, verify.seed);
            commands::cmd_check(&report, &opts)
        }
        Command::LatticeSum { file, bounds } => commands::cmd_lattice_sum(&file, &bounds),
        Command::Render { file, mode, xi, out } => commands::cmd_render(&file, mode, xi.as_deref(), &out),
        Command::Info { file } => commands::cmd_info(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let gramcal::CliError::Core(gramcal_core::Error::CellCapExceeded { found, .. }) = e {
                eprintln!(
                    "hint: pass --cell-cap {found} for an exact check, or --fallback-samples N to sample"
                );
            }
            ExitCode::from(2)
        }
    }
}
