//! Command-line interface: enumerate flattening posets, verify the
//! structural claims, and export results. Exit code 0 iff every verdict in
//! the report passes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigRational;

use flatsphere::flat_poset::BasisVariant;
use flatsphere::report::RunReport;
use flatsphere::run;

#[derive(Parser)]
#[command(name = "flatsphere", version, about = "Exact chirotope and flattening-poset toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SphereArg {
    /// Sphere spec: cycle:n | simplex:m | join:a,b
    #[arg(long)]
    sphere: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate P(L) and export it as JSON and/or DOT.
    PosetBuild {
        #[command(flatten)]
        sphere: SphereArg,
        /// Write the poset as JSON here.
        #[arg(long)]
        out_json: Option<PathBuf>,
        /// Write the Hasse diagram as DOT here.
        #[arg(long)]
        out_dot: Option<PathBuf>,
    },
    /// Reduced homology (and collapse certificate) of the order complex of P(L).
    VerifyContractible {
        #[command(flatten)]
        sphere: SphereArg,
        /// Abort with an explicit TIMEOUT verdict after this many seconds.
        #[arg(long, default_value_t = 600)]
        budget_seconds: u64,
    },
    /// Random checks that duality commutes with orthogonal complement.
    VerifyDuality {
        /// Rank r of the upper Grassmannian Gr(r, r+2).
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lowering/raising homotopy machinery on P(cycle:n).
    VerifyF0f1 {
        #[command(flatten)]
        sphere: SphereArg,
        /// Which ordered basis the maps modify: printed | n-succ | succ-1.
        #[arg(long, default_value = "printed")]
        f0_basis_variant: String,
    },
    /// Closure witnesses for every Hasse cover of P(L).
    VerifyCovers {
        #[command(flatten)]
        sphere: SphereArg,
        /// Maximum coordinate distance between the paired flattenings.
        #[arg(long, default_value = "1/1000000")]
        delta: String,
    },
    /// Validate a flattening file and print its stratification image.
    FlatCheck {
        /// JSON file with a sphere spec and rational coordinates.
        file: PathBuf,
    },
    /// Sample flattenings and histogram their stratification images.
    FlatStrata {
        #[command(flatten)]
        sphere: SphereArg,
        /// Number of samples to draw.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn execute(cli: Cli) -> Result<RunReport, run::RunError> {
    match cli.command {
        Command::PosetBuild { sphere, out_json, out_dot } => {
            run::poset_build(&sphere.sphere, out_json.as_deref(), out_dot.as_deref())
        }
        Command::VerifyContractible { sphere, budget_seconds } => {
            run::verify_contractible(&sphere.sphere, budget_seconds)
        }
        Command::VerifyDuality { rank, trials, seed } => run::verify_duality(rank, trials, seed),
        Command::VerifyF0f1 { sphere, f0_basis_variant } => {
            let variant = BasisVariant::parse(&f0_basis_variant).ok_or_else(|| {
                run::RunError::Usage(format!(
                    "unknown f0 basis variant {f0_basis_variant:?}; expected printed, n-succ, or succ-1"
                ))
            })?;
            run::verify_f0f1(&sphere.sphere, variant)
        }
        Command::VerifyCovers { sphere, delta } => {
            let delta: BigRational = delta.parse().map_err(|_| {
                run::RunError::Usage(format!("cannot parse delta {delta:?} as a rational p/q"))
            })?;
            run::verify_covers(&sphere.sphere, &delta)
        }
        Command::FlatCheck { file } => run::flat_check(&file),
        Command::FlatStrata { sphere, trials, seed } => {
            run::flat_strata(&sphere.sphere, trials, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(report) => {
            println!("{}", report.to_json_string());
            eprintln!("{}", report.verdict_lines());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
