//! Command-line front end for exact Chow ring computations of point
//! configurations on the projective line.

mod commands;
mod theta;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chowcfg", version, about = "Exact Chow rings of moduli of points on the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct ThetaArgs {
    /// Preset (canonical, theta-plus, theta-minus), JSON file, or inline weights "a,b,c"
    #[arg(long)]
    theta: String,
    /// Deformation parameter for the theta-plus/theta-minus presets, as "p/q"
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Forbidden subsets and genericity of a stability condition
    Stability {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// The relations R_I and S_I of a subset, checked against the torus oracle
    Relations {
        #[arg(long)]
        m: usize,
        /// Members of I, space or comma separated
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        subset: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Graded dimensions of the quotient ring
    Betti {
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Run a verification suite
    Verify {
        /// lemma-rs, recursions, stability, hilbert, quotient, minimality, certificate, b-ring, aut
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Reduce the square of a degree-1 element in the quotient
    Nilpotent {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        m: Option<usize>,
        /// Coefficients a1,...,am
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Compare the rings of the two deformations at m = 2n
    Distinguish {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Automorphisms of the ambient ring
    Aut {
        #[command(subcommand)]
        action: AutAction,
    },
}

#[derive(Subcommand)]
enum AutAction {
    /// Decide whether a matrix induces an automorphism
    Check {
        /// JSON file holding a square matrix of "p/q" strings
        #[arg(long)]
        matrix: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

/// Exit status: 0 success, 1 verification failure, 2 usage error.
pub enum Outcome {
    Success,
    VerificationFailed,
}

fn configure_workers() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("CHOWCFG_WORKERS") else {
        return Ok(());
    };
    let workers: usize = value
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("CHOWCFG_WORKERS must be a positive integer, got {value:?}"))?;
    if workers == 0 {
        anyhow::bail!("CHOWCFG_WORKERS must be a positive integer, got 0");
    }
    rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    configure_workers()?;
    match cli.command {
        Command::Stability { theta, m, output } => commands::stability(&theta, m, output),
        Command::Relations { m, subset, output } => commands::relations(m, &subset, output),
        Command::Betti { m, theta, max_degree, output } => commands::betti(&theta, m, max_degree, output),
        Command::Verify { suite, m, seed, output } => commands::verify(&suite, m, seed, output),
        Command::Nilpotent { theta, m, witness, output } => commands::nilpotent(&theta, m, &witness, output),
        Command::Distinguish { n, seed, output } => commands::distinguish(n, seed, output),
        Command::Aut { action: AutAction::Check { matrix, output } } => commands::aut_check(&matrix, output),
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
