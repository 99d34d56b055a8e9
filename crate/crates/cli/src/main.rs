use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shannon_cli::commands::{self, CheckName, VerifyPlan};
use shannon_cli::format::parse_base;
use shannon_cli::{CliError, Output};
use shannon_core::Base;

/// Discrete entropy and executable checks of its defining properties.
///
/// Exit codes: 0 success, 2 usage or parse error, 3 invalid distribution or
/// tree, 4 numerical check failed.
#[derive(Parser)]
#[command(name = "shannon", version)]
struct Cli {
    /// Logarithm base: any real > 1, or `e`.
    #[arg(long, global = true, default_value = "2", value_parser = parse_base)]
    base: Base,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized check (defaults differ per check).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a histogram file.
    Entropy {
        /// Histogram file (`label<TAB>value` per line).
        histogram: PathBuf,
    },
    /// Total uncertainty of a composition tree against its flattened form.
    Compose {
        /// Tree file.
        tree: PathBuf,
    },
    /// Run the property checks.
    Verify(VerifyArgs),
    /// Entropy error of rounding a probability histogram to counts over N.
    Approx {
        /// Histogram file in probability mode.
        histogram: PathBuf,
        /// Denominators, comma separated and strictly increasing.
        #[arg(long = "N", visible_alias = "denominators", value_delimiter = ',',
              default_values_t = [10, 100, 1000, 10_000])]
        denominators: Vec<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check (the default when no --check is given).
    #[arg(long)]
    all: bool,
    /// Run only the named check; repeatable.
    #[arg(long = "check", value_enum)]
    checks: Vec<CheckName>,
    /// Monotonicity: compare H(n) and H(n+1) for n below this.
    #[arg(long, default_value_t = 1_000_000)]
    n_max: u64,
    /// Additivity: x and y range over 1..=x-max.
    #[arg(long, default_value_t = 64)]
    x_max: u64,
    /// General additivity: number of random pairs.
    #[arg(long, default_value_t = 1000)]
    pairs: u64,
    /// General additivity: most outcomes per random distribution.
    #[arg(long, default_value_t = 20)]
    max_outcomes: usize,
    /// Composition: number of random trees.
    #[arg(long, default_value_t = 500)]
    trees: u64,
    /// Composition: deepest random tree.
    #[arg(long, default_value_t = 5)]
    max_depth: usize,
    /// Decomposition: number of random count vectors.
    #[arg(long, default_value_t = 1000)]
    dists: u64,
    /// Decomposition: largest total count.
    #[arg(long, default_value_t = 10_000)]
    max_total: u64,
    /// Estimate-k: points on the grid over [1, 100].
    #[arg(long, default_value_t = 1000)]
    grid_points: usize,
    /// Continuity: denominators for the 1/pi coin.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [10, 100, 1000, 10_000])]
    denominators: Vec<u64>,
}

impl VerifyArgs {
    fn plan(self, seed: Option<u64>) -> VerifyPlan {
        let checks = if self.all || self.checks.is_empty() {
            CheckName::ALL.to_vec()
        } else {
            self.checks
        };
        VerifyPlan {
            checks,
            seed,
            n_max: self.n_max,
            x_max: self.x_max,
            pairs: self.pairs,
            max_outcomes: self.max_outcomes,
            trees: self.trees,
            max_depth: self.max_depth,
            dists: self.dists,
            max_total: self.max_total,
            grid_points: self.grid_points,
            denominators: self.denominators,
        }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Entropy { histogram } => commands::entropy_cmd(&histogram, cli.base),
        Command::Compose { tree } => commands::compose_cmd(&tree, cli.base),
        Command::Verify(args) => commands::verify_cmd(&args.plan(cli.seed), cli.base),
        Command::Approx {
            histogram,
            denominators,
        } => commands::approx_cmd(&histogram, &denominators, cli.base),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let text = if json { out.json } else { out.human };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit_code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
