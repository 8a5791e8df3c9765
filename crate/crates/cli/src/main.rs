use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairagg_core::synthetic::RankingModel;

mod commands;
mod config;
mod data;
mod error;
mod eval;
mod sweep;

use commands::{GenArgs, RandomSuite};
use config::{KPolicy, Overrides};
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "fairagg", version, about = "Fair rank aggregation under the footrule distance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Rankings CSV (no header, one ranking per row).
    #[arg(long)]
    rankings: Option<PathBuf>,
    /// Groups CSV with header `candidate,group`.
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated: alg1, alg2, alg3, bfi, unconstrained, oracle.
    #[arg(long, value_delimiter = ',')]
    algs: Option<Vec<String>>,
    /// Comma-separated: footrule, kendall.
    #[arg(long = "metric", value_delimiter = ',')]
    metrics: Option<Vec<String>>,
    /// Largest `d` the exhaustive oracle accepts.
    #[arg(long)]
    oracle_max_d: Option<usize>,
    /// An integer, `d/2`, or a comma list (sweep only).
    #[arg(long)]
    k: Option<KPolicy>,
    /// Per-group lower proportions, e.g. `1/3,0.25`.
    #[arg(long, value_delimiter = ',', requires = "beta")]
    alpha: Option<Vec<String>>,
    /// Per-group upper proportions.
    #[arg(long, value_delimiter = ',', requires = "alpha")]
    beta: Option<Vec<String>>,
    /// Report wall_ms as 0 so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn settings(self, external: Option<PathBuf>) -> CliResult<config::Settings> {
        Overrides {
            config: self.config,
            rankings: self.rankings,
            groups: self.groups,
            external,
            out: self.out,
            seed: self.seed,
            algs: self.algs,
            metrics: self.metrics,
            oracle_max_d: self.oracle_max_d,
            k: self.k,
            alpha: self.alpha,
            beta: self.beta,
            no_timing: self.no_timing,
        }
        .resolve()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Uniform,
    Mallows,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected algorithms on one dataset and print JSON.
    Aggregate {
        #[command(flatten)]
        common: Common,
        /// A single ranking to score alongside the algorithms.
        #[arg(long)]
        external: Option<PathBuf>,
    },
    /// Vary k, n or d and print one CSV row per point and algorithm.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Write a synthetic rankings.csv and groups.csv.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Model::Uniform)]
        model: Model,
        /// Mallows dispersion parameter.
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare solvers with the exhaustive optimum.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        /// Check this many random instances instead of a dataset.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 7)]
        max_d: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_g: usize,
    },
    /// Build the fair matching instance for a DIMACS (3,3)-SAT formula.
    ReduceSat {
        /// DIMACS file, or `-` for stdin.
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also decide satisfiability through the matching and by truth table.
        #[arg(long)]
        decide: bool,
    },
}

fn init_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("FAIRAGG_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Input(format!("FAIRAGG_THREADS: not a thread count: {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("FAIRAGG_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::Aggregate { common, external } => commands::aggregate_cmd(&common.settings(external)?),
        Command::Sweep { common } => commands::sweep_cmd(&common.settings(None)?),
        Command::Gen {
            d,
            n,
            g,
            seed,
            model,
            theta,
            out,
        } => {
            let model = match model {
                Model::Uniform => RankingModel::Uniform,
                Model::Mallows => RankingModel::Mallows { theta },
            };
            commands::gen_cmd(&GenArgs { d, n, g, seed, model }, &out)
        }
        Command::OracleCheck {
            common,
            random,
            max_d,
            max_n,
            max_g,
        } => {
            let s = common.settings(None)?;
            let suite = random.map(|count| RandomSuite {
                count,
                max_d,
                max_n,
                max_g,
            });
            if let Some(suite) = &suite {
                if suite.max_d > s.oracle_max_d {
                    return Err(CliError::Guard(format!(
                        "oracle guard breached: --max-d {} exceeds --oracle-max-d {}",
                        suite.max_d, s.oracle_max_d
                    )));
                }
            }
            commands::oracle_check_cmd(&s, suite)
        }
        Command::ReduceSat { formula, out, decide } => commands::reduce_sat_cmd(&formula, out.as_deref(), decide),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
