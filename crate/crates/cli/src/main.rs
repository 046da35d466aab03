use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqext::getzler::GetzlerConfig;
use eqext::liealg::DEFAULT_SYMMETRIC_CEILING;
use eqext::relcoh::DEFAULT_WEDGE_CEILING;
use eqext_cli::{commands, Outcome, EXIT_INVALID};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "eqext", version, about = "Equivariant extension checks for invariant forms on matrix groups")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Anomaly form and extension verdict for a gauge embedding file.
    Anomaly { file: PathBuf },
    /// Symbolic proof of the WZW extension identities.
    WzwVerify {
        /// Random evaluation sites for the pointwise oracle (0 skips it).
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Relative Chevalley–Eilenberg Betti numbers of a pair `g/k`.
    Relcoh {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = DEFAULT_WEDGE_CEILING)]
        ceiling: usize,
    },
    /// Dimensions of ad-invariant polynomials.
    Invariants {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_SYMMETRIC_CEILING)]
        ceiling: usize,
    },
    /// E1, E-infinity and target Poincaré series for SL(n,R).
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 40)]
        truncate: usize,
        /// Also build E1 from computed Betti numbers and invariants.
        #[arg(long)]
        computed: bool,
        #[arg(long, default_value_t = DEFAULT_SYMMETRIC_CEILING)]
        ceiling: usize,
    },
    /// Sampled checks of the equivariant De Rham operators.
    GetzlerCheck {
        #[arg(long, default_value = "sl2")]
        group: String,
        #[arg(long, default_value_t = 2)]
        ambient: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(command: Command) -> Result<Outcome, eqext_cli::CliError> {
    match command {
        Command::Anomaly { file } => commands::cmd_anomaly(&file),
        Command::WzwVerify { instances, seed } => commands::cmd_wzw_verify(instances, seed),
        Command::Relcoh { pair, ceiling } => commands::cmd_relcoh(&pair, ceiling),
        Command::Invariants { algebra, max_degree, ceiling } => commands::cmd_invariants(&algebra, max_degree, ceiling),
        Command::Series { n, truncate, computed, ceiling } => commands::cmd_series(n, truncate, computed, ceiling),
        Command::GetzlerCheck { group, ambient, arity, samples, step, seed } => {
            let defaults = GetzlerConfig::default();
            let config = GetzlerConfig {
                group,
                ambient,
                max_arity: arity,
                samples,
                step,
                seed: seed.unwrap_or(defaults.seed),
                ..defaults
            };
            commands::cmd_getzler_check(&config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            match cli.output {
                Output::Text => print!("{}", outcome.text()),
                Output::Structured => println!("{}", outcome.report.to_json()),
            }
            ExitCode::from(outcome.report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
