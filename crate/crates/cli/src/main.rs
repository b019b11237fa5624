mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wavg_core::payoff::Mode;

/// Exact weighted-average payoffs and memoryless-strategy checks on game graphs.
#[derive(Debug, Parser)]
#[command(name = "wavg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the payoff of one ultimately periodic reward word.
    EvalWord {
        #[command(flatten)]
        common: Common,
        /// Word as `prefix=r0,r1;cycle=s0,s1` (prefix optional).
        #[arg(long)]
        word: String,
        /// Approximate from R_0..R_horizon instead of evaluating exactly.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Solve a game over memoryless strategies.
    Solve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        game: GameSource,
        /// Profiles evaluated before giving up.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Look for evidence that memoryless strategies are not optimal.
    CheckMemoryless {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        game: GameSource,
        #[arg(long, default_value_t = 2)]
        mem_bound: usize,
        /// Profiles plus search nodes before giving up.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Search built-in gadget games for a determinacy failure of a sequence.
    FindWitness {
        #[command(flatten)]
        common: Common,
        /// Largest memory bound swept.
        #[arg(long, default_value_t = 3)]
        mem_bound: usize,
        /// Maximum number of game checks.
        #[arg(long, default_value_t = 200)]
        budget: u64,
    },
    /// Search for a prefix-monotonicity failure over a small alphabet.
    Monotone {
        #[command(flatten)]
        common: Common,
        /// Comma-separated reward alphabet.
        #[arg(long, default_value = "0,1")]
        alphabet: String,
        #[arg(long, default_value_t = 2)]
        prefix_len: usize,
        #[arg(long, default_value_t = 2)]
        cycle_len: usize,
        /// Require nonempty prefixes in the witness.
        #[arg(long)]
        nonempty: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Run the built-in suite of known values and bounded property checks.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a built-in gadget game in the text game format.
    Gadget {
        /// g1, g2:w, g3, g4:a,b,c, gk:k[,r] or g1024.
        name: String,
        #[arg(long, default_value = "1")]
        owner: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Coefficient sequence: mean, disc:l, geom:l, blocks:b0,b1;mu=m[;prefix=..], table:c0,c1,..
    #[arg(long = "seq", default_value = "mean")]
    pub seq: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Liminf)]
    pub mode: ModeArg,
    /// Shorthand for `--mode limsup`.
    #[arg(long)]
    pub limsup: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Common {
    pub fn mode(&self) -> Mode {
        if self.limsup {
            Mode::Limsup
        } else {
            match self.mode {
                ModeArg::Liminf => Mode::Liminf,
                ModeArg::Limsup => Mode::Limsup,
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct GameSource {
    /// Game file in the text game format.
    #[arg(long, conflicts_with_all = ["gadget", "random"])]
    pub game: Option<PathBuf>,
    /// Built-in gadget instead of a file.
    #[arg(long, conflicts_with = "random")]
    pub gadget: Option<String>,
    /// Owner of every gadget state.
    #[arg(long, default_value = "1")]
    pub owner: String,
    /// Random game with this many states (see --seed).
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum out-degree of random games.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Liminf,
    Limsup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
