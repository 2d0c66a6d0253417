mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "univoque", version, about = "Expansions in non-integer bases with unique and special expansions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest digit of the alphabet {0, ..., M}; named bases carry their own.
    #[arg(long = "M", global = true)]
    pub m: Option<u32>,
    /// Digit budget for expansions and tail comparisons.
    #[arg(long, global = true, default_value_t = 4096)]
    pub depth: usize,
    /// Bits of the dyadic enclosures reported for bases.
    #[arg(long, global = true, default_value_t = 64)]
    pub precision: u32,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Let the library use all cores for enumeration and searches.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Greedy,
    Quasi,
    Lazy,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Realizable as the greedy expansion of 1.
    Beta,
    /// Realizable as the quasi-greedy expansion of 1.
    Alpha,
}

#[derive(Subcommand, Debug, Clone)]
pub enum LandmarkKind {
    /// The Komornik-Loreti constant: enclosure and leading digits.
    Kl {
        #[arg(long, default_value_t = 32)]
        digits: usize,
    },
    /// The generalized golden ratio.
    Golden,
    /// Words and bases along a component ladder.
    Ladder {
        /// Number of ladder steps.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Start from the base whose greedy expansion of 1 is this finite word.
        #[arg(long)]
        seed: Option<String>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Greedy, quasi-greedy or lazy expansion of x in base q.
    Expand {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = Kind::Greedy)]
        kind: Kind,
    },
    /// Exact value of an eventually periodic digit sequence.
    Pi {
        #[arg(long)]
        q: String,
        #[arg(long)]
        seq: String,
    },
    /// Place q among U, closure(U) and V.
    ClassifyBase {
        #[arg(long)]
        q: String,
    },
    /// Place x among U_q and V_q.
    ClassifyPoint {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
    },
    /// Whether a sequence is the greedy or quasi-greedy expansion of 1 in some base.
    Admissible {
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum, default_value_t = Mode::Beta)]
        mode: Mode,
    },
    /// Landmark bases.
    Landmarks {
        #[command(subcommand)]
        which: LandmarkKind,
    },
    /// The base whose greedy expansion of 1 is the given finite word.
    BaseOfWord {
        #[arg(long)]
        word: String,
    },
    /// The component of the complement of V containing q.
    NextVBase {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Forbidden blocks describing the univoque sequences for q outside V.
    Sft {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// All expansions of 1 for a base in V.
    EnumerateOne {
        #[arg(long)]
        q: String,
    },
    /// All expansions of a point of V_q \ U_q.
    EnumeratePoint {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
    },
    /// Length-n prefixes of all expansions of x.
    Tree {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
        /// Largest number of prefixes kept per level.
        #[arg(long, default_value_t = univoque::enumerate::DEFAULT_CAP)]
        cap: usize,
    },
    /// Right end of the gap of V_q starting at a point with finite greedy expansion.
    Gap {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
    },
    /// Points with finite greedy expansion increasing to a univoque point.
    Approximants {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Branching period and growth exponent below the generalized golden ratio.
    BakerBound {
        #[arg(long)]
        q: String,
        #[arg(long)]
        x: String,
    },
    /// Hausdorff dimension of U_q for an integer base, with optional prefix counts.
    Dim {
        #[arg(long)]
        q: String,
        /// Also count extendable univoque words up to this length.
        #[arg(long)]
        counts: Option<usize>,
        /// Preperiod and period bound for the tails used by the counts.
        #[arg(long, default_value_t = 3)]
        span: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::Pi { .. } => "pi",
            Command::ClassifyBase { .. } => "classify-base",
            Command::ClassifyPoint { .. } => "classify-point",
            Command::Admissible { .. } => "admissible",
            Command::Landmarks { .. } => "landmarks",
            Command::BaseOfWord { .. } => "base-of-word",
            Command::NextVBase { .. } => "next-v-base",
            Command::Sft { .. } => "sft",
            Command::EnumerateOne { .. } => "enumerate-one",
            Command::EnumeratePoint { .. } => "enumerate-point",
            Command::Tree { .. } => "tree",
            Command::Gap { .. } => "gap",
            Command::Approximants { .. } => "approximants",
            Command::BakerBound { .. } => "baker-bound",
            Command::Dim { .. } => "dim",
        }
    }
}

/// Writes to stdout; a closed pipe (say, into `head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.global.parallel {
        // the library's thread pool is built lazily and reads this once
        std::env::set_var("RAYON_NUM_THREADS", "1");
    }
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &cli.global);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(o) => {
            let unknown = o.unknown;
            if cli.global.json {
                let report = Report {
                    command: name.to_string(),
                    inputs: o.inputs,
                    result: o.result,
                    certificates: o.certificates,
                    unknown,
                    timing_ms,
                };
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize")));
            } else {
                emit(&o.text);
            }
            if unknown {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let undecided = matches!(e, univoque::Error::Undecided(_));
            if cli.global.json {
                let doc = json!({ "command": name, "error": e.to_string(), "unknown": undecided });
                emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("errors serialize")));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if undecided { 2 } else { 1 })
        }
    }
}
