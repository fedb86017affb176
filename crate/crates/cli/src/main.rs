use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use countmate::solver::{PruneSet, Rule, SearchLimits};
use countmate::Color;

mod analyze;
mod corpus;
mod oracle;
mod solve;

#[derive(Parser)]
#[command(name = "countmate", version, about = "Exact solution counts for enumerative chess problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the solutions of problem files (directories are searched for *.cep)
    Solve(SolveArgs),
    /// Evaluate a combinatorial formula
    Oracle {
        /// catalan, euler, fib, multinomial, syt, skew, extensions, chess-tableaux, updown
        name: String,
        args: Vec<String>,
        /// For `extensions`: count only extensions alternating from this colour
        #[arg(long)]
        alternating: Option<Side>,
    },
    /// Infer the move-order poset of a problem's solutions
    Analyze(AnalyzeArgs),
    /// Check problem files for structural problems
    Validate { paths: Vec<PathBuf> },
    /// Count leaf nodes of the legal move tree
    Perft {
        /// FEN, `array` or `white-array`
        position: String,
        depth: u32,
        #[arg(long)]
        divide: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    White,
    Black,
}

impl From<Side> for Color {
    fn from(s: Side) -> Color {
        match s {
            Side::White => Color::White,
            Side::Black => Color::Black,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TierArg {
    Fast,
    Medium,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    MoveBound,
    Material,
    Immobile,
    MateNet,
    All,
}

#[derive(Args, Clone)]
struct SearchFlags {
    /// Transposition table size in MiB (0 disables memoization)
    #[arg(long, env = "COUNTMATE_TT_MB", default_value_t = 512)]
    tt_mb: usize,
    /// Switch off a pruning rule (repeatable)
    #[arg(long, value_enum)]
    no_prune: Vec<RuleArg>,
    /// Store full positions in the table so hash collisions cannot occur
    #[arg(long)]
    paranoid_tt: bool,
    /// Stop after this many search nodes and report a partial count
    #[arg(long)]
    node_budget: Option<u64>,
}

impl SearchFlags {
    fn limits(&self) -> SearchLimits {
        let mut pruning = PruneSet::ALL;
        for r in &self.no_prune {
            pruning = match r {
                RuleArg::MoveBound => pruning.with(Rule::MoveBound, false),
                RuleArg::Material => pruning.with(Rule::Material, false),
                RuleArg::Immobile => pruning.with(Rule::Immobile, false),
                RuleArg::MateNet => pruning.with(Rule::MateNet, false),
                RuleArg::All => PruneSet::NONE,
            };
        }
        SearchLimits {
            tt_capacity: self.tt_mb << 20,
            paranoid_tt: self.paranoid_tt,
            pruning,
            node_budget: self.node_budget,
            ..SearchLimits::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    paths: Vec<PathBuf>,
    /// Print every solution (up to --limit)
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    #[arg(long)]
    json: bool,
    /// Tiers to include when a directory is given
    #[arg(long, value_enum, default_value = "fast")]
    tier: TierArg,
    /// Problems solved in parallel (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    search: SearchFlags,
}

#[derive(Args)]
struct AnalyzeArgs {
    path: PathBuf,
    /// Count only extensions whose colours alternate, starting with this side
    #[arg(long)]
    alternating: Option<Side>,
    /// Most solutions to enumerate
    #[arg(long, default_value_t = 100_000)]
    limit: usize,
    #[arg(long)]
    json: bool,
    /// Also print a Graphviz rendering of the poset
    #[arg(long)]
    dot: bool,
    #[command(flatten)]
    search: SearchFlags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Oracle { name, args, alternating } => oracle::run(&name, &args, alternating.map(Color::from)),
        Command::Analyze(a) => analyze::run(&a),
        Command::Validate { paths } => corpus::validate(&paths),
        Command::Perft { position, depth, divide } => corpus::perft(&position, depth, divide),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
