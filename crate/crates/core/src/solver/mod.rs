//! Depth-exact solution counting.

pub mod bounds;
mod directmate;
mod engine;
pub mod matenet;
pub mod tt;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::board::{notation, Color, Move, Position};
use crate::count::BigCount;
use crate::problem::{CountMode, Problem, Stipulation};

pub use bounds::Rule;
pub use engine::{matches_target, Stats};

use directmate::MateSearch;
use engine::{Engine, HelpRules, ProofRules, Rules, SeriesHelpRules};

/// Pruning rules switched on. The first three apply to proof games, the
/// mating-net bound to helpmates of both kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneSet {
    pub move_bound: bool,
    pub material: bool,
    pub immobile: bool,
    #[serde(default = "yes")]
    pub mate_net: bool,
}

fn yes() -> bool {
    true
}

impl PruneSet {
    pub const ALL: PruneSet = PruneSet { move_bound: true, material: true, immobile: true, mate_net: true };
    pub const NONE: PruneSet = PruneSet { move_bound: false, material: false, immobile: false, mate_net: false };

    pub fn enabled(&self, rule: Rule) -> bool {
        match rule {
            Rule::MoveBound => self.move_bound,
            Rule::Material => self.material,
            Rule::Immobile => self.immobile,
            Rule::MateNet => self.mate_net,
        }
    }

    pub fn with(mut self, rule: Rule, on: bool) -> Self {
        match rule {
            Rule::MoveBound => self.move_bound = on,
            Rule::Material => self.material = on,
            Rule::Immobile => self.immobile = on,
            Rule::MateNet => self.mate_net = on,
        }
        self
    }

    /// Every on/off combination of the rules.
    pub fn subsets() -> impl Iterator<Item = PruneSet> {
        (0..1u8 << Rule::ALL.len()).map(|bits| {
            Rule::ALL
                .iter()
                .enumerate()
                .fold(PruneSet::NONE, |set, (i, &r)| set.with(r, bits >> i & 1 == 1))
        })
    }
}

impl Default for PruneSet {
    fn default() -> Self {
        PruneSet::ALL
    }
}

pub const DEFAULT_TT_BYTES: usize = 512 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Transposition table budget in bytes; zero disables memoization.
    pub tt_capacity: usize,
    pub paranoid_tt: bool,
    pub enumerate: bool,
    pub enumerate_limit: usize,
    pub pruning: PruneSet,
    pub node_budget: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            tt_capacity: DEFAULT_TT_BYTES,
            paranoid_tt: false,
            enumerate: false,
            enumerate_limit: 1000,
            pruning: PruneSet::ALL,
            node_budget: None,
        }
    }
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub id: String,
    pub stipulation: String,
    pub count: BigCount,
    /// Series helpmates: series after which White has at least one mate.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distinct_series: Option<BigCount>,
    pub nodes_visited: u64,
    pub tt_hits: u64,
    pub tt_entries: u64,
    #[serde(rename = "elapsed_secs", with = "secs")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<Vec<String>>>,
    pub truncated: bool,
    /// The node budget ran out; `count` is a lower bound only.
    pub incomplete: bool,
    pub pruned_by: BTreeMap<String, u64>,
    #[serde(skip)]
    pub lines: Option<Vec<Vec<Move>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{op} cannot solve `{found}`")]
    Mismatch { op: &'static str, found: String },
    #[error("problem has no start position")]
    MissingStart,
    #[error("proof game has no target position")]
    MissingTarget,
    #[error("{0} must be to move in the start position")]
    SideToMove(Color),
    #[error("strategies cannot be listed as move sequences")]
    NotEnumerable,
}

fn start_of(p: &Problem) -> Result<Position, SolveError> {
    let s = p.start_position().ok_or(SolveError::MissingStart)?;
    if s.side_to_move() != p.stipulation.first_mover() {
        return Err(SolveError::SideToMove(p.stipulation.first_mover()));
    }
    Ok(s)
}

fn render(lines: &[Vec<(Position, Move)>]) -> Vec<Vec<String>> {
    lines
        .iter()
        .map(|l| l.iter().map(|(p, m)| notation::long_algebraic(p, m)).collect())
        .collect()
}

fn report(p: &Problem, count: BigCount, stats: &Stats, tt_hits: u64, tt_entries: usize, aborted: bool, t0: Instant) -> CountReport {
    CountReport {
        id: p.id.clone(),
        stipulation: p.stipulation.to_string(),
        count,
        nodes_visited: stats.nodes,
        tt_hits,
        tt_entries: tt_entries as u64,
        elapsed: t0.elapsed(),
        incomplete: aborted,
        pruned_by: Rule::ALL.iter().map(|r| (r.name().to_string(), stats.pruned[r.index()])).collect(),
        ..CountReport::default()
    }
}

fn run<R: Rules>(p: &Problem, lim: &SearchLimits, rules: R, start: &Position, plies: u32, series: bool) -> CountReport {
    let t0 = Instant::now();
    let mut e = Engine::new(rules, lim);
    let paths = e.paths(start, plies);
    let count = BigCount::from(paths.total);
    let distinct = series.then(|| BigCount::from(paths.prefixes));
    let mut lines = None;
    let mut truncated = false;
    if lim.enumerate && !e.aborted {
        let l = e.enumerate(start, plies, lim.enumerate_limit);
        truncated = count > BigCount::from(l.len());
        lines = Some(l);
    }
    let mut r = report(p, count, &e.stats, e.tt.hits, e.tt.len(), e.aborted, t0);
    r.distinct_series = distinct;
    r.truncated = truncated;
    if let Some(l) = lines {
        r.solutions = Some(render(&l));
        r.lines = Some(l.into_iter().map(|x| x.into_iter().map(|(_, m)| m).collect()).collect());
    }
    r
}

pub fn count_series_helpmate(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    let Stipulation::SeriesHelpmate { n } = p.stipulation else {
        return Err(SolveError::Mismatch { op: "series helpmate counter", found: p.stipulation.to_string() });
    };
    let start = start_of(p)?;
    Ok(run(p, lim, SeriesHelpRules::new(lim.pruning), &start, n + 1, true))
}

pub fn count_series_proof_game(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    let Stipulation::SeriesProofGame { n } = p.stipulation else {
        return Err(SolveError::Mismatch { op: "series proof game counter", found: p.stipulation.to_string() });
    };
    let start = start_of(p)?;
    let target = p.target.clone().ok_or(SolveError::MissingTarget)?;
    Ok(run(p, lim, ProofRules::new(target, true, lim.pruning), &start, n, false))
}

pub fn count_proof_game(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    let Stipulation::ProofGame { plies } = p.stipulation else {
        return Err(SolveError::Mismatch { op: "proof game counter", found: p.stipulation.to_string() });
    };
    let start = start_of(p)?;
    let target = p.target.clone().ok_or(SolveError::MissingTarget)?;
    Ok(run(p, lim, ProofRules::new(target, false, lim.pruning), &start, plies, false))
}

pub fn count_helpmate(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    let Stipulation::Helpmate { plies, .. } = p.stipulation else {
        return Err(SolveError::Mismatch { op: "helpmate counter", found: p.stipulation.to_string() });
    };
    let start = start_of(p)?;
    Ok(run(p, lim, HelpRules::new(lim.pruning), &start, plies, false))
}

fn directmate(p: &Problem, lim: &SearchLimits, want: CountMode) -> Result<CountReport, SolveError> {
    let op = match want {
        CountMode::Strategies => "strategy counter",
        CountMode::Sequences => "sequence counter",
    };
    let n = match p.stipulation {
        Stipulation::DirectMateExact { n, mode } if mode == want => n,
        _ => return Err(SolveError::Mismatch { op, found: p.stipulation.to_string() }),
    };
    let start = start_of(p)?;
    let t0 = Instant::now();
    let mut s = MateSearch::new(lim);
    let count = match want {
        CountMode::Strategies => s.white(&start, n),
        CountMode::Sequences => s.sequences(&start, n),
    };
    let mut r = report(p, count, &s.stats, s.tt.hits, s.tt.len(), s.aborted, t0);
    if lim.enumerate && want == CountMode::Sequences && !s.aborted {
        let l = s.enumerate(&start, n, lim.enumerate_limit);
        r.truncated = r.count > BigCount::from(l.len());
        r.solutions = Some(render(&l));
        r.lines = Some(l.into_iter().map(|x| x.into_iter().map(|(_, m)| m).collect()).collect());
    }
    r.elapsed = t0.elapsed();
    Ok(r)
}

pub fn count_mate_strategies_exact(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    directmate(p, lim, CountMode::Strategies)
}

pub fn count_mate_sequences_exact(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    directmate(p, lim, CountMode::Sequences)
}

/// Counts with whichever counter the stipulation calls for.
pub fn solve(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    match p.stipulation {
        Stipulation::SeriesHelpmate { .. } => count_series_helpmate(p, lim),
        Stipulation::SeriesProofGame { .. } => count_series_proof_game(p, lim),
        Stipulation::ProofGame { .. } => count_proof_game(p, lim),
        Stipulation::Helpmate { .. } => count_helpmate(p, lim),
        Stipulation::DirectMateExact { mode: CountMode::Strategies, .. } => {
            if lim.enumerate {
                return Err(SolveError::NotEnumerable);
            }
            count_mate_strategies_exact(p, lim)
        }
        Stipulation::DirectMateExact { mode: CountMode::Sequences, .. } => count_mate_sequences_exact(p, lim),
    }
}

/// Counts and lists solutions (lexicographic by UCI), up to the limit.
pub fn enumerate_solutions(p: &Problem, lim: &SearchLimits) -> Result<CountReport, SolveError> {
    if matches!(p.stipulation, Stipulation::DirectMateExact { mode: CountMode::Strategies, .. }) {
        return Err(SolveError::NotEnumerable);
    }
    solve(p, &SearchLimits { enumerate: true, ..lim.clone() })
}
