//! Memoized path counting shared by every "sum over moves" stipulation.

use crate::board::{Color, Move, MoveFlags, Position};
use crate::count::Tally;

use super::bounds::{Bounds, Rule};
use super::matenet::MateNet;
use super::tt::Tt;
use super::{PruneSet, SearchLimits};

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub nodes: u64,
    pub pruned: [u64; 4],
}

/// One stipulation's move rules: which steps are allowed with `r` plies
/// left, and which final positions count.
pub trait Rules {
    fn goal(&self, pos: &Position) -> bool;
    fn steps(&mut self, pos: &Position, r: u32, stats: &mut Stats) -> Vec<(Move, Position)>;

    /// Goal positions one step away.
    fn final_count(&mut self, pos: &Position, stats: &mut Stats) -> u64 {
        let steps = self.steps(pos, 1, stats);
        steps.iter().filter(|(_, c)| self.goal(c)).count() as u64
    }

    /// Paths of two plies, for rules that can count them without building
    /// every child. `None` falls back to the general recursion.
    fn two_plies(&mut self, _pos: &Position, _stats: &mut Stats) -> Option<Paths> {
        None
    }
}

/// Path counts from one node: all goal paths, and the paths one ply
/// shorter that can be completed at least once.
#[derive(Clone, Debug)]
pub struct Paths {
    pub total: Tally,
    pub prefixes: Tally,
}

impl Paths {
    const NONE: Paths = Paths { total: Tally::ZERO, prefixes: Tally::ZERO };
}

pub struct Engine<R> {
    pub rules: R,
    pub tt: Tt<Paths>,
    pub stats: Stats,
    budget: Option<u64>,
    pub aborted: bool,
}

impl<R: Rules> Engine<R> {
    pub fn new(rules: R, limits: &SearchLimits) -> Self {
        Engine {
            rules,
            tt: Tt::new(limits.tt_capacity, limits.paranoid_tt),
            stats: Stats::default(),
            budget: limits.node_budget,
            aborted: false,
        }
    }

    fn enter(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        self.stats.nodes += 1;
        if self.budget.is_some_and(|b| self.stats.nodes > b) {
            self.aborted = true;
            return false;
        }
        true
    }

    /// Goal paths of `r` plies from `pos`, with their completable prefixes.
    pub fn paths(&mut self, pos: &Position, r: u32) -> Paths {
        if !self.enter() {
            return Paths::NONE;
        }
        if r == 0 {
            let total = Tally::from(self.rules.goal(pos) as u64);
            return Paths { total, prefixes: Tally::ZERO };
        }
        if r == 1 {
            let n = self.rules.final_count(pos, &mut self.stats);
            return Paths { total: n.into(), prefixes: ((n > 0) as u64).into() };
        }
        if let Some(v) = self.tt.get(pos, r, 0) {
            return v;
        }
        if r == 2 {
            if let Some(acc) = self.rules.two_plies(pos, &mut self.stats) {
                self.tt.put(pos, r, 0, acc.clone());
                return acc;
            }
        }
        let mut acc = Paths::NONE;
        for (_, child) in self.rules.steps(pos, r, &mut self.stats) {
            let p = self.paths(&child, r - 1);
            acc.total.add(&p.total);
            acc.prefixes.add(&p.prefixes);
        }
        if !self.aborted {
            self.tt.put(pos, r, 0, acc.clone());
        }
        acc
    }

    /// Solution lines in lexicographic UCI order, at most `limit` of them.
    pub fn enumerate(&mut self, pos: &Position, r: u32, limit: usize) -> Vec<Vec<(Position, Move)>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.walk(pos, r, limit, &mut prefix, &mut out);
        out
    }

    fn walk(
        &mut self,
        pos: &Position,
        r: u32,
        limit: usize,
        prefix: &mut Vec<(Position, Move)>,
        out: &mut Vec<Vec<(Position, Move)>>,
    ) {
        if out.len() >= limit || self.aborted {
            return;
        }
        if r == 0 {
            if self.rules.goal(pos) {
                out.push(prefix.clone());
            }
            return;
        }
        let mut steps = self.rules.steps(pos, r, &mut self.stats);
        steps.sort_by_cached_key(|(m, _)| m.uci());
        for (m, child) in steps {
            if self.paths(&child, r - 1).total.is_zero() {
                continue;
            }
            prefix.push((pos.clone(), m));
            self.walk(&child, r - 1, limit, prefix, out);
            prefix.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Final-position test for proof games: placement and side to move always,
/// en passant only when the target names a square.
pub fn matches_target(pos: &Position, target: &Position) -> bool {
    pos.side_to_move() == target.side_to_move()
        && pos.same_placement(target)
        && (target.ep_target().is_none() || pos.ep_target() == target.ep_target())
}

/// Black plays a series of moves, White then mates.
pub struct SeriesHelpRules {
    net: Option<MateNet>,
}

impl SeriesHelpRules {
    pub fn new(prune: PruneSet) -> Self {
        SeriesHelpRules { net: prune.mate_net.then(MateNet::new) }
    }
}

fn mated_black(pos: &Position) -> bool {
    pos.side_to_move() == Color::Black && pos.is_checkmate()
}

fn white_mates(pos: &Position) -> u64 {
    if pos.side_to_move() != Color::White {
        return 0;
    }
    pos.count_mates()
}

/// Black moves once and White mates: the count for every Black move,
/// with the mate net screening the position first.
fn black_then_mate(net: &mut Option<MateNet>, pos: &Position, stats: &mut Stats) -> Option<Paths> {
    if pos.side_to_move() != Color::Black {
        return None;
    }
    if let Some(net) = net {
        if !net.reachable(pos, 1) {
            stats.pruned[Rule::MateNet.index()] += 1;
            return Some(Paths::NONE);
        }
    }
    let needs = net.as_mut().and_then(|n| n.one_move_needs(pos));
    let mut acc = Paths::NONE;
    let (mut total, mut prefixes) = (0u64, 0u64);
    for m in pos.legal_moves() {
        if let Some(needs) = &needs {
            let special = m.capture.is_some() || m.flags.is_castle() || m.flags.contains(MoveFlags::EN_PASSANT);
            if !special && !needs.iter().any(|&(f, t)| f & m.from.bit() != 0 && t & m.to.bit() != 0) {
                continue;
            }
        }
        stats.nodes += 1;
        let n = white_mates(&pos.play_unchecked(&m));
        total += n;
        prefixes += (n > 0) as u64;
    }
    acc.total = total.into();
    acc.prefixes = prefixes.into();
    Some(acc)
}

impl Rules for SeriesHelpRules {
    fn goal(&self, pos: &Position) -> bool {
        mated_black(pos)
    }

    fn steps(&mut self, pos: &Position, r: u32, stats: &mut Stats) -> Vec<(Move, Position)> {
        if r == 1 {
            return pos.successors();
        }
        if let Some(net) = &mut self.net {
            if !net.reachable(pos, r - 1) {
                stats.pruned[Rule::MateNet.index()] += 1;
                return Vec::new();
            }
        }
        let mut out = pos.successors();
        if r > 2 {
            out.retain(|(_, c)| !c.in_check(Color::White));
            for (_, c) in out.iter_mut() {
                *c = c.pass_turn();
            }
        }
        out
    }

    fn final_count(&mut self, pos: &Position, _: &mut Stats) -> u64 {
        white_mates(pos)
    }

    fn two_plies(&mut self, pos: &Position, stats: &mut Stats) -> Option<Paths> {
        black_then_mate(&mut self.net, pos, stats)
    }
}

/// Cooperative alternating play ending with Black checkmated.
pub struct HelpRules {
    net: Option<MateNet>,
}

impl HelpRules {
    pub fn new(prune: PruneSet) -> Self {
        HelpRules { net: prune.mate_net.then(MateNet::new) }
    }
}

impl Rules for HelpRules {
    fn goal(&self, pos: &Position) -> bool {
        mated_black(pos)
    }

    fn steps(&mut self, pos: &Position, r: u32, stats: &mut Stats) -> Vec<(Move, Position)> {
        // With two plies left White's men stand still until the mate.
        if r == 2 && pos.side_to_move() == Color::Black {
            if let Some(net) = &mut self.net {
                if !net.reachable(pos, 1) {
                    stats.pruned[Rule::MateNet.index()] += 1;
                    return Vec::new();
                }
            }
        }
        pos.successors()
    }

    fn final_count(&mut self, pos: &Position, _: &mut Stats) -> u64 {
        white_mates(pos)
    }

    fn two_plies(&mut self, pos: &Position, stats: &mut Stats) -> Option<Paths> {
        black_then_mate(&mut self.net, pos, stats)
    }
}

/// Proof games, both the two-sided and the White-only series form.
pub struct ProofRules {
    bounds: Bounds,
    series: bool,
    prune: PruneSet,
}

impl ProofRules {
    pub fn new(target: Position, series: bool, prune: PruneSet) -> Self {
        ProofRules { bounds: Bounds::new(target), series, prune }
    }

    /// Moves each side still makes with `r` plies left.
    fn moves_left(&self, pos: &Position, r: u32) -> [i64; 2] {
        let r = r as i64;
        if self.series {
            return [r, 0];
        }
        let mut m = [0; 2];
        let stm = pos.side_to_move();
        m[stm.index()] = (r + 1) / 2;
        m[stm.opposite().index()] = r / 2;
        m
    }
}

impl Rules for ProofRules {
    fn goal(&self, pos: &Position) -> bool {
        matches_target(pos, self.bounds.target())
    }

    fn steps(&mut self, pos: &Position, r: u32, stats: &mut Stats) -> Vec<(Move, Position)> {
        let moves = self.moves_left(pos, r);
        if self.prune.material && !self.bounds.material_ok(pos, moves) {
            stats.pruned[Rule::Material.index()] += 1;
            return Vec::new();
        }
        let stm = pos.side_to_move();
        let mut locked = 0;
        if self.prune.move_bound || self.prune.immobile {
            let mut slack = 0;
            for c in Color::ALL {
                let b = self.bounds.side(pos, c);
                if self.prune.move_bound && b > moves[c.index()] {
                    stats.pruned[Rule::MoveBound.index()] += 1;
                    return Vec::new();
                }
                if c == stm {
                    slack = moves[c.index()] - b;
                }
            }
            if self.prune.immobile && slack <= 0 {
                locked = self.bounds.locked(pos, stm);
            }
        }
        let mut out = Vec::new();
        for m in pos.legal_moves() {
            if locked & m.from.bit() != 0 && !m.flags.is_castle() {
                stats.pruned[Rule::Immobile.index()] += 1;
                continue;
            }
            let child = pos.play_unchecked(&m);
            if self.series {
                if child.in_check(Color::Black) {
                    continue;
                }
                out.push((m, child.pass_turn()));
            } else {
                out.push((m, child));
            }
        }
        out
    }
}
