//! Exact-length directmates: strategies on the history tree, and the move
//! sequences those strategies allow.

use crate::board::{Move, Position};
use crate::count::BigCount;

use super::engine::Stats;
use super::tt::Tt;
use super::SearchLimits;

const TAG_W: u8 = 0;
const TAG_B: u8 = 1;
const TAG_S: u8 = 2;

pub struct MateSearch {
    pub tt: Tt<BigCount>,
    pub stats: Stats,
    budget: Option<u64>,
    pub aborted: bool,
}

fn mates(pos: &Position) -> Vec<(Move, Position)> {
    let mut v = pos.successors();
    v.retain(|(_, c)| c.is_checkmate());
    v
}

impl MateSearch {
    pub fn new(limits: &SearchLimits) -> Self {
        MateSearch {
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

    /// White moves that keep the game going: no mate, Black can still move.
    fn continuations(pos: &Position) -> Vec<(Move, Position)> {
        let mut v = pos.successors();
        v.retain(|(_, c)| c.has_legal_move());
        v
    }

    /// White strategies from `pos` (White to move) mating on exactly move `k`.
    pub fn white(&mut self, pos: &Position, k: u32) -> BigCount {
        if !self.enter() {
            return BigCount::zero();
        }
        if k == 1 {
            return (mates(pos).len() as u64).into();
        }
        if let Some(v) = self.tt.get(pos, k, TAG_W) {
            return v;
        }
        let mut total = BigCount::zero();
        for (_, child) in Self::continuations(pos) {
            total += &self.black(&child, k - 1);
        }
        if !self.aborted {
            self.tt.put(pos, k, TAG_W, total.clone());
        }
        total
    }

    /// Product over Black's replies of White's strategy counts; zero if Black is stuck.
    pub fn black(&mut self, pos: &Position, k: u32) -> BigCount {
        if !self.enter() {
            return BigCount::zero();
        }
        if let Some(v) = self.tt.get(pos, k, TAG_B) {
            return v;
        }
        let replies = pos.successors();
        let mut total = if replies.is_empty() { BigCount::zero() } else { BigCount::one() };
        for (_, child) in replies {
            let w = self.white(&child, k);
            if w.is_zero() {
                total = BigCount::zero();
                break;
            }
            total *= &w;
        }
        if !self.aborted {
            self.tt.put(pos, k, TAG_B, total.clone());
        }
        total
    }

    /// Full move sequences consistent with some valid strategy.
    pub fn sequences(&mut self, pos: &Position, k: u32) -> BigCount {
        if !self.enter() {
            return BigCount::zero();
        }
        if k == 1 {
            return (mates(pos).len() as u64).into();
        }
        if let Some(v) = self.tt.get(pos, k, TAG_S) {
            return v;
        }
        let mut total = BigCount::zero();
        for (_, child) in Self::continuations(pos) {
            if self.black(&child, k - 1).is_zero() {
                continue;
            }
            for (_, grand) in child.successors() {
                total += &self.sequences(&grand, k - 1);
            }
        }
        if !self.aborted {
            self.tt.put(pos, k, TAG_S, total.clone());
        }
        total
    }

    /// The sequences themselves, lexicographic by UCI, at most `limit`.
    pub fn enumerate(&mut self, pos: &Position, k: u32, limit: usize) -> Vec<Vec<(Position, Move)>> {
        let mut out = Vec::new();
        self.walk(pos, k, limit, &mut Vec::new(), &mut out);
        out
    }

    fn walk(
        &mut self,
        pos: &Position,
        k: u32,
        limit: usize,
        prefix: &mut Vec<(Position, Move)>,
        out: &mut Vec<Vec<(Position, Move)>>,
    ) {
        if out.len() >= limit || self.aborted {
            return;
        }
        let sorted = |mut v: Vec<(Move, Position)>| {
            v.sort_by_cached_key(|(m, _)| m.uci());
            v
        };
        if k == 1 {
            for (m, _) in sorted(mates(pos)) {
                if out.len() >= limit {
                    return;
                }
                prefix.push((pos.clone(), m));
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for (m, child) in sorted(Self::continuations(pos)) {
            if self.black(&child, k - 1).is_zero() {
                continue;
            }
            prefix.push((pos.clone(), m));
            for (b, grand) in sorted(child.successors()) {
                prefix.push((child.clone(), b));
                self.walk(&grand, k - 1, limit, prefix, out);
                prefix.pop();
                if out.len() >= limit {
                    break;
                }
            }
            prefix.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}
