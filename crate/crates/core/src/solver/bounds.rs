//! Admissible lower bounds for reaching a target position.
//!
//! Each side's men must be matched to the target men of that side. A man's
//! cost is its move distance on an empty board; the cheapest matching
//! (solved as an assignment problem) never exceeds the moves that side
//! still has to make.

use std::sync::OnceLock;

use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;
use rustc_hash::FxHashMap;

use crate::board::{attacks::Bitboard, CastlingRights, Color, PieceKind, Position, Square};
use crate::problem::material_infeasibility;

pub const INF: i64 = 1_000;

fn knight_table() -> &'static [[u8; 64]; 64] {
    static TABLE: OnceLock<Box<[[u8; 64]; 64]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[u8::MAX; 64]; 64]);
        for from in 0..64 {
            let row = &mut t[from];
            row[from] = 0;
            let mut frontier = vec![from];
            let mut d = 0;
            while !frontier.is_empty() {
                d += 1;
                let mut next = Vec::new();
                for &s in &frontier {
                    for n in crate::board::attacks::squares(crate::board::attacks::knight(Square::from_index(s as u8))) {
                        if row[n.index()] == u8::MAX {
                            row[n.index()] = d;
                            next.push(n.index());
                        }
                    }
                }
                frontier = next;
            }
        }
        t
    })
}

/// Moves for a piece to travel between two squares on an empty board.
pub fn piece_distance(kind: PieceKind, from: Square, to: Square) -> i64 {
    if from == to {
        return 0;
    }
    let df = (from.file() as i64 - to.file() as i64).abs();
    let dr = (from.rank() as i64 - to.rank() as i64).abs();
    match kind {
        PieceKind::King => df.max(dr),
        PieceKind::Knight => knight_table()[from.index()][to.index()] as i64,
        PieceKind::Bishop => {
            if from.is_light() != to.is_light() {
                INF
            } else if df == dr {
                1
            } else {
                2
            }
        }
        PieceKind::Rook => {
            if df == 0 || dr == 0 {
                1
            } else {
                2
            }
        }
        PieceKind::Queen => {
            if df == 0 || dr == 0 || df == dr {
                1
            } else {
                2
            }
        }
        PieceKind::Pawn => INF,
    }
}

/// Pawn moves from `from` to `to` when at most `captures` captures remain.
pub fn pawn_distance(color: Color, from: Square, to: Square, captures: i64) -> i64 {
    let dir = if color == Color::White { 1 } else { -1 };
    let dr = (to.rank() as i64 - from.rank() as i64) * dir;
    let df = (to.file() as i64 - from.file() as i64).abs();
    if dr < 0 || df > dr || df > captures {
        return INF;
    }
    if from.rank() == color.pawn_start_rank() && dr - df >= 2 {
        dr - 1
    } else {
        dr
    }
}

/// Cost of turning the man `have` on `from` into the target man `want` on `to`.
pub fn man_distance(color: Color, have: PieceKind, from: Square, want: PieceKind, to: Square, captures: i64) -> i64 {
    match (have, want) {
        (PieceKind::Pawn, PieceKind::Pawn) => pawn_distance(color, from, to, captures),
        (PieceKind::Pawn, PieceKind::King) => INF,
        (PieceKind::Pawn, k) => {
            let rank = color.promotion_rank();
            (0..8)
                .map(|f| {
                    let s = Square::new(f, rank);
                    let p = pawn_distance(color, from, s, captures);
                    if p >= INF {
                        INF
                    } else {
                        (p + piece_distance(k, s, to)).min(INF)
                    }
                })
                .min()
                .unwrap_or(INF)
        }
        (a, b) if a == b => piece_distance(a, from, to),
        _ => INF,
    }
}

type Men = Vec<(Square, PieceKind)>;

fn assignment(color: Color, have: &Men, want: &Men, captures: i64) -> i64 {
    if want.is_empty() {
        return 0;
    }
    if want.len() > have.len() {
        return INF;
    }
    let m = Matrix::from_fn(want.len(), have.len(), |(r, c)| {
        let (ts, tk) = want[r];
        let (hs, hk) = have[c];
        man_distance(color, hk, hs, tk, ts, captures)
    });
    let (cost, _) = kuhn_munkres_min(&m);
    cost.min(INF)
}

fn castled(have: &Men, color: Color, short: bool) -> Men {
    let rank = color.back_rank();
    let (k_to, r_from, r_to) = if short { (6, 7, 5) } else { (2, 0, 3) };
    have.iter()
        .map(|&(s, k)| match k {
            PieceKind::King if s == Square::new(4, rank) => (Square::new(k_to, rank), k),
            PieceKind::Rook if s == Square::new(r_from, rank) => (Square::new(r_to, rank), k),
            _ => (s, k),
        })
        .collect()
}

/// Lower bound on `color`'s remaining moves, castling included.
pub fn side_bound(pos: &Position, target: &Position, color: Color, captures: i64) -> i64 {
    let have: Men = pos.men(color).map(|(s, p)| (s, p.kind)).collect();
    let want: Men = target.men(color).map(|(s, p)| (s, p.kind)).collect();
    let rights = pos.castling();
    let mut best = assignment(color, &have, &want, captures);
    for short in [true, false] {
        let has = if short { rights.short(color) } else { rights.long(color) };
        if has && best > 1 {
            best = best.min(1 + assignment(color, &castled(&have, color, short), &want, captures));
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    MoveBound,
    Material,
    Immobile,
    /// Mating-net bound for helpmates and series helpmates.
    MateNet,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::MoveBound, Rule::Material, Rule::Immobile, Rule::MateNet];

    pub fn name(self) -> &'static str {
        match self {
            Rule::MoveBound => "move-bound",
            Rule::Material => "material",
            Rule::Immobile => "immobile",
            Rule::MateNet => "mate-net",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

type CacheKey = (u8, [Bitboard; 6], u8, i8);

/// Per-search bound evaluator with a cache keyed by one side's men.
pub struct Bounds {
    target: Position,
    cache: FxHashMap<CacheKey, i64>,
}

impl Bounds {
    pub fn new(target: Position) -> Self {
        Bounds { target, cache: FxHashMap::default() }
    }

    pub fn target(&self) -> &Position {
        &self.target
    }

    /// Captures `color` still has to make.
    pub fn captures(&self, pos: &Position, color: Color) -> i64 {
        let opp = color.opposite();
        pos.color_bb(opp).count_ones() as i64 - self.target.color_bb(opp).count_ones() as i64
    }

    pub fn side(&mut self, pos: &Position, color: Color) -> i64 {
        let captures = self.captures(pos, color);
        if captures < 0 {
            return INF;
        }
        let rights = pos.castling().bits()
            & (CastlingRights::short_flag(color) | CastlingRights::long_flag(color));
        let key: CacheKey = (
            color.index() as u8,
            PieceKind::ALL.map(|k| pos.pieces(color, k)),
            rights,
            captures.min(16) as i8,
        );
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let v = side_bound(pos, &self.target, color, captures);
        self.cache.insert(key, v);
        v
    }

    /// Material rule: monotone men counts, promotions covered by vanished
    /// pawns, and enough own moves for the captures still owed.
    pub fn material_ok(&self, pos: &Position, moves: [i64; 2]) -> bool {
        if material_infeasibility(pos, &self.target).is_some() {
            return false;
        }
        Color::ALL.iter().all(|&c| {
            let caps = self.captures(pos, c);
            caps >= 0 && caps <= moves[c.index()]
        })
    }

    /// Squares of `color`'s men that may not make an ordinary move when the
    /// side has no slack: each stands on its target square and no other
    /// target man is within finite distance of it.
    pub fn locked(&self, pos: &Position, color: Color) -> Bitboard {
        let captures = self.captures(pos, color);
        let mut out = 0;
        for (s, p) in pos.men(color) {
            if self.target.piece_at(s) != Some(p) {
                continue;
            }
            let elsewhere = self
                .target
                .men(color)
                .any(|(ts, tp)| ts != s && man_distance(color, p.kind, s, tp.kind, ts, captures) < INF);
            if !elsewhere {
                out |= s.bit();
            }
        }
        out
    }
}
