//! Precomputed attack tables and ray-based sliding attacks.

use super::types::{Color, Square};

pub type Bitboard = u64;

const KNIGHT_DELTAS: [(i8, i8); 8] = [
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
];

const KING_DELTAS: [(i8, i8); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

// Order matters: the first four directions increase the square index.
const RAY_DELTAS: [(i8, i8); 8] = [
    (0, 1),
    (1, 0),
    (1, 1),
    (-1, 1),
    (0, -1),
    (-1, 0),
    (-1, -1),
    (1, -1),
];

const fn leaper_table(deltas: &[(i8, i8); 8]) -> [Bitboard; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let f = (sq % 8) as i8;
        let r = (sq / 8) as i8;
        let mut i = 0;
        while i < 8 {
            let nf = f + deltas[i].0;
            let nr = r + deltas[i].1;
            if nf >= 0 && nf < 8 && nr >= 0 && nr < 8 {
                table[sq] |= 1u64 << (nr * 8 + nf);
            }
            i += 1;
        }
        sq += 1;
    }
    table
}

const fn pawn_table(dr: i8) -> [Bitboard; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let f = (sq % 8) as i8;
        let r = (sq / 8) as i8;
        let nr = r + dr;
        if nr >= 0 && nr < 8 {
            if f > 0 {
                table[sq] |= 1u64 << (nr * 8 + f - 1);
            }
            if f < 7 {
                table[sq] |= 1u64 << (nr * 8 + f + 1);
            }
        }
        sq += 1;
    }
    table
}

const fn ray_table() -> [[Bitboard; 64]; 8] {
    let mut table = [[0u64; 64]; 8];
    let mut d = 0;
    while d < 8 {
        let mut sq = 0;
        while sq < 64 {
            let mut f = (sq % 8) as i8 + RAY_DELTAS[d].0;
            let mut r = (sq / 8) as i8 + RAY_DELTAS[d].1;
            while f >= 0 && f < 8 && r >= 0 && r < 8 {
                table[d][sq] |= 1u64 << (r * 8 + f);
                f += RAY_DELTAS[d].0;
                r += RAY_DELTAS[d].1;
            }
            sq += 1;
        }
        d += 1;
    }
    table
}

static KNIGHT: [Bitboard; 64] = leaper_table(&KNIGHT_DELTAS);
static KING: [Bitboard; 64] = leaper_table(&KING_DELTAS);
static PAWN: [[Bitboard; 64]; 2] = [pawn_table(1), pawn_table(-1)];
static RAYS: [[Bitboard; 64]; 8] = ray_table();

// BETWEEN[a][b]: squares strictly between; LINE[a][b]: the whole line through both.
const fn pair_tables(full: bool) -> [[Bitboard; 64]; 64] {
    let rays = ray_table();
    let mut table = [[0u64; 64]; 64];
    let mut a = 0;
    while a < 64 {
        let mut d = 0;
        while d < 8 {
            let mut b = 0;
            while b < 64 {
                if rays[d][a] & (1u64 << b) != 0 {
                    table[a][b] = if full {
                        rays[d][a] | rays[(d + 4) % 8][a] | (1u64 << a)
                    } else {
                        rays[d][a] & !rays[d][b] & !(1u64 << b)
                    };
                }
                b += 1;
            }
            d += 1;
        }
        a += 1;
    }
    table
}

static BETWEEN: [[Bitboard; 64]; 64] = pair_tables(false);
static LINE: [[Bitboard; 64]; 64] = pair_tables(true);

#[inline]
pub fn knight(sq: Square) -> Bitboard {
    KNIGHT[sq.index()]
}

#[inline]
pub fn king(sq: Square) -> Bitboard {
    KING[sq.index()]
}

/// Squares attacked by a pawn of `color` standing on `sq`.
#[inline]
pub fn pawn(color: Color, sq: Square) -> Bitboard {
    PAWN[color.index()][sq.index()]
}

#[inline]
fn ray(dir: usize, sq: Square, occ: Bitboard) -> Bitboard {
    let r = RAYS[dir][sq.index()];
    // The sentinel stands on a corner no ray continues past.
    let b = if dir < 4 {
        (r & occ | 1 << 63).trailing_zeros()
    } else {
        63 - (r & occ | 1).leading_zeros()
    };
    r ^ RAYS[dir][b as usize]
}

#[inline]
pub fn rook(sq: Square, occ: Bitboard) -> Bitboard {
    ray(0, sq, occ) | ray(1, sq, occ) | ray(4, sq, occ) | ray(5, sq, occ)
}

#[inline]
pub fn bishop(sq: Square, occ: Bitboard) -> Bitboard {
    ray(2, sq, occ) | ray(3, sq, occ) | ray(6, sq, occ) | ray(7, sq, occ)
}

#[inline]
pub fn queen(sq: Square, occ: Bitboard) -> Bitboard {
    rook(sq, occ) | bishop(sq, occ)
}

/// Squares strictly between `a` and `b` when they share a line, else empty.
#[inline]
pub fn between(a: Square, b: Square) -> Bitboard {
    BETWEEN[a.index()][b.index()]
}

/// The full rank, file or diagonal through `a` and `b` (empty if none).
#[inline]
pub fn line(a: Square, b: Square) -> Bitboard {
    LINE[a.index()][b.index()]
}

/// True when `a` and `b` lie on a common rank, file or diagonal.
#[inline]
pub fn aligned(a: Square, b: Square) -> bool {
    LINE[a.index()][b.index()] != 0
}

pub fn is_diagonal(a: Square, b: Square) -> bool {
    (2..4).chain(6..8).any(|d| RAYS[d][a.index()] & b.bit() != 0)
}

/// Iterate the set squares of a bitboard, lowest first.
pub fn squares(mut bb: Bitboard) -> impl Iterator<Item = Square> {
    std::iter::from_fn(move || {
        if bb == 0 {
            None
        } else {
            let i = bb.trailing_zeros() as u8;
            bb &= bb - 1;
            Some(Square::from_index(i))
        }
    })
}
