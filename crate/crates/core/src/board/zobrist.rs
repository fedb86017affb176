//! Zobrist keys.
//!
//! The key table is generated at compile time by SplitMix64 from
//! [`SEED`], so hashes are identical across runs, builds and platforms.

use super::types::{Color, Piece, Square};

pub const SEED: u64 = 0x9E37_79B9_7F4A_7C15;

const fn splitmix(state: u64) -> (u64, u64) {
    let s = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = s;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (s, z ^ (z >> 31))
}

struct Keys {
    pieces: [[u64; 64]; 12],
    black_to_move: u64,
    castling: [u64; 4],
    ep_file: [u64; 8],
}

const fn build() -> Keys {
    let mut state = SEED;
    let mut pieces = [[0u64; 64]; 12];
    let mut p = 0;
    while p < 12 {
        let mut s = 0;
        while s < 64 {
            let (ns, v) = splitmix(state);
            state = ns;
            pieces[p][s] = v;
            s += 1;
        }
        p += 1;
    }
    let (ns, black_to_move) = splitmix(state);
    state = ns;
    let mut castling = [0u64; 4];
    let mut i = 0;
    while i < 4 {
        let (ns, v) = splitmix(state);
        state = ns;
        castling[i] = v;
        i += 1;
    }
    let mut ep_file = [0u64; 8];
    i = 0;
    while i < 8 {
        let (ns, v) = splitmix(state);
        state = ns;
        ep_file[i] = v;
        i += 1;
    }
    Keys {
        pieces,
        black_to_move,
        castling,
        ep_file,
    }
}

static KEYS: Keys = build();

#[inline]
pub fn piece(p: Piece, sq: Square) -> u64 {
    KEYS.pieces[p.index()][sq.index()]
}

#[inline]
pub fn side(color: Color) -> u64 {
    match color {
        Color::White => 0,
        Color::Black => KEYS.black_to_move,
    }
}

/// XOR of the keys of every set castling flag (bit layout of `CastlingRights`).
#[inline]
pub fn castling(bits: u8) -> u64 {
    let mut h = 0;
    for i in 0..4 {
        if bits & (1 << i) != 0 {
            h ^= KEYS.castling[i];
        }
    }
    h
}

#[inline]
pub fn ep(sq: Option<Square>) -> u64 {
    sq.map_or(0, |s| KEYS.ep_file[s.file() as usize])
}
