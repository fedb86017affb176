//! Chess rules kernel.
//!
//! Positions without kings are legal inputs: a side with no king is never
//! in check, and its moves are checked for geometry only. Fifty-move and
//! repetition rules are not modelled.

pub mod attacks;
mod fen;
pub mod notation;
mod position;
mod types;
pub mod zobrist;

pub use fen::{format_fen, parse_fen, validate, FenError};
pub use position::{piece_attacks, CastlingRights, Move, MoveError, MoveFlags, Position, Status};
pub use types::{Color, Piece, PieceKind, Square};

use crate::count::BigCount;

pub const GAME_ARRAY_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -";
pub const WHITE_ARRAY_FEN: &str = "8/8/8/8/8/8/PPPPPPPP/RNBQKBNR w KQ -";

/// The standard 32-man initial position.
pub fn game_array() -> Position {
    parse_fen(GAME_ARRAY_FEN).expect("game array FEN is valid")
}

/// White's 16 men on their home squares, no Black men.
pub fn white_array() -> Position {
    parse_fen(WHITE_ARRAY_FEN).expect("white array FEN is valid")
}

pub fn legal_moves(pos: &Position) -> Vec<Move> {
    pos.legal_moves()
}

pub fn apply(pos: &Position, mv: &Move) -> Result<Position, MoveError> {
    pos.apply(mv)
}

pub fn pass_turn(pos: &Position) -> Position {
    pos.pass_turn()
}

pub fn status(pos: &Position) -> Status {
    pos.status()
}

/// Zobrist key computed from scratch.
pub fn zobrist(pos: &Position) -> u64 {
    pos.compute_hash()
}

/// Leaf count of the legal game tree at exactly `depth` plies.
pub fn perft(pos: &Position, depth: u32) -> BigCount {
    BigCount::from(perft_u64(pos, depth))
}

pub fn perft_u64(pos: &Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = pos.legal_moves();
    if depth == 1 {
        return moves.len() as u64;
    }
    moves
        .iter()
        .map(|m| perft_u64(&pos.play_unchecked(m), depth - 1))
        .sum()
}

/// Per-root-move perft split, sorted by coordinate notation.
pub fn perft_divide(pos: &Position, depth: u32) -> Vec<(String, u64)> {
    let mut out: Vec<(String, u64)> = pos
        .legal_moves()
        .iter()
        .map(|m| (m.uci(), perft_u64(&pos.play_unchecked(m), depth.saturating_sub(1))))
        .collect();
    out.sort();
    out
}
