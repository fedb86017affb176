//! FEN reading and writing.
//!
//! Only the placement field is required. Missing fields default to White
//! to move, no castling and no en-passant target. Halfmove and fullmove
//! counters are accepted and ignored.

use super::position::{CastlingRights, Position};
use super::types::{Color, Piece, PieceKind, Square};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FenError {
    #[error("empty FEN")]
    Empty,
    #[error("too many fields ({0})")]
    TooManyFields(usize),
    #[error("placement must have 8 ranks, found {0}")]
    RankCount(usize),
    #[error("rank {rank} describes {files} files")]
    RankWidth { rank: u8, files: usize },
    #[error("invalid piece character `{0}`")]
    InvalidPiece(char),
    #[error("invalid side to move `{0}`")]
    InvalidSide(String),
    #[error("invalid castling field `{0}`")]
    InvalidCastling(String),
    #[error("castling right `{0}` requires king and rook on their home squares")]
    CastlingWithoutMen(char),
    #[error("invalid en-passant field `{0}`")]
    InvalidEnPassant(String),
    #[error("en-passant target {0} does not match a double pawn push")]
    InconsistentEnPassant(Square),
    #[error("invalid move counter `{0}`")]
    InvalidCounter(String),
    #[error("more than one {0} king")]
    TooManyKings(Color),
    #[error("pawn on back rank at {0}")]
    PawnOnBackRank(Square),
    #[error("{0} is not to move but is in check")]
    OpponentInCheck(Color),
}

pub fn parse_fen(text: &str) -> Result<Position, FenError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.is_empty() {
        return Err(FenError::Empty);
    }
    if fields.len() > 6 {
        return Err(FenError::TooManyFields(fields.len()));
    }
    let mut placement = Vec::new();
    let ranks: Vec<&str> = fields[0].split('/').collect();
    if ranks.len() != 8 {
        return Err(FenError::RankCount(ranks.len()));
    }
    for (i, row) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0usize;
        for c in row.chars() {
            if let Some(d) = c.to_digit(10) {
                if d == 0 || d > 8 {
                    return Err(FenError::InvalidPiece(c));
                }
                file += d as usize;
            } else {
                let p = Piece::from_fen_char(c).ok_or(FenError::InvalidPiece(c))?;
                if file < 8 {
                    placement.push((Square::new(file as u8, rank), p));
                }
                file += 1;
            }
        }
        if file != 8 {
            return Err(FenError::RankWidth { rank: rank + 1, files: file });
        }
    }

    let side = match fields.get(1) {
        None => Color::White,
        Some(&"w") => Color::White,
        Some(&"b") => Color::Black,
        Some(s) => return Err(FenError::InvalidSide(s.to_string())),
    };

    let mut castling = CastlingRights::NONE;
    if let Some(&c) = fields.get(2) {
        if c != "-" {
            for ch in c.chars() {
                let flag = match ch {
                    'K' => CastlingRights::WHITE_SHORT,
                    'Q' => CastlingRights::WHITE_LONG,
                    'k' => CastlingRights::BLACK_SHORT,
                    'q' => CastlingRights::BLACK_LONG,
                    _ => return Err(FenError::InvalidCastling(c.to_string())),
                };
                if castling.has(flag) {
                    return Err(FenError::InvalidCastling(c.to_string()));
                }
                castling.set(flag, true);
            }
        }
    }

    let ep = match fields.get(3) {
        None | Some(&"-") => None,
        Some(s) => Some(s.parse::<Square>().map_err(|_| FenError::InvalidEnPassant(s.to_string()))?),
    };

    for s in fields.iter().skip(4) {
        if s.parse::<u32>().is_err() {
            return Err(FenError::InvalidCounter(s.to_string()));
        }
    }

    let pos = Position::from_parts(placement, side, castling, ep);
    validate(&pos)?;
    Ok(pos)
}

/// Checks every structural invariant of a position.
pub fn validate(pos: &Position) -> Result<(), FenError> {
    for c in Color::ALL {
        if pos.count(c, PieceKind::King) > 1 {
            return Err(FenError::TooManyKings(c));
        }
    }
    for sq in Square::all() {
        if let Some(p) = pos.piece_at(sq) {
            if p.kind == PieceKind::Pawn && (sq.rank() == 0 || sq.rank() == 7) {
                return Err(FenError::PawnOnBackRank(sq));
            }
        }
    }
    let rights = pos.castling();
    for (ch, flag, color, rook_file) in [
        ('K', CastlingRights::WHITE_SHORT, Color::White, 7),
        ('Q', CastlingRights::WHITE_LONG, Color::White, 0),
        ('k', CastlingRights::BLACK_SHORT, Color::Black, 7),
        ('q', CastlingRights::BLACK_LONG, Color::Black, 0),
    ] {
        if rights.has(flag) {
            let rank = color.back_rank();
            let king_ok = pos.piece_at(Square::new(4, rank)) == Some(Piece::new(color, PieceKind::King));
            let rook_ok = pos.piece_at(Square::new(rook_file, rank)) == Some(Piece::new(color, PieceKind::Rook));
            if !king_ok || !rook_ok {
                return Err(FenError::CastlingWithoutMen(ch));
            }
        }
    }
    if let Some(ep) = pos.ep_target() {
        // The pawn that just double-pushed belongs to the side not to move.
        let mover = pos.side_to_move().opposite();
        let (ep_rank, pawn_rank, origin_rank) = match mover {
            Color::White => (2, 3, 1),
            Color::Black => (5, 4, 6),
        };
        let pawn_sq = Square::new(ep.file(), pawn_rank);
        let ok = ep.rank() == ep_rank
            && pos.piece_at(pawn_sq) == Some(Piece::new(mover, PieceKind::Pawn))
            && pos.piece_at(ep).is_none()
            && pos.piece_at(Square::new(ep.file(), origin_rank)).is_none();
        if !ok {
            return Err(FenError::InconsistentEnPassant(ep));
        }
    }
    let waiting = pos.side_to_move().opposite();
    if pos.in_check(waiting) {
        return Err(FenError::OpponentInCheck(waiting));
    }
    Ok(())
}

/// Placement, side, castling and en-passant fields.
pub fn format_fen(pos: &Position) -> String {
    let mut s = String::with_capacity(80);
    for rank in (0..8).rev() {
        let mut empty = 0;
        for file in 0..8 {
            match pos.piece_at(Square::new(file, rank)) {
                Some(p) => {
                    if empty > 0 {
                        s.push(char::from_digit(empty, 10).unwrap());
                        empty = 0;
                    }
                    s.push(p.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            s.push(char::from_digit(empty, 10).unwrap());
        }
        if rank > 0 {
            s.push('/');
        }
    }
    s.push(' ');
    s.push(if pos.side_to_move() == Color::White { 'w' } else { 'b' });
    s.push(' ');
    let c = pos.castling();
    if c.is_empty() {
        s.push('-');
    } else {
        for (flag, ch) in [
            (CastlingRights::WHITE_SHORT, 'K'),
            (CastlingRights::WHITE_LONG, 'Q'),
            (CastlingRights::BLACK_SHORT, 'k'),
            (CastlingRights::BLACK_LONG, 'q'),
        ] {
            if c.has(flag) {
                s.push(ch);
            }
        }
    }
    s.push(' ');
    match pos.ep_target() {
        Some(sq) => s.push_str(&sq.to_string()),
        None => s.push('-'),
    }
    s
}
