//! Human-readable move notation: SAN and long algebraic.

use super::position::{Move, MoveFlags, Position};
use super::types::PieceKind;

fn suffix(pos: &Position, mv: &Move) -> &'static str {
    let next = pos.play_unchecked(mv);
    if next.in_check(next.side_to_move()) {
        if next.has_legal_move() {
            "+"
        } else {
            "#"
        }
    } else {
        ""
    }
}

/// Standard algebraic notation with check and mate suffixes.
pub fn san(pos: &Position, mv: &Move) -> String {
    let mut s = san_body(pos, mv);
    s.push_str(suffix(pos, mv));
    s
}

fn san_body(pos: &Position, mv: &Move) -> String {
    if mv.flags.contains(MoveFlags::CASTLE_SHORT) {
        return "O-O".into();
    }
    if mv.flags.contains(MoveFlags::CASTLE_LONG) {
        return "O-O-O".into();
    }
    let mut s = String::new();
    if mv.piece.kind == PieceKind::Pawn {
        if mv.capture.is_some() {
            s.push((b'a' + mv.from.file()) as char);
            s.push('x');
        }
        s.push_str(&mv.to.to_string());
        if let Some(p) = mv.promotion {
            s.push('=');
            s.push(p.letter());
        }
        return s;
    }
    s.push(mv.piece.kind.letter());
    let rivals: Vec<Move> = pos
        .legal_moves()
        .into_iter()
        .filter(|m| m.piece == mv.piece && m.to == mv.to && m.from != mv.from)
        .collect();
    if !rivals.is_empty() {
        let file_unique = rivals.iter().all(|m| m.from.file() != mv.from.file());
        let rank_unique = rivals.iter().all(|m| m.from.rank() != mv.from.rank());
        if file_unique {
            s.push((b'a' + mv.from.file()) as char);
        } else if rank_unique {
            s.push((b'1' + mv.from.rank()) as char);
        } else {
            s.push_str(&mv.from.to_string());
        }
    }
    if mv.capture.is_some() {
        s.push('x');
    }
    s.push_str(&mv.to.to_string());
    s
}

/// Long algebraic: `e2-e4`, `Ng1-f3`, `c4xb5`, `a2-a1=B`, `O-O`, with check suffixes.
pub fn long_algebraic(pos: &Position, mv: &Move) -> String {
    let mut s = long_algebraic_plain(mv);
    s.push_str(suffix(pos, mv));
    s
}

/// Long algebraic without the check suffix; needs no position.
pub fn long_algebraic_plain(mv: &Move) -> String {
    if mv.flags.contains(MoveFlags::CASTLE_SHORT) {
        return "O-O".into();
    }
    if mv.flags.contains(MoveFlags::CASTLE_LONG) {
        return "O-O-O".into();
    }
    let mut s = String::new();
    if mv.piece.kind != PieceKind::Pawn {
        s.push(mv.piece.kind.letter());
    }
    s.push_str(&mv.from.to_string());
    s.push(if mv.capture.is_some() { 'x' } else { '-' });
    s.push_str(&mv.to.to_string());
    if let Some(p) = mv.promotion {
        s.push('=');
        s.push(p.letter());
    }
    if mv.flags.contains(MoveFlags::EN_PASSANT) {
        s.push_str(" e.p.");
    }
    s
}

fn normalize(text: &str) -> String {
    text.trim()
        .replace("0-0-0", "O-O-O")
        .replace("0-0", "O-O")
        .chars()
        .filter(|c| !matches!(c, '+' | '#' | '=' | '!' | '?'))
        .collect()
}

/// Resolves a SAN token (suffixes and `=` optional) to a legal move.
pub fn parse_san(pos: &Position, text: &str) -> Option<Move> {
    let want = normalize(text);
    let mut found = None;
    for m in pos.legal_moves() {
        if normalize(&san_body(pos, &m)) == want || m.uci().eq_ignore_ascii_case(&want) {
            if found.is_some() {
                return None;
            }
            found = Some(m);
        }
    }
    found
}

/// Plays a whitespace-separated SAN line; move numbers like `1` or `3.` are skipped.
pub fn play_san_line(start: &Position, line: &str) -> Option<(Vec<Move>, Position)> {
    let mut pos = start.clone();
    let mut moves = Vec::new();
    for tok in line.split_whitespace() {
        let t = tok.trim_end_matches('.');
        if t.chars().all(|c| c.is_ascii_digit()) {
            continue;
        }
        let t = t.trim_start_matches(|c: char| c.is_ascii_digit() || c == '.');
        let mv = parse_san(&pos, t)?;
        pos = pos.play_unchecked(&mv);
        moves.push(mv);
    }
    Some((moves, pos))
}
