//! The bitboard generator against a slow mailbox generator written from the
//! rules alone.

use std::collections::BTreeSet;

use countmate::board::{format_fen, game_array, parse_fen, perft_u64, Color, Position, Status};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    P,
    N,
    B,
    R,
    Q,
    K,
}

type Man = (bool, Kind);

/// Mailbox board; `true` is White. Squares are (file, rank) from a1.
#[derive(Clone)]
struct Mailbox {
    cells: [[Option<Man>; 8]; 8],
    white: bool,
    castle: [bool; 4],
    ep: Option<(i8, i8)>,
}

const KNIGHT: [(i8, i8); 8] = [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)];
const KING: [(i8, i8); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
const ORTHO: [(i8, i8); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
const DIAG: [(i8, i8); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

fn on(f: i8, r: i8) -> bool {
    (0..8).contains(&f) && (0..8).contains(&r)
}

fn name(f: i8, r: i8) -> String {
    format!("{}{}", (b'a' + f as u8) as char, r + 1)
}

impl Mailbox {
    fn from_fen(fen: &str) -> Self {
        let mut parts = fen.split_whitespace();
        let mut cells = [[None; 8]; 8];
        for (i, row) in parts.next().unwrap().split('/').enumerate() {
            let r = 7 - i;
            let mut f = 0;
            for c in row.chars() {
                if let Some(d) = c.to_digit(10) {
                    f += d as usize;
                    continue;
                }
                let kind = match c.to_ascii_lowercase() {
                    'p' => Kind::P,
                    'n' => Kind::N,
                    'b' => Kind::B,
                    'r' => Kind::R,
                    'q' => Kind::Q,
                    _ => Kind::K,
                };
                cells[f][r] = Some((c.is_ascii_uppercase(), kind));
                f += 1;
            }
        }
        let white = parts.next() == Some("w");
        let rights = parts.next().unwrap_or("-");
        let castle = ['K', 'Q', 'k', 'q'].map(|c| rights.contains(c));
        let ep = parts.next().filter(|s| *s != "-").map(|s| {
            let b = s.as_bytes();
            ((b[0] - b'a') as i8, (b[1] - b'1') as i8)
        });
        Mailbox { cells, white, castle, ep }
    }

    fn at(&self, f: i8, r: i8) -> Option<Man> {
        self.cells[f as usize][r as usize]
    }

    fn attacked(&self, f: i8, r: i8, by: bool) -> bool {
        for (df, dr) in KNIGHT {
            if on(f + df, r + dr) && self.at(f + df, r + dr) == Some((by, Kind::N)) {
                return true;
            }
        }
        for (df, dr) in KING {
            if on(f + df, r + dr) && self.at(f + df, r + dr) == Some((by, Kind::K)) {
                return true;
            }
        }
        let back = if by { -1 } else { 1 };
        for df in [-1, 1] {
            if on(f + df, r + back) && self.at(f + df, r + back) == Some((by, Kind::P)) {
                return true;
            }
        }
        for (dirs, kinds) in [(ORTHO, [Kind::R, Kind::Q]), (DIAG, [Kind::B, Kind::Q])] {
            for (df, dr) in dirs {
                let (mut x, mut y) = (f + df, r + dr);
                while on(x, y) {
                    if let Some((c, k)) = self.at(x, y) {
                        if c == by && kinds.contains(&k) {
                            return true;
                        }
                        break;
                    }
                    x += df;
                    y += dr;
                }
            }
        }
        false
    }

    fn king(&self, side: bool) -> Option<(i8, i8)> {
        (0..8).flat_map(|f| (0..8).map(move |r| (f, r))).find(|&(f, r)| self.at(f, r) == Some((side, Kind::K)))
    }

    fn in_check(&self, side: bool) -> bool {
        self.king(side).is_some_and(|(f, r)| self.attacked(f, r, !side))
    }

    /// (uci, successor) for every legal move.
    fn legal(&self) -> Vec<(String, Mailbox)> {
        let us = self.white;
        let mut out = Vec::new();
        let push = |from: (i8, i8), to: (i8, i8), promo: Option<Kind>, out: &mut Vec<(String, Mailbox)>| {
            let mut next = self.clone();
            let man = next.cells[from.0 as usize][from.1 as usize].take().unwrap();
            let placed = promo.map_or(man, |k| (us, k));
            if man.1 == Kind::P && Some(to) == self.ep && self.at(to.0, to.1).is_none() {
                next.cells[to.0 as usize][from.1 as usize] = None;
            }
            if man.1 == Kind::K && (to.0 - from.0).abs() == 2 {
                let (rf, nf) = if to.0 == 6 { (7, 5) } else { (0, 3) };
                let rook = next.cells[rf][from.1 as usize].take();
                next.cells[nf][from.1 as usize] = rook;
            }
            next.cells[to.0 as usize][to.1 as usize] = Some(placed);
            next.ep = (man.1 == Kind::P && (to.1 - from.1).abs() == 2).then_some((from.0, (from.1 + to.1) / 2));
            for (i, (f, r)) in [(7, 0), (0, 0), (7, 7), (0, 7)].into_iter().enumerate() {
                if from == (f, r) || to == (f, r) || from == (4, if i < 2 { 0 } else { 7 }) {
                    next.castle[i] = false;
                }
            }
            next.white = !us;
            if next.in_check(us) {
                return;
            }
            let mut uci = format!("{}{}", name(from.0, from.1), name(to.0, to.1));
            if let Some(k) = promo {
                uci.push(match k {
                    Kind::N => 'N',
                    Kind::B => 'B',
                    Kind::R => 'R',
                    _ => 'Q',
                });
            }
            out.push((uci, next));
        };
        for f in 0..8 {
            for r in 0..8 {
                let Some((c, kind)) = self.at(f, r) else { continue };
                if c != us {
                    continue;
                }
                let target_ok = |x: i8, y: i8| on(x, y) && self.at(x, y).is_none_or(|(c2, _)| c2 != us);
                match kind {
                    Kind::P => {
                        let dir = if us { 1 } else { -1 };
                        let last = if us { 7 } else { 0 };
                        let step = |to: (i8, i8), out: &mut Vec<(String, Mailbox)>| {
                            if to.1 == last {
                                for k in [Kind::Q, Kind::R, Kind::B, Kind::N] {
                                    push((f, r), to, Some(k), out);
                                }
                            } else {
                                push((f, r), to, None, out);
                            }
                        };
                        if on(f, r + dir) && self.at(f, r + dir).is_none() {
                            step((f, r + dir), &mut out);
                            let home = if us { 1 } else { 6 };
                            if r == home && self.at(f, r + 2 * dir).is_none() {
                                step((f, r + 2 * dir), &mut out);
                            }
                        }
                        for df in [-1, 1] {
                            let (x, y) = (f + df, r + dir);
                            if !on(x, y) {
                                continue;
                            }
                            let enemy = self.at(x, y).is_some_and(|(c2, _)| c2 != us);
                            if enemy || self.ep == Some((x, y)) {
                                step((x, y), &mut out);
                            }
                        }
                    }
                    Kind::N | Kind::K => {
                        let steps = if kind == Kind::N { KNIGHT } else { KING };
                        for (df, dr) in steps {
                            if target_ok(f + df, r + dr) {
                                push((f, r), (f + df, r + dr), None, &mut out);
                            }
                        }
                    }
                    _ => {
                        let dirs: Vec<(i8, i8)> = match kind {
                            Kind::B => DIAG.to_vec(),
                            Kind::R => ORTHO.to_vec(),
                            _ => DIAG.iter().chain(ORTHO.iter()).copied().collect(),
                        };
                        for (df, dr) in dirs {
                            let (mut x, mut y) = (f + df, r + dr);
                            while on(x, y) {
                                match self.at(x, y) {
                                    None => push((f, r), (x, y), None, &mut out),
                                    Some((c2, _)) => {
                                        if c2 != us {
                                            push((f, r), (x, y), None, &mut out);
                                        }
                                        break;
                                    }
                                }
                                x += df;
                                y += dr;
                            }
                        }
                    }
                }
            }
        }
        // Castling: rights, empty path, king not in, through or into check.
        let rank = if us { 0 } else { 7 };
        let base = if us { 0 } else { 2 };
        if self.at(4, rank) == Some((us, Kind::K)) && !self.in_check(us) {
            for (i, rook_file, empty, pass) in [(0, 7, &[5, 6][..], 5), (1, 0, &[1, 2, 3][..], 3)] {
                if self.castle[base + i]
                    && self.at(rook_file, rank) == Some((us, Kind::R))
                    && empty.iter().all(|&x| self.at(x, rank).is_none())
                    && !self.attacked(pass, rank, !us)
                {
                    push((4, rank), (if i == 0 { 6 } else { 2 }, rank), None, &mut out);
                }
            }
        }
        out
    }

    fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        self.legal().iter().map(|(_, n)| n.perft(depth - 1)).sum()
    }
}

fn moves_of(pos: &Position) -> BTreeSet<String> {
    pos.legal_moves().iter().map(|m| m.uci()).collect()
}

const KIWIPETE: &str = "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq -";
const ENDGAME: &str = "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - -";
const PROMOTIONS: &str = "n1n5/PPPk4/8/8/8/8/4Kppp/5N1N b - -";

#[test]
fn perft_from_the_game_array_matches_the_mailbox_generator() {
    let pos = game_array();
    let mail = Mailbox::from_fen(&format_fen(&pos));
    let known = [20, 400, 8902, 197281];
    for depth in 1..=4 {
        let ours = perft_u64(&pos, depth);
        assert_eq!(ours, mail.perft(depth), "depth {depth}");
        assert_eq!(ours, known[depth as usize - 1]);
    }
}

#[test]
fn perft_of_tricky_positions_matches_the_mailbox_generator() {
    for (fen, depth) in [(KIWIPETE, 3), (ENDGAME, 4), (PROMOTIONS, 3)] {
        let pos = parse_fen(fen).unwrap();
        assert_eq!(perft_u64(&pos, depth), Mailbox::from_fen(fen).perft(depth), "{fen}");
    }
}

/// Walks random games and compares move lists, check and mate at each step.
fn compare_playout(fen: &str, seed: u64, steps: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pos = parse_fen(fen).unwrap();
    for _ in 0..steps {
        let mail = Mailbox::from_fen(&format_fen(&pos));
        let theirs: BTreeSet<String> = mail.legal().into_iter().map(|(u, _)| u).collect();
        assert_eq!(moves_of(&pos), theirs, "{}", format_fen(&pos));
        let side = pos.side_to_move();
        assert_eq!(pos.in_check(side), mail.in_check(side == Color::White));
        assert_eq!(pos.has_legal_move(), !theirs.is_empty(), "{}", format_fen(&pos));
        let moves = pos.legal_moves();
        let Some(m) = moves.choose(&mut rng) else { break };
        let next = pos.apply(m).unwrap();
        // The mover's king is never left capturable.
        assert!(!next.in_check(side), "{} after {}", format_fen(&pos), m.uci());
        pos = next;
    }
}

#[test]
fn random_playouts_agree_move_for_move() {
    for (i, fen) in [countmate::board::GAME_ARRAY_FEN, KIWIPETE, ENDGAME, PROMOTIONS].iter().enumerate() {
        for game in 0..25 {
            compare_playout(fen, (i * 100 + game) as u64, 120);
        }
    }
}

#[test]
fn count_mates_equals_playing_every_move() {
    let mut rng = StdRng::seed_from_u64(11);
    let starts = [
        countmate::board::GAME_ARRAY_FEN,
        KIWIPETE,
        "3r3k/7p/7n/1p3r2/2PP4/PP6/bK6/Bn1q4 w - -",
        "6k1/5ppp/8/8/8/8/5PPP/R5K1 w - -",
        "k7/8/1K6/8/8/8/8/7R w - -",
    ];
    let mut mates = 0;
    for fen in starts {
        for _ in 0..60 {
            let mut pos = parse_fen(fen).unwrap();
            for _ in 0..rand::Rng::gen_range(&mut rng, 0..30) {
                let moves = pos.legal_moves();
                let Some(m) = moves.choose(&mut rng) else { break };
                pos = pos.play_unchecked(m);
            }
            let brute = pos.legal_moves().iter().filter(|m| pos.play_unchecked(m).status() == Status::Checkmate).count() as u64;
            assert_eq!(pos.count_mates(), brute, "{}", format_fen(&pos));
            mates += brute;
        }
    }
    assert!(mates > 0);
}

fn random_position(seed: u64, plies: usize) -> Position {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pos = parse_fen([countmate::board::GAME_ARRAY_FEN, KIWIPETE, PROMOTIONS][seed as usize % 3]).unwrap();
    for _ in 0..plies {
        let moves = pos.legal_moves();
        let Some(m) = moves.choose(&mut rng) else { break };
        pos = pos.play_unchecked(m);
    }
    pos
}

proptest! {
    #[test]
    fn fen_round_trips(seed in 0u64..10_000, plies in 0usize..60) {
        let pos = random_position(seed, plies);
        let text = format_fen(&pos);
        let back = parse_fen(&text).unwrap();
        prop_assert_eq!(&back, &pos);
        prop_assert_eq!(format_fen(&back), text);
    }

    #[test]
    fn incremental_hash_equals_recomputed(seed in 0u64..10_000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut pos = random_position(seed, 0);
        for step in 0..100 {
            prop_assert_eq!(pos.hash(), pos.compute_hash());
            let passed = pos.pass_turn();
            prop_assert_eq!(passed.hash(), passed.compute_hash());
            prop_assert_ne!(passed.hash(), pos.hash());
            let moves = pos.legal_moves();
            let Some(m) = moves.choose(&mut rng) else { break };
            pos = if step % 7 == 6 { pos.play_unchecked(m).pass_turn() } else { pos.play_unchecked(m) };
        }
    }

    #[test]
    fn checkmate_means_no_moves_and_king_attacked(seed in 0u64..10_000, plies in 0usize..80) {
        let pos = random_position(seed, plies);
        let side = pos.side_to_move();
        match pos.status() {
            Status::Checkmate => prop_assert!(pos.legal_moves().is_empty() && pos.in_check(side)),
            Status::Stalemate => prop_assert!(pos.legal_moves().is_empty() && !pos.in_check(side)),
            Status::Check => prop_assert!(!pos.legal_moves().is_empty() && pos.in_check(side)),
            Status::Normal => prop_assert!(!pos.legal_moves().is_empty() && !pos.in_check(side)),
        }
    }
}
