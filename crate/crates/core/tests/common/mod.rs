#![allow(dead_code)]

use std::path::PathBuf;

use countmate::board::{Color, Position};
use countmate::problem::{parse_problem, CountMode, Problem, Stipulation};
use countmate::solver::matches_target;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn diagram(id: &str) -> Problem {
    let path = corpus_dir().join(format!("diag{id}.cep"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_problem(&text).unwrap()
}

pub fn with_stipulation(p: &Problem, s: Stipulation) -> Problem {
    Problem { stipulation: s, expected: None, ..p.clone() }
}

/// Plain recursive counting straight from the definitions: no table, no
/// pruning, no shortcuts.
pub fn reference_count(p: &Problem) -> u64 {
    let start = p.start_position().expect("start");
    match p.stipulation {
        Stipulation::SeriesHelpmate { n } => series_helpmate(&start, n),
        Stipulation::SeriesProofGame { n } => series_proof_game(&start, p.target.as_ref().unwrap(), n),
        Stipulation::ProofGame { plies } => proof_game(&start, p.target.as_ref().unwrap(), plies),
        Stipulation::Helpmate { plies, .. } => helpmate(&start, plies),
        Stipulation::DirectMateExact { n, mode: CountMode::Strategies } => strategies(&start, n),
        Stipulation::DirectMateExact { n, mode: CountMode::Sequences } => sequences(&start, n),
    }
}

fn mating_moves(pos: &Position) -> u64 {
    pos.legal_moves().iter().filter(|m| pos.apply(m).unwrap().is_checkmate()).count() as u64
}

fn series_helpmate(pos: &Position, n: u32) -> u64 {
    let mut total = 0;
    for m in pos.legal_moves() {
        let next = pos.apply(&m).unwrap();
        if n == 1 {
            total += mating_moves(&next);
        } else if !next.in_check(Color::White) {
            total += series_helpmate(&next.pass_turn(), n - 1);
        }
    }
    total
}

fn series_proof_game(pos: &Position, target: &Position, n: u32) -> u64 {
    if n == 0 {
        return matches_target(pos, target) as u64;
    }
    let mut total = 0;
    for m in pos.legal_moves() {
        let next = pos.apply(&m).unwrap();
        if next.in_check(Color::Black) {
            continue;
        }
        total += series_proof_game(&next.pass_turn(), target, n - 1);
    }
    total
}

fn proof_game(pos: &Position, target: &Position, plies: u32) -> u64 {
    if plies == 0 {
        return matches_target(pos, target) as u64;
    }
    pos.legal_moves().iter().map(|m| proof_game(&pos.apply(m).unwrap(), target, plies - 1)).sum()
}

fn helpmate(pos: &Position, plies: u32) -> u64 {
    if plies == 0 {
        return pos.is_checkmate() as u64;
    }
    pos.legal_moves().iter().map(|m| helpmate(&pos.apply(m).unwrap(), plies - 1)).sum()
}

/// White to move; strategies that mate on exactly the `n`-th move.
fn strategies(pos: &Position, n: u32) -> u64 {
    let mut total = 0;
    for m in pos.legal_moves() {
        let next = pos.apply(&m).unwrap();
        if n == 1 {
            total += next.is_checkmate() as u64;
            continue;
        }
        let replies = next.legal_moves();
        if replies.is_empty() {
            continue;
        }
        let mut product = 1u64;
        for r in replies {
            product *= strategies(&next.apply(&r).unwrap(), n - 1);
            if product == 0 {
                break;
            }
        }
        total += product;
    }
    total
}

/// Move sequences that some mating strategy allows.
fn sequences(pos: &Position, n: u32) -> u64 {
    let mut total = 0;
    for m in pos.legal_moves() {
        let next = pos.apply(&m).unwrap();
        if n == 1 {
            total += next.is_checkmate() as u64;
            continue;
        }
        let replies = next.legal_moves();
        if replies.is_empty() || replies.iter().any(|r| strategies(&next.apply(r).unwrap(), n - 1) == 0) {
            continue;
        }
        total += replies.iter().map(|r| sequences(&next.apply(r).unwrap(), n - 1)).sum::<u64>();
    }
    total
}
