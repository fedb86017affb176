//! The production counters against the plain recursive enumerator in
//! `common`, on short problems.

mod common;

use common::{diagram, reference_count, with_stipulation};
use countmate::board::{game_array, white_array, Color, Position};
use countmate::problem::{CountMode, Problem, Start, Stipulation};
use countmate::solver::{solve, SearchLimits};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn production(p: &Problem) -> u64 {
    let r = solve(p, &SearchLimits::default()).unwrap();
    assert!(!r.incomplete);
    r.count.to_u64().unwrap()
}

fn agree(p: &Problem) -> u64 {
    let want = reference_count(p);
    assert_eq!(production(p), want, "{} {}", p.id, p.stipulation);
    want
}

#[test]
fn series_helpmates_cut_short() {
    let mut nonzero = 0;
    for (id, max) in [("A", 3), ("B", 4), ("0", 3)] {
        let p = diagram(id);
        for n in 1..=max {
            nonzero += (agree(&with_stipulation(&p, Stipulation::SeriesHelpmate { n })) > 0) as u32;
        }
    }
    for fen in ["6rk/6pp/8/6N1/8/8/8/K7 b - -", "7k/8/6K1/8/8/8/8/R7 b - -", "4k3/8/8/8/8/8/3PPP2/2QRK3 b - -"] {
        let start = Some(Start::Fen(countmate::board::parse_fen(fen).unwrap()));
        for n in 1..=3 {
            let p = Problem::new("small", start.clone(), None, Stipulation::SeriesHelpmate { n });
            nonzero += (agree(&p) > 0) as u32;
        }
    }
    assert!(nonzero >= 4, "{nonzero}");
}

#[test]
fn helpmates_cut_short() {
    let p = diagram("3");
    for plies in [1, 3, 5] {
        agree(&with_stipulation(&p, Stipulation::Helpmate { plies, first: Color::White }));
    }
    let black_first = Problem::new(
        "mate-net",
        Some(Start::Fen(countmate::board::parse_fen("6rk/6pp/8/6N1/8/8/8/K7 b - -").unwrap())),
        None,
        Stipulation::Helpmate { plies: 4, first: Color::Black },
    );
    assert!(agree(&black_first) > 0);
}

#[test]
fn exact_directmates() {
    for n in 1..=4 {
        for mode in [CountMode::Sequences, CountMode::Strategies] {
            agree(&with_stipulation(&diagram("4"), Stipulation::DirectMateExact { n, mode }));
        }
    }
    for n in 1..=3 {
        for mode in [CountMode::Sequences, CountMode::Strategies] {
            agree(&with_stipulation(&diagram("5"), Stipulation::DirectMateExact { n, mode }));
        }
    }
}

/// A target reached by `plies` random moves, so the count is positive.
fn random_target(start: &Position, plies: u32, series: bool, rng: &mut StdRng) -> Position {
    let mut pos = start.clone();
    for _ in 0..plies {
        let moves = pos.legal_moves();
        let m = moves.choose(rng).unwrap();
        pos = pos.apply(m).unwrap();
        if series {
            pos = pos.pass_turn();
        }
    }
    pos
}

#[test]
fn short_proof_games() {
    let mut rng = StdRng::seed_from_u64(3);
    for plies in 1..=4 {
        for _ in 0..6 {
            let target = random_target(&game_array(), plies, false, &mut rng);
            let p = Problem::new("pg", Some(Start::GameArray), Some(target), Stipulation::ProofGame { plies });
            assert!(agree(&p) > 0);
        }
    }
}

#[test]
fn short_series_proof_games() {
    let mut rng = StdRng::seed_from_u64(5);
    for n in 1..=4 {
        for _ in 0..6 {
            let target = random_target(&white_array(), n, true, &mut rng);
            let p = Problem::new("ser-pg", Some(Start::WhiteArray), Some(target), Stipulation::SeriesProofGame { n });
            assert!(agree(&p) > 0);
        }
    }
}

// The two corpus problems of at most 8 plies. Without a table or pruning
// they take far longer than the default suite allows.

#[test]
#[ignore = "brute force, hours"]
fn diagram_b_in_full() {
    assert_eq!(agree(&diagram("B")), 272);
}

#[test]
#[ignore = "brute force, hours"]
fn diagram_3_in_full() {
    assert_eq!(agree(&diagram("3")), 2);
}
