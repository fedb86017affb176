mod common;

use common::diagram;
use countmate::analysis::{check_poset_exactness, infer_precedence_poset, SolutionSet, StructureReport};
use countmate::board::Color;
use countmate::problem::Stipulation;
use countmate::solver::{enumerate_solutions, SearchLimits};
use countmate::BigCount;

fn solutions(id: &str) -> SolutionSet {
    let p = diagram(id);
    let r = enumerate_solutions(&p, &SearchLimits { enumerate_limit: 10_000, ..SearchLimits::default() }).unwrap();
    assert!(!r.truncated);
    let set = SolutionSet::from_lines(id, &r.lines.unwrap());
    if matches!(p.stipulation, Stipulation::SeriesHelpmate { .. }) {
        set.without_last_ply()
    } else {
        set
    }
}

fn covers(r: &StructureReport) -> Vec<String> {
    let p = r.poset.as_ref().unwrap();
    let mut v: Vec<String> = p.covers().into_iter().map(|(a, b)| format!("{} < {}", p.labels()[a], p.labels()[b])).collect();
    v.sort();
    v
}

#[test]
fn queue_problem_is_exact() {
    let set = solutions("A");
    let r = check_poset_exactness(&set, &infer_precedence_poset(&set).unwrap(), None).unwrap();
    assert_eq!(r.exact, Some(true));
    assert_eq!(r.extension_count, Some(BigCount::from(429u64)));
    assert_eq!(r.poset.unwrap().len(), 14);
}

#[test]
fn zigzag_problem_has_the_zigzag_poset() {
    let set = solutions("B");
    let r = check_poset_exactness(&set, &infer_precedence_poset(&set).unwrap(), None).unwrap();
    assert_eq!(r.exact, Some(true));
    let want = [
        "pc6-c5 < bb7-h1",
        "pc6-c5 < rb6-g6",
        "pd4-d3 < bc3-g7",
        "pf3-f2 < bb7-h1",
        "pf6-g5 < bc3-g7",
        "pf6-g5 < rb6-g6",
    ];
    let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(covers(&r), want);
}

#[test]
fn helpmate_needs_the_alternation() {
    let set = solutions("3");
    let inferred = infer_precedence_poset(&set).unwrap();
    let colored = check_poset_exactness(&set, &inferred, Some(Color::White)).unwrap();
    assert_eq!(colored.exact, Some(true));
    assert_eq!(colored.extension_count, Some(BigCount::from(2u64)));
    let plain = check_poset_exactness(&set, &inferred, None).unwrap();
    assert_eq!(plain.exact, Some(false));
    assert!(plain.extension_count.unwrap() > BigCount::from(2u64));
}

#[test]
fn three_route_game_has_no_common_move_set() {
    let set = solutions("6");
    let r = infer_precedence_poset(&set).unwrap();
    assert!(!r.common_multiset);
    assert!(r.poset.is_none());
}

#[test]
fn inference_does_not_depend_on_listing_order() {
    let set = solutions("B");
    let mut reversed = set.clone();
    reversed.sequences.reverse();
    assert_eq!(infer_precedence_poset(&set).unwrap(), infer_precedence_poset(&reversed).unwrap());
}
