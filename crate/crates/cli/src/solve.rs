use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Result;
use countmate::problem::{Problem, Tier};
use countmate::solver::{solve, CountReport, SearchLimits};
use countmate::BigCount;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::expand;
use crate::{SolveArgs, TierArg};

#[derive(Serialize)]
struct Solved<'a> {
    #[serde(flatten)]
    report: &'a CountReport,
    file: String,
    tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none")]
    expect: Option<&'a BigCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expect_ok: Option<bool>,
}

#[derive(Serialize)]
struct Failed {
    file: String,
    error: String,
}

enum Outcome {
    Ok,
    Mismatch,
    Error,
}

fn one(path: &Path, problem: &anyhow::Result<Problem>, limits: &SearchLimits, args: &SolveArgs) -> (Outcome, String) {
    let file = path.display().to_string();
    let fail = |error: String| {
        let text = if args.json {
            serde_json::to_string(&Failed { file: file.clone(), error }).expect("serializable")
        } else {
            format!("{file}: error: {error}\n")
        };
        (Outcome::Error, text)
    };
    let p = match problem {
        Ok(p) => p,
        Err(e) => return fail(format!("{e:#}")),
    };
    let r = match solve(p, limits) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let expect_ok = (!r.incomplete).then(|| p.expected.as_ref().map(|e| *e == r.count)).flatten();
    let outcome = match expect_ok {
        Some(false) => Outcome::Mismatch,
        _ if r.incomplete => Outcome::Error,
        _ => Outcome::Ok,
    };
    if args.json {
        let s = Solved { report: &r, file, tier: p.tier, expect: p.expected.as_ref(), expect_ok };
        return (outcome, serde_json::to_string(&s).expect("serializable"));
    }
    let mut s = format!("{} ({}): count = {}", p.id, p.stipulation, r.count);
    if let Some(e) = &p.expected {
        let verdict = match expect_ok {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "unchecked",
        };
        write!(s, "  [expect {e}: {verdict}]").unwrap();
    }
    if r.incomplete {
        s.push_str("  [INCOMPLETE: node budget exhausted]");
    }
    writeln!(s).unwrap();
    if let Some(d) = &r.distinct_series {
        writeln!(s, "  distinct series: {d}").unwrap();
    }
    let pruned: Vec<String> = r.pruned_by.iter().filter(|(_, n)| **n > 0).map(|(k, n)| format!("{k} {n}")).collect();
    write!(
        s,
        "  nodes {}  tt hits {}  tt entries {}  {:.3}s",
        r.nodes_visited,
        r.tt_hits,
        r.tt_entries,
        r.elapsed.as_secs_f64()
    )
    .unwrap();
    if !pruned.is_empty() {
        write!(s, "  pruned: {}", pruned.join(", ")).unwrap();
    }
    writeln!(s).unwrap();
    if let Some(sols) = &r.solutions {
        for (i, line) in sols.iter().enumerate() {
            writeln!(s, "  {}. {}", i + 1, line.join(" ")).unwrap();
        }
        if r.truncated {
            writeln!(s, "  ... truncated at {} of {}", sols.len(), r.count).unwrap();
        }
    }
    (outcome, s)
}

pub fn run(args: &SolveArgs) -> Result<ExitCode> {
    let keep = |t: Tier| match args.tier {
        TierArg::Fast => t == Tier::Fast,
        TierArg::Medium => t <= Tier::Medium,
        TierArg::All => true,
    };
    let problems = expand(&args.paths, keep)?;
    let mut limits = args.search.limits();
    limits.enumerate = args.list;
    limits.enumerate_limit = args.limit;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let results: Vec<(Outcome, String)> =
        pool.install(|| problems.par_iter().map(|(path, p)| one(path, p, &limits, args)).collect());

    let mut mismatch = false;
    let mut error = false;
    for (o, text) in results {
        if args.json {
            println!("{text}");
        } else {
            print!("{text}");
        }
        match o {
            Outcome::Ok => {}
            Outcome::Mismatch => mismatch = true,
            Outcome::Error => error = true,
        }
    }
    Ok(if error {
        ExitCode::from(1)
    } else if mismatch {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
