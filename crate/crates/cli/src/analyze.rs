use std::process::ExitCode;

use anyhow::{bail, Result};
use countmate::analysis::{check_poset_exactness, infer_precedence_poset, SolutionSet};
use countmate::problem::Stipulation;
use countmate::solver::enumerate_solutions;
use countmate::Color;

use crate::corpus::load;
use crate::AnalyzeArgs;

pub fn run(args: &AnalyzeArgs) -> Result<ExitCode> {
    let problem = load(&args.path)?;
    let mut limits = args.search.limits();
    limits.enumerate_limit = args.limit;
    let r = enumerate_solutions(&problem, &limits)?;
    if r.incomplete {
        bail!("node budget exhausted before all solutions were found");
    }
    if r.truncated {
        bail!("{} solutions exceed the enumeration limit {}; raise --limit", r.count, args.limit);
    }
    let lines = r.lines.unwrap_or_default();
    let mut set = SolutionSet::from_lines(problem.id.clone(), &lines);
    if matches!(problem.stipulation, Stipulation::SeriesHelpmate { .. }) {
        set = set.without_last_ply();
    }
    let report = check_poset_exactness(&set, &infer_precedence_poset(&set)?, args.alternating.map(Color::from))?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("problem: {} ({})", problem.id, problem.stipulation);
    println!("solutions: {}", set.len());
    println!("common move set: {}", if report.common_multiset { "yes" } else { "no" });
    if let Some(p) = &report.poset {
        let covers = p.covers();
        println!("poset: {} elements, {} cover edges", p.len(), covers.len());
        for (a, b) in covers {
            println!("  {} < {}", p.labels()[a], p.labels()[b]);
        }
        if let (Some(n), Some(exact)) = (&report.extension_count, report.exact) {
            let kind = match report.alternating {
                Some(c) => format!("alternating extensions ({c} first)"),
                None => "linear extensions".into(),
            };
            println!("{kind}: {n}");
            let rel = if exact { "=" } else { "!=" };
            println!("exact: {} ({n} {rel} {})", if exact { "yes" } else { "no" }, set.len());
        }
        if args.dot {
            print!("{}", p.to_dot());
        }
    }
    Ok(ExitCode::SUCCESS)
}
