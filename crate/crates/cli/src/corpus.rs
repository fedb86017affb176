use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use countmate::board::{game_array, parse_fen, perft_divide, perft_u64, white_array};
use countmate::problem::{parse_problem, validate_problem, Problem, Tier};

/// Expands directories to their `*.cep` files, sorted by name. Files named
/// directly are always kept; directory entries are filtered by `keep`.
pub fn expand(paths: &[PathBuf], keep: impl Fn(Tier) -> bool) -> Result<Vec<(PathBuf, Result<Problem>)>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("reading {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "cep"))
                .collect();
            files.sort();
            for f in files {
                let prob = load(&f);
                if prob.as_ref().map_or(true, |pr| keep(pr.tier)) {
                    out.push((f, prob));
                }
            }
        } else {
            let prob = load(p);
            out.push((p.clone(), prob));
        }
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_problem(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn validate(paths: &[PathBuf]) -> Result<ExitCode> {
    let mut bad = false;
    for (path, prob) in expand(paths, |_| true)? {
        match prob {
            Err(e) => {
                bad = true;
                println!("{}: {e:#}", path.display());
            }
            Ok(p) => {
                let d = validate_problem(&p);
                if d.is_empty() {
                    println!("{}: ok", path.display());
                } else {
                    bad = true;
                    for x in d {
                        println!("{}: {x}", path.display());
                    }
                }
            }
        }
    }
    Ok(if bad { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

pub fn perft(position: &str, depth: u32, divide: bool) -> Result<ExitCode> {
    let pos = match position {
        "array" => game_array(),
        "white-array" => white_array(),
        fen => match parse_fen(fen) {
            Ok(p) => p,
            Err(e) => bail!("bad FEN: {e}"),
        },
    };
    if divide {
        let mut total = 0;
        for (m, n) in perft_divide(&pos, depth) {
            println!("{m}: {n}");
            total += n;
        }
        println!("total: {total}");
    } else {
        println!("{}", perft_u64(&pos, depth));
    }
    Ok(ExitCode::SUCCESS)
}
