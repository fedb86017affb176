use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use countmate::oracle::{
    catalan, chess_tableaux_checked, euler_zigzag, fibonacci, multinomial, skew_syt_count, syt_count,
    updown_bruteforce, Partition, Poset, SkewShape,
};
use countmate::{BigCount, Color};

fn number(args: &[String]) -> Result<u32> {
    match args {
        [n] => n.parse().with_context(|| format!("`{n}` is not a non-negative integer")),
        _ => bail!("expected one integer argument"),
    }
}

fn parts(args: &[String]) -> Result<Vec<u32>> {
    args.iter()
        .flat_map(|a| a.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u32>().with_context(|| format!("`{s}` is not a non-negative integer")))
        .collect()
}

pub fn evaluate(name: &str, args: &[String], alternating: Option<Color>) -> Result<BigCount> {
    let joined = args.join(" ");
    Ok(match name {
        "catalan" => catalan(number(args)?),
        "euler" => euler_zigzag(number(args)?),
        "fib" | "fibonacci" => fibonacci(number(args)?),
        "updown" => updown_bruteforce(number(args)?)?,
        "multinomial" => {
            let (n, rest) = args.split_first().ok_or_else(|| anyhow!("expected n followed by parts"))?;
            multinomial(n.parse().with_context(|| format!("`{n}` is not an integer"))?, &parts(rest)?)?
        }
        "syt" => syt_count(&joined.parse::<Partition>()?),
        "skew" => skew_syt_count(&joined.parse::<SkewShape>()?)?,
        "chess-tableaux" => chess_tableaux_checked(&joined.parse::<Partition>()?)?,
        "extensions" => {
            let [file] = args else { bail!("expected a poset file") };
            let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
            let poset = Poset::parse(&text)?;
            match alternating {
                Some(c) => poset.count_linear_extensions_colored(c)?,
                None => poset.count_linear_extensions()?,
            }
        }
        other => bail!("unknown oracle `{other}`"),
    })
}

pub fn run(name: &str, args: &[String], alternating: Option<Color>) -> Result<ExitCode> {
    println!("{}", evaluate(name, args, alternating)?);
    Ok(ExitCode::SUCCESS)
}
