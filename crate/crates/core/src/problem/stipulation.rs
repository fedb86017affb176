use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Sequences,
    Strategies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Stipulation {
    /// Black plays `n` moves in a row, then White mates in one.
    SeriesHelpmate { n: u32 },
    /// White alone plays `n` moves from the White-only array.
    SeriesProofGame { n: u32 },
    /// Both sides play `plies` half-moves from the game array.
    ProofGame { plies: u32 },
    /// `plies` alternating half-moves ending in Black's checkmate.
    Helpmate { plies: u32, first: Color },
    /// White mates on exactly the `n`-th move against every defence.
    DirectMateExact { n: u32, mode: CountMode },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StipulationError {
    #[error("unknown stipulation `{0}`")]
    Unknown(String),
    #[error("length must be positive in `{0}`")]
    NonPositive(String),
    #[error("bad length in `{0}`")]
    BadLength(String),
}

impl Stipulation {
    /// Total half-moves the solution spans.
    pub fn plies(&self) -> u32 {
        match *self {
            Stipulation::SeriesHelpmate { n } => n + 1,
            Stipulation::SeriesProofGame { n } => n,
            Stipulation::ProofGame { plies } | Stipulation::Helpmate { plies, .. } => plies,
            Stipulation::DirectMateExact { n, .. } => 2 * n - 1,
        }
    }

    pub fn needs_target(&self) -> bool {
        matches!(self, Stipulation::SeriesProofGame { .. } | Stipulation::ProofGame { .. })
    }

    /// Side that must be to move in the start position.
    pub fn first_mover(&self) -> Color {
        match *self {
            Stipulation::SeriesHelpmate { .. } => Color::Black,
            Stipulation::Helpmate { first, .. } => first,
            _ => Color::White,
        }
    }

    /// `h#N` when Black starts (even plies), `h#N.5` when White starts.
    pub fn helpmate(plies: u32) -> Self {
        let first = if plies % 2 == 1 { Color::White } else { Color::Black };
        Stipulation::Helpmate { plies, first }
    }
}

fn half_moves(tag: &str, text: &str) -> Result<u32, StipulationError> {
    let t = text.trim();
    let (whole, half) = match t.strip_suffix(".5") {
        Some(w) => (w, 1),
        None => (t, 0),
    };
    let n: u32 = whole.parse().map_err(|_| StipulationError::BadLength(format!("{tag}{text}")))?;
    let plies = 2 * n + half;
    if plies == 0 {
        return Err(StipulationError::NonPositive(format!("{tag}{text}")));
    }
    Ok(plies)
}

fn whole_moves(tag: &str, text: &str) -> Result<u32, StipulationError> {
    let n: u32 = text.trim().parse().map_err(|_| StipulationError::BadLength(format!("{tag}{text}")))?;
    if n == 0 {
        return Err(StipulationError::NonPositive(format!("{tag}{text}")));
    }
    Ok(n)
}

pub fn parse_stipulation(text: &str) -> Result<Stipulation, StipulationError> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("ser-h#") {
        return Ok(Stipulation::SeriesHelpmate { n: whole_moves("ser-h#", rest)? });
    }
    if let Some(rest) = t.strip_prefix("ser-pg") {
        return Ok(Stipulation::SeriesProofGame { n: whole_moves("ser-pg", rest)? });
    }
    if let Some(rest) = t.strip_prefix("pg") {
        return Ok(Stipulation::ProofGame { plies: half_moves("pg", rest)? });
    }
    if let Some(rest) = t.strip_prefix("h#") {
        return Ok(Stipulation::helpmate(half_moves("h#", rest)?));
    }
    if let Some(rest) = t.strip_prefix('#') {
        let mut it = rest.split_whitespace();
        let (Some(n), Some(mode), None) = (it.next(), it.next(), it.next()) else {
            return Err(StipulationError::Unknown(t.to_string()));
        };
        let mode = match mode {
            "sequences" => CountMode::Sequences,
            "strategies" => CountMode::Strategies,
            _ => return Err(StipulationError::Unknown(t.to_string())),
        };
        return Ok(Stipulation::DirectMateExact { n: whole_moves("#", n)?, mode });
    }
    Err(StipulationError::Unknown(t.to_string()))
}

impl FromStr for Stipulation {
    type Err = StipulationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_stipulation(s)
    }
}

fn write_half(f: &mut fmt::Formatter<'_>, plies: u32) -> fmt::Result {
    if plies % 2 == 1 {
        write!(f, "{}.5", plies / 2)
    } else {
        write!(f, "{}", plies / 2)
    }
}

impl fmt::Display for Stipulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Stipulation::SeriesHelpmate { n } => write!(f, "ser-h#{n}"),
            Stipulation::SeriesProofGame { n } => write!(f, "ser-pg {n}"),
            Stipulation::ProofGame { plies } => {
                f.write_str("pg ")?;
                write_half(f, plies)
            }
            Stipulation::Helpmate { plies, .. } => {
                f.write_str("h#")?;
                write_half(f, plies)
            }
            Stipulation::DirectMateExact { n, mode } => {
                let m = match mode {
                    CountMode::Sequences => "sequences",
                    CountMode::Strategies => "strategies",
                };
                write!(f, "#{n} {m}")
            }
        }
    }
}
