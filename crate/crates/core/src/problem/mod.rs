//! Problem model and the `.cep` problem-file format.
//!
//! A problem file is a list of `key: value` lines. Lines whose first
//! non-blank character is `#` are comments; a `#` elsewhere is literal
//! (stipulations such as `ser-h#14` contain one).
//!
//! | key      | value                                                   |
//! |----------|---------------------------------------------------------|
//! | `id`     | identifier (required)                                   |
//! | `fen`    | start position                                          |
//! | `start`  | `array` or `white-array` instead of `fen`               |
//! | `target` | target FEN for proof games                              |
//! | `stip`   | stipulation (required)                                  |
//! | `expect` | expected count, for regression runs                     |
//! | `tier`   | `fast` (default), `medium` or `long`                    |
//! | `notes`  | free text; repeated lines are joined                    |

mod stipulation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use stipulation::{parse_stipulation, CountMode, Stipulation, StipulationError};

use crate::board::{format_fen, game_array, parse_fen, white_array, Color, FenError, PieceKind, Position};
use crate::count::BigCount;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Start {
    Fen(Position),
    GameArray,
    WhiteArray,
}

impl Start {
    pub fn position(&self) -> Position {
        match self {
            Start::Fen(p) => p.clone(),
            Start::GameArray => game_array(),
            Start::WhiteArray => white_array(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    #[default]
    Fast,
    Medium,
    Long,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Medium => "medium",
            Tier::Long => "long",
        })
    }
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "fast" => Ok(Tier::Fast),
            "medium" => Ok(Tier::Medium),
            "long" => Ok(Tier::Long),
            other => Err(format!("unknown tier `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub id: String,
    pub start: Option<Start>,
    pub target: Option<Position>,
    pub stipulation: Stipulation,
    pub expected: Option<BigCount>,
    pub tier: Tier,
    pub notes: String,
}

impl Problem {
    pub fn new(id: impl Into<String>, start: Option<Start>, target: Option<Position>, stipulation: Stipulation) -> Self {
        Problem {
            id: id.into(),
            start,
            target,
            stipulation,
            expected: None,
            tier: Tier::Fast,
            notes: String::new(),
        }
    }

    /// The explicit start, or the array implied by a proof-game stipulation.
    pub fn start_position(&self) -> Option<Position> {
        match (&self.start, self.stipulation) {
            (Some(s), _) => Some(s.position()),
            (None, Stipulation::ProofGame { .. }) => Some(game_array()),
            (None, Stipulation::SeriesProofGame { .. }) => Some(white_array()),
            (None, _) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("line {line}: expected `key: value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error("`{0}` is not used by this stipulation")]
    Unexpected(&'static str),
    #[error("both `fen` and `start` given")]
    ConflictingStart,
    #[error("bad start `{0}`, expected `array` or `white-array`")]
    BadStart(String),
    #[error("{field}: {source}")]
    Fen {
        field: &'static str,
        #[source]
        source: FenError,
    },
    #[error(transparent)]
    Stipulation(#[from] StipulationError),
    #[error("bad expected count `{0}`")]
    BadExpect(String),
    #[error("{0}")]
    BadTier(String),
    #[error("target unreachable from start: {0}")]
    Infeasible(String),
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let mut id = None;
    let mut fen = None;
    let mut start_kw = None;
    let mut target = None;
    let mut stip = None;
    let mut expect = None;
    let mut tier = None;
    let mut notes: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t.split_once(':').ok_or(ProblemError::Syntax { line })?;
        let key = key.trim();
        let value = value.trim().to_string();
        let slot = match key {
            "id" => &mut id,
            "fen" => &mut fen,
            "start" => &mut start_kw,
            "target" => &mut target,
            "stip" => &mut stip,
            "expect" => &mut expect,
            "tier" => &mut tier,
            "notes" => {
                notes.push(value);
                continue;
            }
            _ => return Err(ProblemError::UnknownKey { line, key: key.to_string() }),
        };
        if slot.is_some() {
            return Err(ProblemError::DuplicateKey { line, key: key.to_string() });
        }
        *slot = Some(value);
    }

    let id = id.ok_or(ProblemError::Missing("id"))?;
    let stipulation = parse_stipulation(&stip.ok_or(ProblemError::Missing("stip"))?)?;
    let start = match (fen, start_kw) {
        (Some(_), Some(_)) => return Err(ProblemError::ConflictingStart),
        (Some(f), None) => Some(Start::Fen(parse_fen(&f).map_err(|source| ProblemError::Fen { field: "fen", source })?)),
        (None, Some(s)) => match s.as_str() {
            "array" => Some(Start::GameArray),
            "white-array" => Some(Start::WhiteArray),
            _ => return Err(ProblemError::BadStart(s)),
        },
        (None, None) => None,
    };
    let target = target
        .map(|f| parse_fen(&f).map_err(|source| ProblemError::Fen { field: "target", source }))
        .transpose()?;
    let expected = expect
        .map(|e| e.parse::<BigCount>().map_err(|_| ProblemError::BadExpect(e)))
        .transpose()?;
    let tier = tier.map(|t| t.parse::<Tier>().map_err(ProblemError::BadTier)).transpose()?.unwrap_or_default();

    if stipulation.needs_target() {
        if target.is_none() {
            return Err(ProblemError::Missing("target"));
        }
    } else {
        if target.is_some() {
            return Err(ProblemError::Unexpected("target"));
        }
        if start.is_none() {
            return Err(ProblemError::Missing("fen"));
        }
    }

    let problem = Problem { id, start, target, stipulation, expected, tier, notes: notes.join("\n") };
    if let (Some(s), Some(t)) = (problem.start_position(), &problem.target) {
        if let Some(why) = material_infeasibility(&s, t) {
            return Err(ProblemError::Infeasible(why));
        }
    }
    Ok(problem)
}

impl FromStr for Problem {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_problem(s)
    }
}

pub fn format_problem(p: &Problem) -> String {
    let mut s = format!("id: {}\n", p.id);
    match &p.start {
        Some(Start::Fen(pos)) => s += &format!("fen: {}\n", format_fen(pos)),
        Some(Start::GameArray) => s += "start: array\n",
        Some(Start::WhiteArray) => s += "start: white-array\n",
        None => {}
    }
    if let Some(t) = &p.target {
        s += &format!("target: {}\n", format_fen(t));
    }
    s += &format!("stip: {}\n", p.stipulation);
    if let Some(e) = &p.expected {
        s += &format!("expect: {e}\n");
    }
    if p.tier != Tier::Fast {
        s += &format!("tier: {}\n", p.tier);
    }
    if !p.notes.is_empty() {
        for line in p.notes.lines() {
            s += &format!("notes: {line}\n");
        }
    }
    s
}

/// Why `to` cannot arise from `from` by captures and promotions alone, if it
/// cannot. Men never appear; each extra officer needs a vanished pawn.
pub fn material_infeasibility(from: &Position, to: &Position) -> Option<String> {
    for c in Color::ALL {
        let have = |k| from.count(c, k);
        let want = |k| to.count(c, k);
        if want(PieceKind::King) != have(PieceKind::King) {
            return Some(format!("{c} king count changes"));
        }
        if want(PieceKind::Pawn) > have(PieceKind::Pawn) {
            return Some(format!("{c} gains pawns"));
        }
        let pawns_gone = have(PieceKind::Pawn) - want(PieceKind::Pawn);
        let promoted: u32 = PieceKind::PROMOTIONS.iter().map(|&k| want(k).saturating_sub(have(k))).sum();
        if promoted > pawns_gone {
            return Some(format!("{c} needs {promoted} promotions but only {pawns_gone} pawns can have left"));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

fn diag(code: &'static str, message: impl Into<String>) -> Diagnostic {
    Diagnostic { code, message: message.into() }
}

/// Structural checks that do not stop parsing; empty means sound.
pub fn validate_problem(p: &Problem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let start = p.start_position();
    let stip = p.stipulation;
    match &start {
        None => out.push(diag("missing-start", "no start position")),
        Some(s) => {
            if s.side_to_move() != stip.first_mover() {
                out.push(diag(
                    "side-to-move",
                    format!("{stip} needs {} to move in the start position", stip.first_mover()),
                ));
            }
        }
    }
    match stip {
        Stipulation::SeriesHelpmate { .. } | Stipulation::Helpmate { .. } | Stipulation::DirectMateExact { .. } => {
            if let Some(s) = &start {
                for c in Color::ALL {
                    if s.king_square(c).is_none() {
                        out.push(diag("missing-king", format!("{stip} needs a {c} king")));
                    }
                }
            }
        }
        Stipulation::SeriesProofGame { .. } => {
            if let Some(t) = &p.target {
                if t.color_bb(Color::Black) != 0 {
                    out.push(diag("black-men", "series proof game target has Black men"));
                }
                if t.side_to_move() != Color::White {
                    out.push(diag("target-side", "series proof game target must have White to move"));
                }
            }
            if let Some(s) = &start {
                if s.color_bb(Color::Black) != 0 {
                    out.push(diag("black-men", "series proof game start has Black men"));
                }
            }
        }
        Stipulation::ProofGame { plies } => {
            if let (Some(s), Some(t)) = (&start, &p.target) {
                let expect = if plies % 2 == 0 { s.side_to_move() } else { s.side_to_move().opposite() };
                if t.side_to_move() != expect {
                    out.push(diag("target-side", format!("after {plies} plies {expect} is to move")));
                }
            }
        }
    }
    if stip.needs_target() && p.target.is_none() {
        out.push(diag("missing-target", format!("{stip} needs a target")));
    }
    if let (Some(s), Some(t)) = (&start, &p.target) {
        if let Some(why) = material_infeasibility(s, t) {
            out.push(diag("material", why));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAG_A: &str = "\
# queue problem
id: diagA
fen: k7/8/pPK5/p7/8/8/8/8 b - -
stip: ser-h#14
expect: 429
";

    const DIAG_9: &str = "\
id: diag9
start: array
target: rn3bnr/ppp2ppp/3ppk2/3N2q1/6bN/1P6/PBPPPPPP/R2QKB1R b - -
stip: pg 6.5
expect: 60
notes: Ba3 then Bb2 loses a tempo.
notes: Mate with Nd5.
";

    #[test]
    fn parses_corpus_style_files() {
        let a = parse_problem(DIAG_A).unwrap();
        assert_eq!(a.stipulation, Stipulation::SeriesHelpmate { n: 14 });
        assert_eq!(a.expected, Some(BigCount::from(429u64)));
        assert!(validate_problem(&a).is_empty());
        let p9 = parse_problem(DIAG_9).unwrap();
        assert_eq!(p9.start, Some(Start::GameArray));
        assert_eq!(p9.stipulation.plies(), 13);
        assert_eq!(p9.notes.lines().count(), 2);
        assert!(validate_problem(&p9).is_empty(), "{:?}", validate_problem(&p9));
    }

    #[test]
    fn round_trip() {
        for text in [DIAG_A, DIAG_9] {
            let p = parse_problem(text).unwrap();
            assert_eq!(parse_problem(&format_problem(&p)).unwrap(), p);
        }
    }

    #[test]
    fn promotion_accounting() {
        let text = "id: x\nstart: array\ntarget: rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBQR b - -\nstip: pg 1.5\n";
        assert!(matches!(parse_problem(text), Err(ProblemError::Infeasible(_))));
        let s = game_array();
        let t = parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPP1/RNBQKBQR b - -").unwrap();
        assert!(material_infeasibility(&s, &t).is_none());
    }

    #[test]
    fn diagnostics() {
        let wrong_side = parse_problem(&DIAG_A.replace(" b - -", " w - -")).unwrap();
        let d = validate_problem(&wrong_side);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "side-to-move");

        // Three Black knights while all eight Black pawns remain.
        let mut p9 = parse_problem(DIAG_9).unwrap();
        p9.target = Some(parse_fen("rnnqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR b - -").unwrap());
        let d = validate_problem(&p9);
        assert!(d.iter().any(|x| x.code == "material"), "{d:?}");
        assert!(!d.iter().any(|x| x.code == "target-side"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_problem("stip: ser-h#3\nfen: 8/8/8/8/8/8/8/k6K b"), Err(ProblemError::Missing("id"))));
        assert!(matches!(parse_problem("id: x\nstip: pg 2\nstart: array"), Err(ProblemError::Missing("target"))));
        assert!(matches!(parse_problem("id: x\nstip: h#2"), Err(ProblemError::Missing("fen"))));
        assert!(matches!(parse_problem("id: x\nid: y"), Err(ProblemError::DuplicateKey { line: 2, .. })));
        assert!(matches!(parse_problem("id: x\ncolour: w"), Err(ProblemError::UnknownKey { .. })));
        assert!(matches!(parse_problem("id: x\nno colon"), Err(ProblemError::Syntax { line: 2 })));
        assert!(matches!(
            parse_problem("id: x\nstip: h#2\nfen: 8/8/8/8/8/8/8/k6Kx"),
            Err(ProblemError::Fen { field: "fen", .. })
        ));
        assert!(matches!(parse_problem("id: x\nstip: h#2\nstart: somewhere"), Err(ProblemError::BadStart(_))));
        assert!(matches!(parse_problem("id: x\nstip: q#2\nstart: array"), Err(ProblemError::Stipulation(_))));
    }
}
