//! Recovering the move-order structure behind a set of solutions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::board::{Color, Move, PieceKind, Square};
use crate::count::BigCount;
use crate::oracle::{OracleError, Poset};

/// A move identified by who moved what where; repeats of the same move in
/// one line are told apart by `occurrence`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveLabel {
    pub side: Color,
    pub piece: PieceKind,
    pub from: Square,
    pub to: Square,
    pub promotion: Option<PieceKind>,
    pub occurrence: u32,
}

impl fmt::Display for MoveLabel {
    /// `Pc4-b5` for White, `rf5-b5` for Black, `/2` on a second occurrence.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.piece.letter();
        let l = if self.side == Color::White { l } else { l.to_ascii_lowercase() };
        write!(f, "{l}{}-{}", self.from, self.to)?;
        if let Some(p) = self.promotion {
            write!(f, "={}", p.letter())?;
        }
        if self.occurrence > 0 {
            write!(f, "/{}", self.occurrence + 1)?;
        }
        Ok(())
    }
}

fn label_line(line: &[Move]) -> Vec<MoveLabel> {
    let mut seen: BTreeMap<(Color, PieceKind, Square, Square, Option<PieceKind>), u32> = BTreeMap::new();
    line.iter()
        .map(|m| {
            let key = (m.piece.color, m.piece.kind, m.from, m.to, m.promotion);
            let n = seen.entry(key).or_insert(0);
            let l = MoveLabel {
                side: m.piece.color,
                piece: m.piece.kind,
                from: m.from,
                to: m.to,
                promotion: m.promotion,
                occurrence: *n,
            };
            *n += 1;
            l
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub id: String,
    pub sequences: Vec<Vec<MoveLabel>>,
}

impl SolutionSet {
    pub fn from_lines(id: impl Into<String>, lines: &[Vec<Move>]) -> Self {
        SolutionSet { id: id.into(), sequences: lines.iter().map(|l| label_line(l)).collect() }
    }

    /// Drops the final ply of every line, as for series helpmates where the
    /// structure lives in the series and White's mate is appended.
    pub fn without_last_ply(&self) -> Self {
        SolutionSet {
            id: self.id.clone(),
            sequences: self.sequences.iter().map(|s| s[..s.len().saturating_sub(1)].to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub solutions: usize,
    pub common_multiset: bool,
    #[serde(serialize_with = "poset_text")]
    pub poset: Option<Poset>,
    pub extension_count: Option<BigCount>,
    pub exact: Option<bool>,
    /// Colour whose move comes first when extensions must alternate.
    pub alternating: Option<Color>,
}

fn poset_text<S: serde::Serializer>(p: &Option<Poset>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_text()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("no solutions to analyze")]
    Empty,
    #[error("solutions have different lengths")]
    RaggedLengths,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `x < y` iff `x` precedes `y` in every solution, reduced to cover edges.
pub fn infer_precedence_poset(s: &SolutionSet) -> Result<StructureReport, AnalysisError> {
    let first = s.sequences.first().ok_or(AnalysisError::Empty)?;
    if s.sequences.iter().any(|q| q.len() != first.len()) {
        return Err(AnalysisError::RaggedLengths);
    }
    let mut elements = first.clone();
    elements.sort();
    let mut report = StructureReport {
        solutions: s.len(),
        common_multiset: true,
        poset: None,
        extension_count: None,
        exact: None,
        alternating: None,
    };
    for q in &s.sequences {
        let mut sorted = q.clone();
        sorted.sort();
        if sorted != elements {
            report.common_multiset = false;
            return Ok(report);
        }
    }
    let n = elements.len();
    let mut before = vec![vec![true; n]; n];
    let mut at = vec![0usize; n];
    for q in &s.sequences {
        for (i, l) in q.iter().enumerate() {
            at[elements.binary_search(l).expect("same multiset")] = i;
        }
        for a in 0..n {
            for b in 0..n {
                before[a][b] &= at[a] < at[b];
            }
        }
    }
    let relations = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| before[a][b]).collect();
    let labels = elements.iter().map(|l| l.to_string()).collect();
    let colors = elements.iter().map(|l| l.side).collect();
    report.poset = Some(Poset::new(labels, relations)?.with_coloring(colors)?);
    Ok(report)
}

/// Compares the extension count of the inferred poset with the number of
/// solutions. With `alternating`, only extensions whose colours alternate
/// starting from that side are counted.
pub fn check_poset_exactness(
    s: &SolutionSet,
    r: &StructureReport,
    alternating: Option<Color>,
) -> Result<StructureReport, AnalysisError> {
    let mut out = r.clone();
    let Some(p) = &r.poset else {
        return Ok(out);
    };
    let count = match alternating {
        Some(c) => p.count_linear_extensions_colored(c)?,
        None => p.count_linear_extensions()?,
    };
    out.exact = Some(count == BigCount::from(s.len()));
    out.extension_count = Some(count);
    out.alternating = alternating;
    Ok(out)
}
