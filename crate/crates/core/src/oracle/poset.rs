//! Finite posets with optional two-coloring, and linear-extension counting.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::numbers::{for_each_permutation, BRUTE_FORCE_LIMIT};
use super::OracleError;
use crate::board::Color;
use crate::count::BigCount;

pub const MAX_ELEMENTS: usize = 128;
pub const DEFAULT_IDEAL_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `below[i]`: bitmask of all elements strictly less than `i`.
    below: Vec<u128>,
    coloring: Option<Vec<Color>>,
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

impl Poset {
    /// Builds the poset generated by `relations` (pairs `a < b`).
    pub fn new(labels: Vec<String>, relations: Vec<(usize, usize)>) -> Result<Self, OracleError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(OracleError::TooLarge { what: "poset elements", size: n, limit: MAX_ELEMENTS });
        }
        let mut below = vec![0u128; n];
        for &(a, b) in &relations {
            if a >= n || b >= n {
                return Err(OracleError::Parse(format!("relation ({a}, {b}) out of range")));
            }
            below[b] |= 1 << a;
        }
        // transitive closure, repeated until stable
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = below[i];
                for j in bits(below[i]) {
                    acc |= below[j];
                }
                if acc != below[i] {
                    below[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i] >> i & 1 == 1) {
            return Err(OracleError::Cyclic(labels[i].clone()));
        }
        Ok(Poset { labels, below, coloring: None })
    }

    pub fn with_coloring(mut self, colors: Vec<Color>) -> Result<Self, OracleError> {
        if colors.len() != self.len() {
            return Err(OracleError::MissingColoring);
        }
        self.coloring = Some(colors);
        Ok(self)
    }

    pub fn chain(n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Poset::new(labels, (1..n).map(|i| (i - 1, i)).collect()).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::new((1..=n).map(|i| i.to_string()).collect(), Vec::new()).expect("antichain is acyclic")
    }

    /// `rows × cols` grid ordered by both coordinates.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let labels = (0..rows * cols).map(|k| format!("r{}c{}", k / cols + 1, k % cols + 1)).collect();
        let mut rel = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let k = r * cols + c;
                if c + 1 < cols {
                    rel.push((k, k + 1));
                }
                if r + 1 < rows {
                    rel.push((k, k + cols));
                }
            }
        }
        Poset::new(labels, rel).expect("grid is acyclic")
    }

    /// Zigzag `x1 < x2 > x3 < ...` on `n` elements.
    pub fn zigzag(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        let rel = (1..n).map(|i| if i % 2 == 1 { (i - 1, i) } else { (i, i - 1) }).collect();
        Poset::new(labels, rel).expect("zigzag is acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn coloring(&self) -> Option<&[Color]> {
        self.coloring.as_deref()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    /// Cover relations `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in bits(self.below[b]) {
                let mid = bits(self.below[b]).any(|c| c != a && self.less(a, c));
                if !mid {
                    out.push((a, b));
                }
            }
        }
        out.sort();
        out
    }

    /// Same poset with the colors dropped.
    pub fn uncolored(&self) -> Poset {
        Poset { coloring: None, ..self.clone() }
    }

    /// Counts linear extensions with the default ideal budget.
    pub fn count_linear_extensions(&self) -> Result<BigCount, OracleError> {
        self.extensions(None, DEFAULT_IDEAL_BUDGET)
    }

    pub fn count_linear_extensions_with_budget(&self, budget: usize) -> Result<BigCount, OracleError> {
        self.extensions(None, budget)
    }

    /// Linear extensions whose color word alternates starting with `first`.
    pub fn count_linear_extensions_colored(&self, first: Color) -> Result<BigCount, OracleError> {
        self.extensions(Some(first), DEFAULT_IDEAL_BUDGET)
    }

    /// Dynamic programming over order ideals, one level (ideal size) at a time.
    fn extensions(&self, first: Option<Color>, budget: usize) -> Result<BigCount, OracleError> {
        let colors = match first {
            Some(_) => Some(self.coloring.as_ref().ok_or(OracleError::MissingColoring)?),
            None => None,
        };
        let n = self.len();
        let mut level: HashMap<u128, BigCount> = HashMap::new();
        level.insert(0, BigCount::one());
        let mut seen = 1usize;
        for step in 0..n {
            let want = first.map(|c| if step % 2 == 0 { c } else { c.opposite() });
            let mut next: HashMap<u128, BigCount> = HashMap::new();
            for (ideal, ways) in &level {
                for e in 0..n {
                    if ideal >> e & 1 == 1 || self.below[e] & !ideal != 0 {
                        continue;
                    }
                    if let (Some(w), Some(cs)) = (want, colors) {
                        if cs[e] != w {
                            continue;
                        }
                    }
                    *next.entry(ideal | 1 << e).or_default() += ways;
                }
            }
            seen += next.len();
            if seen > budget {
                return Err(OracleError::IdealBudget { budget });
            }
            level = next;
        }
        Ok(level.into_values().sum())
    }

    /// Counts extensions by filtering all permutations; at most ten elements.
    pub fn brute_force_extensions(&self) -> Result<BigCount, OracleError> {
        self.brute_force(None)
    }

    pub fn brute_force_extensions_colored(&self, first: Color) -> Result<BigCount, OracleError> {
        if self.coloring.is_none() {
            return Err(OracleError::MissingColoring);
        }
        self.brute_force(Some(first))
    }

    fn brute_force(&self, first: Option<Color>) -> Result<BigCount, OracleError> {
        let n = self.len();
        if n > BRUTE_FORCE_LIMIT {
            return Err(OracleError::TooLarge { what: "brute-force poset elements", size: n, limit: BRUTE_FORCE_LIMIT });
        }
        let mut count = 0u64;
        for_each_permutation(n, |p| {
            let ordered = (0..n).all(|i| (i + 1..n).all(|j| !self.less(p[j], p[i])));
            let alternates = match (first, &self.coloring) {
                (Some(c), Some(cs)) => p
                    .iter()
                    .enumerate()
                    .all(|(k, &e)| cs[e] == if k % 2 == 0 { c } else { c.opposite() }),
                _ => true,
            };
            if ordered && alternates {
                count += 1;
            }
        });
        Ok(count.into())
    }

    /// Text form: optional `element <label> [white|black]` lines, then one
    /// `<a> < <b>` line per cover relation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            match &self.coloring {
                Some(cs) => writeln!(s, "element {l} {}", cs[i].name()).unwrap(),
                None => writeln!(s, "element {l}").unwrap(),
            }
        }
        for (a, b) in self.covers() {
            writeln!(s, "{} < {}", self.labels[a], self.labels[b]).unwrap();
        }
        s
    }

    /// Parses the text form; elements named only in relations are added in
    /// order of appearance. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, OracleError> {
        let mut labels: Vec<String> = Vec::new();
        let mut colors: Vec<Option<Color>> = Vec::new();
        let mut rel = Vec::new();
        let intern = |l: &str, labels: &mut Vec<String>, colors: &mut Vec<Option<Color>>| {
            labels.iter().position(|x| x == l).unwrap_or_else(|| {
                labels.push(l.to_string());
                colors.push(None);
                labels.len() - 1
            })
        };
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || OracleError::Parse(format!("line {}: `{}`", no + 1, raw.trim()));
            match toks.as_slice() {
                ["element", l] => {
                    intern(l, &mut labels, &mut colors);
                }
                ["element", l, c] => {
                    let color: Color = c.parse().map_err(|_| bad())?;
                    let i = intern(l, &mut labels, &mut colors);
                    colors[i] = Some(color);
                }
                [a, "<", b] => {
                    let i = intern(a, &mut labels, &mut colors);
                    let j = intern(b, &mut labels, &mut colors);
                    rel.push((i, j));
                }
                [a, ">", b] => {
                    let i = intern(a, &mut labels, &mut colors);
                    let j = intern(b, &mut labels, &mut colors);
                    rel.push((j, i));
                }
                _ => return Err(bad()),
            }
        }
        let p = Poset::new(labels, rel)?;
        if colors.iter().all(Option::is_none) {
            Ok(p)
        } else {
            let cs: Option<Vec<Color>> = colors.into_iter().collect();
            p.with_coloring(cs.ok_or(OracleError::MissingColoring)?)
        }
    }

    /// Graphviz rendering of the Hasse diagram, smaller elements at the bottom.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let style = match self.coloring.as_ref().map(|cs| cs[i]) {
                Some(Color::White) => ", style=filled, fillcolor=white",
                Some(Color::Black) => ", style=filled, fillcolor=gray30, fontcolor=white",
                None => "",
            };
            writeln!(s, "  n{i} [label=\"{}\"{style}];", l.replace('"', "\\\"")).unwrap();
        }
        for (a, b) in self.covers() {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::numbers::{catalan, euler_zigzag};

    #[test]
    fn small_families() {
        assert_eq!(Poset::grid(2, 7).count_linear_extensions().unwrap(), 429u64);
        assert_eq!(Poset::antichain(5).count_linear_extensions().unwrap(), 120u64);
        assert_eq!(Poset::chain(6).count_linear_extensions().unwrap(), 1u64);
        assert_eq!(Poset::antichain(0).count_linear_extensions().unwrap(), 1u64);
        assert_eq!(Poset::antichain(0).brute_force_extensions().unwrap(), 1u64);
        assert_eq!(Poset::zigzag(7).count_linear_extensions().unwrap(), euler_zigzag(7));
        assert_eq!(Poset::grid(2, 17).count_linear_extensions().unwrap(), catalan(17));
    }

    #[test]
    fn v_poset() {
        let p = Poset::parse("b < t1\nb < t2").unwrap();
        assert_eq!(p.brute_force_extensions().unwrap(), 2u64);
        assert_eq!(p.count_linear_extensions().unwrap(), 2u64);
    }

    #[test]
    fn cycle_rejected() {
        assert!(matches!(Poset::parse("a < b\nb < c\nc < a"), Err(OracleError::Cyclic(_))));
        assert!(Poset::parse("a <= b").is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = Poset::antichain(20).count_linear_extensions_with_budget(1000).unwrap_err();
        assert!(matches!(err, OracleError::IdealBudget { budget: 1000 }));
        assert!(err.to_string().contains("1000"));
    }

    #[test]
    fn colored_trivia() {
        let one = Poset::parse("element a white").unwrap();
        assert_eq!(one.count_linear_extensions_colored(Color::White).unwrap(), 1u64);
        let two = Poset::parse("element a white\nelement b white").unwrap();
        assert_eq!(two.count_linear_extensions_colored(Color::White).unwrap(), 0u64);
        assert!(matches!(
            Poset::chain(2).count_linear_extensions_colored(Color::White),
            Err(OracleError::MissingColoring)
        ));
        assert!(matches!(Poset::parse("element a white\nelement b"), Err(OracleError::MissingColoring)));
    }

    const DIAGRAM_3: &str = "\
element cxb5 white
element b4 white
element d5 white
element Kxb1 white
element Rxb5 black
element Bg8 black
element Qa4 black
cxb5 < Rxb5
Rxb5 < d5
Bg8 < d5
cxb5 < Bg8
b4 < Bg8
b4 < Qa4
Qa4 < Kxb1
Bg8 < Kxb1
";

    #[test]
    fn grid_poset_of_the_helpmate() {
        let p = Poset::parse(DIAGRAM_3).unwrap();
        assert_eq!(p.count_linear_extensions_colored(Color::White).unwrap(), 2u64);
        assert_eq!(p.brute_force_extensions_colored(Color::White).unwrap(), 2u64);
        let plain = p.count_linear_extensions().unwrap();
        assert_eq!(plain, p.brute_force_extensions().unwrap());
        assert!(plain > BigCount::from(2u64));
    }

    #[test]
    fn covers_are_transitively_reduced() {
        let p = Poset::parse("a < b\nb < c\na < c").unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(p.less(0, 2));
    }

    #[test]
    fn text_and_dot_round_trip() {
        let p = Poset::parse(DIAGRAM_3).unwrap();
        let q = Poset::parse(&p.to_text()).unwrap();
        assert_eq!(p, q);
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 8);
    }
}
