//! Partitions, skew shapes and tableau counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numbers::factorial;
use super::poset::Poset;
use super::OracleError;
use crate::board::Color;
use crate::count::BigCount;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, OracleError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(OracleError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count() as u32).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = OracleError;

    /// `5,3,2,1,1`; an empty string, `0` or `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| OracleError::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Cells of `outer` not in `inner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, OracleError> {
        if inner.len() > outer.len() || (0..inner.len()).any(|i| inner.part(i) > outer.part(i)) {
            return Err(OracleError::InnerNotContained {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Cells as 0-based (row, column), row-major.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for r in 0..self.outer.len() {
            for c in self.inner.part(r)..self.outer.part(r) {
                out.push((r as u32, c));
            }
        }
        out
    }
}

impl FromStr for SkewShape {
    type Err = OracleError;

    /// `5,3,2,1,1 / 2` or a plain partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// Standard Young tableaux of a straight shape by the hook-length formula.
pub fn syt_count(shape: &Partition) -> BigCount {
    let conj = shape.conjugate();
    let mut hooks = BigUint::one();
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = conj.part(c as usize) - r as u32 - 1;
            hooks *= arm + leg + 1;
        }
    }
    let n = factorial(shape.size());
    debug_assert!((&n % &hooks).is_zero());
    (n / hooks).into()
}

fn inv_factorial(k: i64) -> BigRational {
    if k < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), BigInt::from(factorial(k as u32)))
    }
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Standard fillings of a skew shape, by the determinant
/// `|λ/μ|! · det[1 / (λ_i − μ_j − i + j)!]` in exact rational arithmetic.
pub fn skew_syt_count(shape: &SkewShape) -> Result<BigCount, OracleError> {
    let l = shape.outer.len();
    if l == 0 {
        return Ok(BigCount::one());
    }
    let m: Vec<Vec<BigRational>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = shape.outer.part(i) as i64 - shape.inner.part(j) as i64 - i as i64 + j as i64;
                    inv_factorial(k)
                })
                .collect()
        })
        .collect();
    let det = determinant(m) * BigRational::from_integer(BigInt::from(factorial(shape.size())));
    if !det.is_integer() || det.is_negative() {
        return Err(OracleError::NonIntegral(det.to_string()));
    }
    Ok(det.to_integer().to_biguint().unwrap_or_default().into())
}

/// Cell poset of a skew shape: each cell precedes its right and lower neighbours.
pub fn cell_poset(shape: &SkewShape) -> Result<Poset, OracleError> {
    let cells = shape.cells();
    let idx = |r: u32, c: u32| cells.iter().position(|&x| x == (r, c));
    let labels = cells.iter().map(|(r, c)| format!("r{}c{}", r + 1, c + 1)).collect();
    let mut rel = Vec::new();
    for (i, &(r, c)) in cells.iter().enumerate() {
        if let Some(j) = idx(r, c + 1) {
            rel.push((i, j));
        }
        if let Some(j) = idx(r + 1, c) {
            rel.push((i, j));
        }
    }
    Poset::new(labels, rel)
}

/// Straight-shape cell poset colored by checkerboard: cell (i, j), 1-based,
/// is White exactly when `i + j` is even.
pub fn chess_poset(shape: &Partition) -> Result<Poset, OracleError> {
    let skew = SkewShape::straight(shape.clone());
    let colors = skew
        .cells()
        .iter()
        .map(|&(r, c)| if (r + c) % 2 == 0 { Color::White } else { Color::Black })
        .collect();
    cell_poset(&skew)?.with_coloring(colors)
}

/// SYTs whose entry at (i, j) is odd exactly when `i + j` is even, via the
/// alternation-constrained extension DP.
pub fn chess_tableaux_count(shape: &Partition) -> Result<BigCount, OracleError> {
    chess_poset(shape)?.count_linear_extensions_colored(Color::White)
}

pub const TABLEAU_BRUTE_FORCE_LIMIT: u32 = 16;

/// Same count by enumerating every SYT of the shape and checking parities.
pub fn chess_tableaux_bruteforce(shape: &Partition) -> Result<BigCount, OracleError> {
    let n = shape.size();
    if n > TABLEAU_BRUTE_FORCE_LIMIT {
        return Err(OracleError::TooLarge {
            what: "chess tableau brute force cells",
            size: n as usize,
            limit: TABLEAU_BRUTE_FORCE_LIMIT as usize,
        });
    }
    let mut filled = vec![0u32; shape.len()];
    let mut count = 0u64;
    fn place(shape: &Partition, filled: &mut [u32], next: u32, n: u32, count: &mut u64) {
        if next > n {
            *count += 1;
            return;
        }
        for r in 0..filled.len() {
            let c = filled[r];
            let fits = c < shape.part(r) && (r == 0 || filled[r - 1] > c);
            // entry `next` at 1-based (r+1, c+1): odd iff r + c even
            if fits && (next % 2 == 1) == (r as u32 + c).is_multiple_of(2) {
                filled[r] += 1;
                place(shape, filled, next + 1, n, count);
                filled[r] -= 1;
            }
        }
    }
    place(shape, &mut filled, 1, n, &mut count);
    Ok(count.into())
}
