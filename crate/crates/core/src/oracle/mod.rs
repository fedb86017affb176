//! Closed forms and exact enumerations used to cross-check solver counts.

mod numbers;
mod poset;
mod shapes;

pub use numbers::{
    binomial, catalan, euler_zigzag, factorial, fibonacci, multinomial, updown_bruteforce, BRUTE_FORCE_LIMIT,
};
pub use poset::{Poset, DEFAULT_IDEAL_BUDGET, MAX_ELEMENTS};
pub use shapes::{
    cell_poset, chess_poset, chess_tableaux_bruteforce, chess_tableaux_count, skew_syt_count, syt_count, Partition,
    SkewShape, TABLEAU_BRUTE_FORCE_LIMIT,
};

use crate::count::BigCount;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("parts sum to {sum}, expected {n}")]
    SumMismatch { n: u32, sum: u64 },
    #[error("{0:?} is not a partition")]
    NotAPartition(Vec<u32>),
    #[error("inner shape {inner} does not fit inside {outer}")]
    InnerNotContained { outer: String, inner: String },
    #[error("{what} {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("order-ideal count exceeded the budget of {budget}")]
    IdealBudget { budget: usize },
    #[error("relation is cyclic through `{0}`")]
    Cyclic(String),
    #[error("colored counting needs a color on every element")]
    MissingColoring,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: determinant gave non-integral {0}")]
    NonIntegral(String),
}

/// Chess tableaux by both routes; a disagreement is an error.
pub fn chess_tableaux_checked(shape: &Partition) -> Result<BigCount, OracleError> {
    let dp = chess_tableaux_count(shape)?;
    if shape.size() <= TABLEAU_BRUTE_FORCE_LIMIT {
        let bf = chess_tableaux_bruteforce(shape)?;
        if bf != dp {
            return Err(OracleError::Parse(format!("chess tableau routes disagree: {dp} vs {bf}")));
        }
    }
    Ok(dp)
}
