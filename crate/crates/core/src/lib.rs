//! Exact solution counting for enumerative chess problems.

pub mod analysis;
pub mod board;
pub mod count;
pub mod oracle;
pub mod problem;
pub mod solver;

pub use board::{Color, Move, Piece, PieceKind, Position, Square};
pub use count::BigCount;
pub use oracle::{Partition, Poset, SkewShape};
pub use problem::{Problem, Stipulation};
pub use solver::{CountReport, SearchLimits};
