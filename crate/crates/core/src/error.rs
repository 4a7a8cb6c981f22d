use thiserror::Error;

use crate::chain::Chain;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degree {k} out of range for complex of dimension {dim}")]
    DegreeOutOfRange { k: usize, dim: usize },

    #[error("simplex {0:?} is not in the complex")]
    MissingSimplex(Vec<usize>),

    /// The cochain is not a coboundary; `witness` is a cycle on which it pairs nontrivially.
    #[error("cochain is not exact (pairs to {pairing} with a cycle)")]
    NotExact { witness: Chain, pairing: num::BigRational },

    #[error("rank-deficient lattice basis (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("lattice entry {value} exceeds the cap {cap}")]
    EntryCap { value: i64, cap: i64 },

    #[error("enumeration budget exceeded: {needed} candidates > cap {cap}")]
    EnumerationBudget { needed: u128, cap: u128 },

    #[error("no feasible candidate")]
    NoCandidate,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("support of the class cannot be resolved to a surface: {0}")]
    NotSurgerable(String),

    #[error("linear program is {0}")]
    Lp(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
