//! Knots as expressions over torus, two-bridge and tabulated atoms, with
//! Seifert matrices and the classical invariants σ, σ_ω, Arf and Δ(−1).

mod corpus;
mod expr;
mod invariants;
mod parser;
mod seifert;

pub use corpus::{Convention, Corpus, CorpusEntry, CorpusError, CorpusFlag};
pub use expr::KnotExpr;
pub use invariants::{
    alexander_polynomial, arf, cyclotomic, determinant, signature, signature_data, tl_signature,
    tl_signature_matrix,
};
pub use parser::parse_knot;
pub use seifert::{seifert_matrix, torus_seifert, two_bridge_seifert, even_continued_fraction, SeifertMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("NonCoprime: gcd({p}, {q}) ≠ 1")]
    NonCoprime { p: i64, q: i64 },
    #[error("EvenTwoBridge: K({p}, q) needs odd p")]
    EvenTwoBridge { p: i64 },
    #[error("InvalidAtom: {0}")]
    InvalidAtom(String),
    #[error("UnknownName: {0}")]
    UnknownName(String),
    #[error("MissingCorpusMatrix: no Seifert matrix for {0}")]
    MissingCorpusMatrix(String),
    #[error("AlexanderRoot: e^(2πi·{r}/{m}) is a root of the Alexander polynomial")]
    AlexanderRoot { r: i64, m: i64 },
    #[error("InvalidOmega: need m ≥ 2 and 0 < r < m, got r={r}, m={m}")]
    InvalidOmega { r: i64, m: i64 },
}

impl KnotError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            KnotError::Syntax { .. } => "Syntax",
            KnotError::NonCoprime { .. } => "NonCoprime",
            KnotError::EvenTwoBridge { .. } => "EvenTwoBridge",
            KnotError::InvalidAtom(_) => "InvalidAtom",
            KnotError::UnknownName(_) => "UnknownName",
            KnotError::MissingCorpusMatrix(_) => "MissingCorpusMatrix",
            KnotError::AlexanderRoot { .. } => "AlexanderRoot",
            KnotError::InvalidOmega { .. } => "InvalidOmega",
        }
    }
}
