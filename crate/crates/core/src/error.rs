use thiserror::Error;

use crate::pipeline::SaturationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Input text or letter data could not be interpreted.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Syntax(String),

    #[error("generator index {index} out of range for alphabet of size {size}")]
    UnknownGenerator { index: usize, size: usize },

    #[error("alphabet mismatch: expected {expected} generators, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("factor index {index} out of range ({count} factors)")]
    FactorIndex { index: usize, count: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The seed presentation already has a smaller b1 than requested, so no
    /// chain of added relators can reach the target.
    #[error("inconsistent b1 target {target}: seed presentation has b1 = {seed_b1}")]
    InconsistentTarget { target: usize, seed_b1: usize },

    #[error("budget of {budget} scanned words exhausted before reaching b1 = {target}")]
    BudgetExhausted {
        budget: u64,
        target: usize,
        report: Box<SaturationReport>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
