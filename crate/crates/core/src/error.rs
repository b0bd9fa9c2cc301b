use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{op}: shape mismatch ({left} vs {right})")]
    ShapeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("unsupported field degree s = {0} (supported: 1..=8)")]
    UnsupportedDegree(u32),

    #[error("geometry invariant violated: {0}")]
    Geometry(String),

    #[error("parity-check matrix is not self-orthogonal (H·H^t != 0)")]
    NotSelfOrthogonal,

    #[error("parity checks are not mutually orthogonal (H1·H2^t != 0)")]
    NotOrthogonal,

    #[error(
        "enumeration of 2^{dimension} codewords exceeds the budget of 2^{budget}; supply a weight cap"
    )]
    EnumerationBudget { dimension: usize, budget: usize },

    #[error("weight-capped search needs {entries} table entries, over the limit of {limit}")]
    SearchBudget { entries: u128, limit: u128 },

    #[error("invalid channel probability {0} (must lie in [0, 1])")]
    InvalidProbability(f64),

    #[error("alist parse error on line {line}: {msg}")]
    Alist { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape_mismatch(op: &'static str, left: impl ToString, right: impl ToString) -> Error {
    Error::ShapeMismatch {
        op,
        left: left.to_string(),
        right: right.to_string(),
    }
}
