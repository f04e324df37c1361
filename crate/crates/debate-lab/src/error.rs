use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A grid answer that disagrees with the closed-form equilibrium interval.
#[derive(Debug, Clone, PartialEq)]
pub struct NashViolation {
    pub answer: f64,
    /// True when the grid game marked `answer` as an equilibrium but the
    /// interval rejects it; false when the interval contains `answer` but the
    /// grid game rejected it.
    pub spurious: bool,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("conditioning event has zero probability")]
    ZeroProbabilityEvent,

    #[error("feature index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    #[error("debate not truth-promoting within {0} rounds")]
    NotPromotedWithin(usize),

    #[error("answers ({a1}, {a2}) lie outside the equilibrium interval [{lo}, {hi}]")]
    AnswersOutsideLambda { a1: f64, a2: f64, lo: f64, hi: f64 },

    #[error("value {value} of feature {index} is outside the evidence model's support")]
    UnsupportedValue { index: usize, value: f64 },

    #[error("k-feature bound requires 2N <= K, got 2N = {two_n}, K = {k}")]
    BoundInapplicable { two_n: usize, k: usize },

    #[error("bit {position} of feature {index} revealed out of order (expected bit {expected})")]
    OutOfOrderBit {
        index: usize,
        position: u32,
        expected: u32,
    },

    #[error("claimed bit {position} of feature {index} does not match the sampled world")]
    UntruthfulBit { index: usize, position: u32 },

    #[error("{} grid answers disagree with the equilibrium interval", violations.len())]
    NashMismatch { violations: Vec<NashViolation> },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: config problems exit 2, everything
    /// else that bubbles out of a run exits 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            // Out-of-range indices always trace back to a malformed setup.
            Error::Config { .. } | Error::Invalid { .. } | Error::IndexOutOfRange { .. } => 2,
            _ => 3,
        }
    }
}
