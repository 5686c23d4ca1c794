use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular: pivot {pivot:e} at step {step} is below threshold {threshold:e}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not stochastic: row {row}: {reason}")]
    NotStochastic { row: usize, reason: String },

    #[error("chain is not irreducible: state {state} cannot reach or be reached from state 0")]
    NotIrreducible { state: usize },

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("matrix is not a g-inverse of I - P: condition 1 residual {residual:e}")]
    NotAGInverse { residual: f64 },

    #[error("classification inconsistent for condition {condition}: parameter test says {by_params}, matrix test says {by_matrix}")]
    ClassificationInconsistent {
        condition: &'static str,
        by_params: bool,
        by_matrix: bool,
    },

    #[error("Moore-Penrose forms disagree by {diff:e}")]
    MPFormsDisagree { diff: f64 },

    #[error("g-inverse is not in class A{{1,5a}} (alpha != e)")]
    NotIn15a,

    #[error("unknown special case '{0}'")]
    UnknownCase(String),

    #[error("beta must sum to 1, sums to {sum}")]
    BadBeta { sum: f64 },

    #[error("routes disagree for {what}: max discrepancy {diff:e} between '{left}' and '{right}'")]
    RouteDisagreement {
        what: &'static str,
        left: String,
        right: String,
        diff: f64,
    },

    #[error("too many censored trials: {censored} of {trials} exceeded the step cap")]
    TooManyCensored { censored: usize, trials: usize },

    #[error("no convergence after {iters} iterations")]
    NoConvergence { iters: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::NonFinite { .. } => "NonFinite",
            Error::NotStochastic { .. } => "NotStochastic",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::DegenerateParameters(_) => "DegenerateParameters",
            Error::NotAGInverse { .. } => "NotAGInverse",
            Error::ClassificationInconsistent { .. } => "ClassificationInconsistent",
            Error::MPFormsDisagree { .. } => "MPFormsDisagree",
            Error::NotIn15a => "NotIn15a",
            Error::UnknownCase(_) => "UnknownCase",
            Error::BadBeta { .. } => "BadBeta",
            Error::RouteDisagreement { .. } => "RouteDisagreement",
            Error::TooManyCensored { .. } => "TooManyCensored",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
