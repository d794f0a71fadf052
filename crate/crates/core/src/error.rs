use crate::exact::Rational;
use thiserror::Error;

/// Errors surfaced by the evaluation routes and the identity kernel.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The trailing entry of a summation index is 1, so the series diverges.
    #[error("inadmissible index: last entry must be at least 2")]
    InadmissibleIndex,

    /// An index contained a zero entry.
    #[error("invalid index: entries must be positive integers")]
    InvalidIndex,

    /// A truncation-driven summation exceeded its term cap.
    #[error("series did not converge within {cap} terms")]
    NonConvergence { cap: usize },

    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Node doubling stalled before reaching the requested accuracy.
    #[error("quadrature did not converge at {max_nodes} nodes (last delta {last_delta})")]
    QuadratureNoConvergence {
        max_nodes: usize,
        last_delta: String,
    },

    /// A termwise coefficient identity failed; carries the counterexample.
    #[error("identity violated at (a={}, b={}, n={}): lhs = {}, rhs = {}",
        .0.a, .0.b, .0.n, .0.lhs, .0.rhs)]
    IdentityViolation(Box<ViolationDetail>),

    /// The power-of-two rescaling could not be fixed against the series oracle.
    #[error("normalization oracle failed: {0}")]
    Normalization(String),

    /// Malformed caller input (bad flag combination, unsupported digits, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Counterexample payload of [`Error::IdentityViolation`].
#[derive(Debug, Clone)]
pub struct ViolationDetail {
    pub a: u32,
    pub b: u32,
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
}

pub type Result<T> = std::result::Result<T, Error>;
