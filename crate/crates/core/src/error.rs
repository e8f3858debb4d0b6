use thiserror::Error;

/// Every failure the engine can report.
///
/// Indices carried by variants are 1-based so they can be shown to users
/// verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("exact division failed: the quotient is not a Laurent polynomial")]
    NotDivisible,

    #[error("direction {k} is out of range 1..={n}")]
    BadDirection { k: usize, n: usize },

    #[error("principal part is not skew-symmetrizable: d_{i}*b_{i},{j} != -d_{j}*b_{j},{i}")]
    NotSkewSymmetrizable { i: usize, j: usize },

    #[error("matrix is not skew-symmetric at ({i},{j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("pair is not compatible: entry ({j},{i}) of B^T Lambda is wrong")]
    NotCompatible { j: usize, i: usize },

    #[error("classical recurrence produced an inexact polynomial division")]
    InexactDivision,

    #[error("the two sign choices disagree: {0}")]
    EpsilonMismatch(String),

    #[error("monomial exponent {0:?} needs more than one non-invertible inverse")]
    UnsupportedExponent(Vec<i64>),

    #[error("torus exponent {0:?} is not of the form (B0 a, a)")]
    NotInColumnSpan(Vec<i64>),

    #[error("F-polynomial has a negative exponent {0:?}")]
    NegativeExponent(Vec<i64>),

    #[error("cluster variable is not a q-power multiple of F(Y)M(g): {0}")]
    NotProportional(String),

    #[error("entry b_{i},{j} = {value} is outside {{-1, 0, 1}}")]
    EntriesOutOfRange { i: usize, j: usize, value: i64 },

    #[error("quiver is not of type A: {0}")]
    NotTypeA(String),

    #[error("two computation routes disagree: {0}")]
    RouteMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
