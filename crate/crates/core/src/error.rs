use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Several variants (`OddGenusDefect`, `NotDivisible`, `RegularityViolated`)
/// can only fire on an internal bug or a corrupted input table; they are
/// surfaced as errors instead of panics so that the verification driver can
/// report them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient is not an invertible constant: {0}")]
    NonInvertibleLeading(String),

    #[error("truncation too low: {0}")]
    TruncationTooLow(String),

    #[error("not divisible by (y1 - y2)^{power}: nonzero remainder in total degree {degree}")]
    NotDivisible { power: u32, degree: i64 },

    #[error("odd genus defect: 2g = {0} is odd")]
    OddGenusDefect(i64),

    #[error("permutations do not act transitively on the ground set")]
    Disconnected,

    #[error("{what} n = {n} exceeds the oracle limit {limit}")]
    OracleLimitExceeded { what: &'static str, n: usize, limit: usize },

    #[error("bad integer partition: parts {parts:?} do not sum to {n}")]
    BadPartition { n: usize, parts: Vec<u32> },

    #[error("block sizes ({0}, {1}, {2}) are not pairwise distinct")]
    NotPairwiseDistinct(u32, u32, u32),

    #[error("unsupported genus {g} for {kind}: {reason}")]
    UnsupportedGenus { g: u32, kind: &'static str, reason: &'static str },

    #[error("result has a pole at y = 0 (min degree {0}); expected a power series")]
    RegularityViolated(i64),

    #[error("index cutoff {cutoff} is smaller than the required {required}")]
    CutoffTooSmall { cutoff: u32, required: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
