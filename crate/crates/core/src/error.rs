use crate::composition::Violation;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong when building distributions or running checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A distribution was given no outcomes.
    #[error("distribution has no outcomes")]
    Empty,
    /// A count was negative.
    #[error("negative count {value} at outcome {index}")]
    NegativeCount {
        /// Zero-based outcome index.
        index: usize,
        /// The offending value.
        value: i64,
    },
    /// Every count was zero, so the total would be zero.
    #[error("all counts are zero")]
    AllZero,
    /// A count total or product does not fit in a `u64`.
    #[error("count total overflows u64")]
    CountOverflow,
    /// A probability was NaN or infinite.
    #[error("probability at outcome {index} is not finite")]
    NonFiniteProbability {
        /// Zero-based outcome index.
        index: usize,
    },
    /// A probability was negative.
    #[error("negative probability {value} at outcome {index}")]
    NegativeProbability {
        /// Zero-based outcome index.
        index: usize,
        /// The offending value.
        value: f64,
    },
    /// Probabilities do not sum to one within tolerance.
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized {
        /// The observed sum.
        sum: f64,
    },
    /// Label list length differs from the number of outcomes.
    #[error("{labels} labels for {outcomes} outcomes")]
    LabelMismatch {
        /// Number of labels supplied.
        labels: usize,
        /// Number of outcomes.
        outcomes: usize,
    },
    /// A logarithm base was not a finite real greater than one.
    #[error("logarithm base must be finite and greater than 1, got {0}")]
    InvalidBase(f64),
    /// The uniform case needs at least one outcome.
    #[error("number of outcomes must be at least 1")]
    ZeroOutcomes,
    /// Rational approximation needs a positive denominator.
    #[error("denominator must be at least 1")]
    ZeroDenominator,
    /// A composition tree broke one of its invariants.
    #[error("invalid tree: {0}")]
    InvalidTree(Violation),
    /// A check or estimator was called with unusable parameters.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
