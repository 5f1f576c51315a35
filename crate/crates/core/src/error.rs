use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain errors raised by the calculi, the aggregation engine, the
/// Dempster-Shafer module and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two opposing certainties were combined. No value is defined for the result.
    #[error("total conflict between {left} and {right}")]
    TotalConflict { left: String, right: String },

    #[error("{calculus} value {value} is out of range {range}")]
    OutOfRange {
        calculus: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("mass function has mass {0} on theta; belief is not a single number")]
    NotChanceCase(f64),

    #[error("invalid mass function: {0}")]
    InvalidMass(String),

    #[error("evidence pool mixes hypotheses '{first}' and '{second}'")]
    MixedHypotheses { first: String, second: String },

    #[error("observed evidence has zero probability under both H and not-H")]
    ZeroProbabilityEvidence,

    #[error("likelihood ratio of channel {0} is undefined (0/0)")]
    UndefinedRatio(usize),

    #[error("unknown hypothesis '{0}'")]
    UnknownHypothesis(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

impl Error {
    pub(crate) fn conflict(left: impl ToString, right: impl ToString) -> Self {
        Error::TotalConflict {
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
