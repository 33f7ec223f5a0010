use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Differentiating a truncated series more often than its order allows.
    #[error("cannot differentiate {times} times a series truncated at order {order}")]
    TruncationUnderflow { times: usize, order: usize },

    /// A dilatation was asked for more output terms than its input can support.
    #[error("dilatation by K={k} to output order {wanted} needs input order {needed}, got {have}")]
    InsufficientOrder {
        k: u32,
        wanted: usize,
        needed: usize,
        have: usize,
    },

    #[error("lower parameter b_{index} = {value} hits a pole at term {term}")]
    Pole {
        index: usize,
        value: String,
        term: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// The two routes of the normal-ordering witness disagree.
    #[error("normal-ordering routes disagree at power {power} of the formal variable")]
    Consistency { power: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
