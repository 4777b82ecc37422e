use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid weight configuration: {0}")]
    InvalidConfig(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("f(k) is undefined for k = 0")]
    ZeroExponent,

    #[error("graph is not a galaxy graph: {0}")]
    NotGalaxy(String),

    #[error("state exceeds solver capacity: {0}")]
    Capacity(String),

    #[error("classifier `{classifier}` does not apply to graph {graph}")]
    Dispatch { classifier: &'static str, graph: String },

    #[error("no closed-form classifier for custom graphs; use the solver")]
    Unsupported,

    /// A winning rule and a losing rule fired on the same configuration.
    #[error("rule contradiction on {weights:?}: winning {winning:?} vs losing {losing:?}")]
    Contradiction {
        weights: Vec<u32>,
        winning: Vec<String>,
        losing: Vec<String>,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed report: {0}")]
    Report(String),
}
