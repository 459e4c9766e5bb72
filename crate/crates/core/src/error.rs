use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty tuple")]
    EmptyTuple,

    #[error("unknown node {0}")]
    UnknownNode(String),

    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),

    #[error("network has {0} nodes, at most 64 are supported")]
    TooManyNodes(usize),

    #[error("order {k} out of range (network order is {order})")]
    OrderOutOfRange { k: usize, order: usize },

    #[error("tuple of length {len} does not match order {k} (expected {})", k + 1)]
    TupleLength { len: usize, k: usize },

    #[error("no value stored for key {0:?}")]
    MissingValue(Vec<String>),

    #[error("key {0:?} is larger than order + 1")]
    KeyTooLarge(Vec<String>),

    #[error("duplicate value for key {0:?}")]
    DuplicateKey(Vec<String>),

    #[error("value {value} for key {key:?} is not a finite number")]
    NonFinite { key: Vec<String>, value: f64 },

    #[error("epsilon must be strictly positive (got {0})")]
    NonPositiveEpsilon(f64),

    #[error("network classes differ: {0} vs {1}")]
    ClassMismatch(&'static str, &'static str),

    #[error("network orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("index ({x}, {y}) out of range for a {nx}x{ny} correspondence")]
    PairOutOfRange { x: usize, y: usize, nx: usize, ny: usize },

    #[error("pairs do not cover both node sets")]
    NotACorrespondence,

    #[error("correspondence sizes {got:?} do not match networks {expected:?}")]
    CorrespondenceShape { got: (usize, usize), expected: (usize, usize) },

    #[error("exhaustive enumeration needs |X|*|Y| <= {limit}, got {product}; use the branch-and-bound solver")]
    SizeGuard { product: usize, limit: usize },

    #[error("invalid p-norm parameter {0}; expected a real p >= 1 or 'inf'")]
    InvalidNorm(String),

    #[error("duality defined for classed networks")]
    DualityUndefined,

    #[error("empty corpus after filter")]
    EmptyCorpus,

    #[error("invalid year range {0}..={1}")]
    InvalidYearRange(i32, i32),

    #[error("malformed publication records in {path}: {}", format_lines(.lines))]
    MalformedRecords { path: PathBuf, lines: Vec<(usize, String)> },

    #[error("invalid corpus profile: {0}")]
    InvalidProfile(String),

    #[error("built network failed validation: {0}")]
    InvalidNetwork(String),

    #[error("distance matrix must be square, symmetric, nonnegative with zero diagonal: {0}")]
    InvalidMatrix(String),

    #[error("invalid network file: {0}")]
    Format(String),

    #[error("need at least one network")]
    NoNetworks,

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// True for errors caused by unreadable or malformed input files.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Json { .. }
                | Error::MalformedRecords { .. }
                | Error::UnknownNode(_)
                | Error::DuplicateLabel(_)
                | Error::MissingValue(_)
                | Error::KeyTooLarge(_)
                | Error::DuplicateKey(_)
                | Error::NonFinite { .. }
                | Error::TooManyNodes(_)
                | Error::Format(_)
                | Error::EmptyTuple
        )
    }
}

fn format_lines(lines: &[(usize, String)]) -> String {
    lines.iter().map(|(n, msg)| format!("line {n}: {msg}")).collect::<Vec<_>>().join("; ")
}
