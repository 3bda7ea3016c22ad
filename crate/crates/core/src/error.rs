use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed model document: {0}")]
    MalformedModel(String),

    #[error("unsupported model feature in {location}: {what}")]
    Unsupported { location: String, what: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("feature index {index} out of range for {num_features} features")]
    FeatureOutOfRange { index: usize, num_features: usize },

    #[error("non-finite value {value} at coordinate {coordinate}")]
    NonFinite { coordinate: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("row {row}, column {column}: {message}")]
    Csv {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty table")]
    EmptyTable,

    #[error("background sample is empty")]
    EmptyBackground,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tree {tree} needs {required} partition lists, budget is {budget}")]
    BudgetExceeded {
        tree: usize,
        required: u128,
        budget: u64,
    },

    #[error("incomplete subset lattice: no values for {0}")]
    IncompleteLattice(String),

    #[error("{num_features} features exceeds the enumeration limit of {limit}")]
    EnumerationLimit { num_features: usize, limit: usize },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(coordinate) => Err(Error::NonFinite {
            coordinate,
            value: x[coordinate],
        }),
        None => Ok(()),
    }
}
