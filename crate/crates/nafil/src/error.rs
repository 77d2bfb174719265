use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Row or column, for Latin-property violation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    BadDimensions { n: usize, rows: usize, cols: usize },

    #[error("entry {value} at row {row}, column {col} is outside 1..={n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },

    #[error("{axis} {index} is not a permutation: value {value} repeats")]
    NotLatin { axis: Axis, index: usize, value: u8 },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("table is not in normal form (identity must be element 1)")]
    NotNormal,

    #[error("table is not an invertible loop")]
    NotInvertible,

    #[error("identity uses an inverse, but the table has no two-sided inverse map")]
    InverseUnavailable,

    #[error("empty factor sequence")]
    EmptySequence,

    #[error("identity uses {count} distinct variables, limit here is {limit}")]
    TooManyVariables { count: usize, limit: usize },

    #[error("stream mixes table orders {first} and {second}")]
    MixedOrders { first: usize, second: usize },

    #[error("unknown fixture name `{0}`")]
    UnknownName(String),

    #[error("{what} at order {requested} exceeds the built-in ceiling of {ceiling}{hint}",
            hint = if *.gated { "; pass --allow-long to run it anyway" } else { "" })]
    CeilingExceeded {
        what: &'static str,
        requested: usize,
        ceiling: usize,
        /// True when the refusal can be overridden by opting in to a long run.
        gated: bool,
    },

    #[error("no non-associative invertible loop of order {order} was found")]
    NotFound { order: usize },

    #[error(transparent)]
    Parse(#[from] crate::identity::ParseError),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CeilingExceeded { .. } => 3,
            _ => 1,
        }
    }
}
