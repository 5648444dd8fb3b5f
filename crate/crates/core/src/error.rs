use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke a shape contract (vector length, arity, matrix size).
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "no rational unit vector found in the search window (cap {cap}); use approx mode or the solve-based witness"
    )]
    NoExactUnit { cap: u32 },

    #[error("{what} is not the square of a rational ({value}); use approx mode or multi_point_witness")]
    NotRationalSquare { what: &'static str, value: String },

    #[error("not a derivation of M8: {0}")]
    NotM8Derivation(String),

    /// A postcondition failed. Signals a bug (usually a sign convention).
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
