use thiserror::Error;

/// Errors raised by constructions and parsers.
///
/// Verification routines never return `Err` for a mathematical failure; they
/// return a report listing residuals instead. Errors are reserved for inputs
/// that cannot be processed at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("cocycle condition fails at ({a}, {b}, {c}) with residual {residual}")]
    Cocycle {
        a: usize,
        b: usize,
        c: usize,
        residual: String,
    },

    #[error("identity failure: {0}")]
    Identity(String),

    #[error("bracket does not close on the generators: {0}")]
    Closure(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
