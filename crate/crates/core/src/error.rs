use alloc::string::String;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{name}` is already registered with a different kind")]
    VariableKind { name: String },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("divisor is not monic in `{var}`: {divisor}")]
    NotMonic { var: String, divisor: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported system: cannot triangularize equation {equation}")]
    UnsupportedSystem { equation: String },
    #[error("definition error: {0}")]
    Definition(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("binding error: {0}")]
    Binding(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("structure constants violate the Jacobi identity: {0}")]
    Jacobi(String),
    #[error("invalid submodule witness: {0}")]
    Divisibility(String),
}

pub type Result<T> = core::result::Result<T, Error>;
