use confalg_core::Error as CoreError;

/// Failures surfaced by the command-line front end, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
    #[error("solver limitation: {0}")]
    Solver(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Line { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Math(_) => EXIT_MATH,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }

    pub fn at_line(line: usize, err: CoreError) -> CliError {
        match CliError::from(err) {
            CliError::Input(message) => CliError::Line { line, message },
            other => other,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let text = err.to_string();
        match err {
            CoreError::UnsupportedSystem { .. } | CoreError::Unsupported(_) => CliError::Solver(text),
            CoreError::Jacobi(_) | CoreError::Divisibility(_) => CliError::Math(text),
            _ => CliError::Input(text),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {}", err))
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}
