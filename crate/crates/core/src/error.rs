use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a line needs (a, b) != (0, 0)")]
    DegenerateLine,
    #[error("variable index {index} out of range for a formula with {var_count} variables")]
    VariableOutOfRange { index: usize, var_count: usize },
    #[error("{what}: {size} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("red point {red} coincides with blue point {blue}; no line set separates them")]
    Inseparable { red: usize, blue: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("invalid hitting-set instance: {0}")]
    InvalidS2ths(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coordinate bit size {bits} exceeds the configured budget of {budget} bits")]
    CoordinateOverflow { bits: u64, budget: u64 },
}
