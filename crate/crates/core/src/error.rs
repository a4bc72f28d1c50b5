use thiserror::Error;

use crate::star_poly::{ParseError, Variable};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("symplectic involution requires an even dimension, got {0}")]
    OddSymplectic(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("no value assigned to {0}")]
    MissingVariable(Variable),

    #[error("value assigned to {var} is not {expected}")]
    WrongSymmetryType { var: Variable, expected: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("retry budget exhausted after {attempts} attempts (solution space dimension {solution_dim})")]
    RetryExhausted { attempts: usize, solution_dim: usize },

    #[error("subspace is not a Lie skew-ideal: {0}")]
    NotLieSkewIdeal(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
