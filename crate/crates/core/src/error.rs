use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("polynomial is not weighted homogeneous of degree 1: term {term} has degree {degree}")]
    NotHomogeneous { term: String, degree: Rational },

    #[error("singularity is not isolated: Jacobian quotient persists in degree {degree}")]
    NonIsolated { degree: Rational },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("exponent matrix is singular")]
    SingularMatrix,

    #[error("not an invertible polynomial: {0}")]
    NotInvertible(String),

    #[error("integrability failure: {0}")]
    Integrability(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
