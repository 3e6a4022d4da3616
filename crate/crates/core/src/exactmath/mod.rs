//! Exact arithmetic: scalars over ℚ and GF(p), canonical subspaces, and
//! integer-matrix normal forms.

mod field;
mod intmat;
mod subspace;

pub use field::{Field, Scalar, MAX_MODULUS};
pub use intmat::{HermiteForm, IntMatrix, SmithForm};
pub use subspace::{kernel, rref, unit, Subspace, Vector};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MathError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^31")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}
