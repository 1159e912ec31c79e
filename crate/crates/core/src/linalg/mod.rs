pub mod field;
pub mod matrix;
pub mod quadratic;

pub use field::{FieldElement, PrimeField, Scalar, DEFAULT_PRIME, SMALL_PRIME};
pub use matrix::{Matrix, SparseEchelon};
pub use quadratic::{HyperbolicBasis, SymmetricForm};
