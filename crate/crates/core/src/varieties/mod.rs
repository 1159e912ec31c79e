//! Constructors for the varieties: pfaffian loci, rational normal curves,
//! spinor and isotropic Grassmannians, and linear sections.

pub mod constructions;
pub mod interpolation;
pub mod section;
pub mod skew;

pub use constructions::*;
pub use interpolation::{default_samples, ideal_by_interpolation, Parametrization};
pub use section::{linear_section, LinearSection};
pub use skew::{pair_index, pairs, subsets, SkewMatrixOfForms};
