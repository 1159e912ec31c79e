pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod ring;

pub use monomial::Monomial;
pub use parse::{format_polynomials, parse_polynomial, parse_polynomials};
pub use polynomial::{LinearSubstitution, Polynomial};
pub use ring::{binomial, MonomialOrder, Ring};
