//! Exact computational algebra over prime fields.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod groebner;
pub mod resolution;
pub mod varieties;
pub mod pointsets;
pub mod mukai;
pub mod cli;
