use rand::Rng;

use crate::error::VarietyError;
use crate::groebner::IdealHandle;
use crate::linalg::Matrix;
use crate::poly::{LinearSubstitution, Ring};

/// A linear `P^n ⊂ P^N` and the restricted ideal.
#[derive(Clone, Debug)]
pub struct LinearSection {
    pub ideal: IdealHandle,
    /// `(N+1) x (n+1)` matrix; column `j` is the `j`-th spanning point.
    pub embedding: Matrix,
    pub substitution: LinearSubstitution,
}

const ATTEMPTS: usize = 5;

/// Restricts `ideal` to a random linear `P^n` (`n + 1` coordinates).
pub fn linear_section<R: Rng + ?Sized>(ideal: &IdealHandle, n: usize, rng: &mut R) -> Result<LinearSection, VarietyError> {
    let source = ideal.ring();
    let big = source.nvars();
    if n + 1 >= big {
        return Err(VarietyError::Unsupported(format!("section dimension {n} is not below P^{}", big - 1)));
    }
    let target = Ring::new(source.field(), n + 1)?;
    for _ in 0..ATTEMPTS {
        let m = Matrix::random(source.field(), big, n + 1, rng);
        if m.rank() < n + 1 {
            continue;
        }
        let s = LinearSubstitution::from_matrix(source, &target, &m)?;
        let restricted = ideal.substitute(&s)?;
        return Ok(LinearSection {
            ideal: restricted,
            embedding: m,
            substitution: s,
        });
    }
    Err(VarietyError::RankDeficient(ATTEMPTS))
}
