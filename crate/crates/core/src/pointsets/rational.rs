use super::PointConfiguration;
use crate::error::PointsetError;
use crate::groebner::IdealHandle;
use crate::linalg::field::Scalar;

const MAX_PRIME: u64 = 10_000;
const MAX_AMBIENT: usize = 3;
const MAX_POINTS: u64 = 20_000_000;

/// All `F_p`-rational points of a zero-dimensional `V(I)`, by enumerating
/// `P^n(F_p)`. Fails with `Incomplete` when fewer points than the degree are
/// found.
pub fn rational_points_exhaustive(ideal: &IdealHandle) -> Result<PointConfiguration, PointsetError> {
    let ring = ideal.ring();
    let field = ring.field();
    let p = field.modulus();
    let n = ring.nvars() - 1;
    let total = (0..=n as u32).map(|k| p.pow(k)).sum::<u64>();
    if p > MAX_PRIME || n > MAX_AMBIENT || total > MAX_POINTS {
        return Err(PointsetError::TooLarge(format!("P^{n} over F_{p}")));
    }
    let (dim, degree) = ideal.dimension_degree()?;
    if dim != 0 {
        return Err(PointsetError::Degenerate(format!("V(I) has dimension {dim}")));
    }
    let gens = ideal.generators();
    let mut found = Vec::new();
    // points with first nonzero coordinate at position `lead`
    for lead in 0..=n {
        let free = n - lead;
        let count = p.pow(free as u32);
        for code in 0..count {
            let mut pt = vec![0 as Scalar; n + 1];
            pt[lead] = 1;
            let mut c = code;
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = (c % p) as Scalar;
                c /= p;
            }
            if gens.iter().all(|g| g.evaluate(&pt) == 0) {
                found.push(pt);
            }
        }
    }
    if (found.len() as i64) < degree {
        return Err(PointsetError::Incomplete {
            found,
            degree: degree as usize,
        });
    }
    PointConfiguration::new(field, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::poly::{parse_polynomials, Ring};

    #[test]
    fn split_and_non_split() {
        let f = PrimeField::new(101).unwrap();
        let r = Ring::new(f, 3).unwrap();
        // the four points (1 : ±1 : ±1)
        let i = IdealHandle::new(&r, parse_polynomials(&r, "x0^2 - x1^2\nx2^2 - x0^2").unwrap()).unwrap();
        let c = rational_points_exhaustive(&i).unwrap();
        assert_eq!(c.len(), 4);
        // 2 is not a square mod 101
        let j = IdealHandle::new(&r, parse_polynomials(&r, "x0^2 - 2*x1^2\nx2^2 - x0^2").unwrap()).unwrap();
        assert!(matches!(rational_points_exhaustive(&j), Err(PointsetError::Incomplete { degree: 4, .. })));
    }
}
