//! Finite point configurations in `P^n`: apolar constructions, the
//! deletion rank test, quadrics through the points and frame normalization.

mod equivalence;
mod rational;

pub use equivalence::{normalize_to_frame, projectively_equivalent};
pub use rational::rational_points_exhaustive;

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::PointsetError;
use crate::groebner::IdealHandle;
use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::{Matrix, SymmetricForm};
use crate::poly::{binomial, Polynomial, Ring};

const RETRIES: usize = 50;

/// Ordered points of `P^n`, as homogeneous coordinate vectors of length `n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub prime: u64,
    pub n: usize,
    pub points: Vec<Vec<Scalar>>,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl PointConfiguration {
    pub fn new(field: PrimeField, points: Vec<Vec<Scalar>>) -> Result<Self, PointsetError> {
        let n = points.first().map(|p| p.len()).ok_or(PointsetError::BadCardinality { expected: 1, got: 0 })? - 1;
        for p in &points {
            if p.len() != n + 1 {
                return Err(PointsetError::Degenerate(format!("point of length {} in P^{n}", p.len())));
            }
            if p.iter().all(|&x| x == 0) {
                return Err(PointsetError::Poly(crate::error::PolyError::ZeroVector));
            }
        }
        let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
        Ok(PointConfiguration {
            prime: field.modulus(),
            n,
            points,
            labels,
            seed: None,
        })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.prime).expect("stored prime is valid")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.field(), self.n + 1).expect("ambient fits the ring")
    }

    /// Points as the columns of an `(n+1) x len` matrix.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.field(), self.n + 1, &self.points)
    }

    pub fn spans(&self) -> bool {
        self.matrix().rank() == self.n + 1
    }

    /// No two points are proportional.
    pub fn is_distinct(&self) -> bool {
        let seen: HashSet<Vec<Scalar>> = self.points.iter().map(|p| normalized(self.field(), p)).collect();
        seen.len() == self.points.len()
    }

    /// `g · C`: every point multiplied by the matrix `g`.
    pub fn transform(&self, g: &Matrix) -> PointConfiguration {
        let mut out = self.clone();
        out.points = self.points.iter().map(|p| g.mul_vec(p)).collect();
        out
    }

    /// Same points with the first nonzero coordinate scaled to `1`.
    pub fn normalized(&self) -> PointConfiguration {
        let mut out = self.clone();
        out.points = self.points.iter().map(|p| normalized(self.field(), p)).collect();
        out
    }

    pub fn without(&self, k: usize) -> PointConfiguration {
        let mut out = self.clone();
        out.points.remove(k);
        out.labels.remove(k);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("configuration serializes")
    }
}

/// Representative with first nonzero coordinate `1`.
pub fn normalized(field: PrimeField, p: &[Scalar]) -> Vec<Scalar> {
    match p.iter().find(|&&x| x != 0) {
        Some(&lead) => {
            let inv = field.inv(lead);
            p.iter().map(|&x| field.mul(x, inv)).collect()
        }
        None => p.to_vec(),
    }
}

/// Basis of the quadrics vanishing on a configuration.
#[derive(Clone, Debug)]
pub struct QuadricSpace {
    pub ring: Ring,
    pub basis: Vec<Polynomial>,
}

impl QuadricSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficient vectors over the degree-2 monomials.
    pub fn coefficient_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|q| q.coefficient_vector(2)).collect();
        Matrix::from_rows(self.ring.field(), &rows)
    }

    /// `sum c_a q_a`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Polynomial {
        let mut acc = self.ring.zero();
        for (q, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                acc = &acc + &q.scale(c);
            }
        }
        acc
    }
}

/// Union of two random orthogonal bases of `q`.
pub fn self_associated_from_apolar<R: Rng + ?Sized>(
    q: &SymmetricForm,
    rng: &mut R,
) -> Result<PointConfiguration, PointsetError> {
    let field = q.field();
    for _ in 0..RETRIES {
        let a = q.orthogonal_basis(rng)?;
        let b = q.orthogonal_basis(rng)?;
        let mut points = a.columns();
        points.extend(b.columns());
        let c = PointConfiguration::new(field, points)?;
        if c.is_distinct() && c.spans() {
            return Ok(c);
        }
    }
    Err(PointsetError::RetriesExhausted(RETRIES))
}

/// Rank of the degree-2 evaluation matrix.
pub fn conditions_on_quadrics(c: &PointConfiguration) -> usize {
    conditions_in_degree(c, 2)
}

pub fn conditions_in_degree(c: &PointConfiguration, d: u32) -> usize {
    if c.is_empty() {
        return 0;
    }
    c.ring().evaluation_matrix(&c.points, d).expect("validated points").rank()
}

/// `|C|` minus the number of conditions imposed on quadrics.
pub fn quadric_deficiency(c: &PointConfiguration) -> usize {
    c.len() - conditions_on_quadrics(c)
}

/// Every `2n+1` of the `2n+2` points impose as many conditions on quadrics
/// as the whole set.
pub fn is_self_associated(c: &PointConfiguration) -> Result<bool, PointsetError> {
    let expected = 2 * c.n + 2;
    if c.len() != expected {
        return Err(PointsetError::BadCardinality { expected, got: c.len() });
    }
    if !c.is_distinct() {
        return Err(PointsetError::Degenerate("repeated point".into()));
    }
    if !c.spans() {
        return Err(PointsetError::Degenerate("points do not span P^n".into()));
    }
    let ev = c.ring().evaluation_matrix(&c.points, 2)?;
    let full = ev.rank();
    let cols: Vec<usize> = (0..ev.ncols()).collect();
    Ok((0..c.len()).all(|k| {
        let rows: Vec<usize> = (0..c.len()).filter(|&r| r != k).collect();
        ev.submatrix(&rows, &cols).rank() == full
    }))
}

/// `(1, t, ..., t^n)` for each parameter.
pub fn points_on_rnc(field: PrimeField, n: usize, params: &[Scalar]) -> Result<PointConfiguration, PointsetError> {
    let mut seen = HashSet::new();
    for &t in params {
        if !seen.insert(t) {
            return Err(PointsetError::DuplicateParam(t));
        }
    }
    let points = params
        .iter()
        .map(|&t| crate::varieties::rational_normal_curve_point(field, n, Some(t)))
        .collect();
    PointConfiguration::new(field, points)
}

/// `count` uniformly random points of `P^n`.
pub fn random_configuration<R: Rng + ?Sized>(field: PrimeField, n: usize, count: usize, rng: &mut R) -> PointConfiguration {
    let points = (0..count)
        .map(|_| loop {
            let p: Vec<Scalar> = (0..=n).map(|_| field.random(rng)).collect();
            if p.iter().any(|&x| x != 0) {
                break p;
            }
        })
        .collect();
    PointConfiguration::new(field, points).expect("nonzero points")
}

/// All quadrics through the points.
pub fn quadrics_through(c: &PointConfiguration) -> QuadricSpace {
    forms_through(c, 2)
}

pub fn forms_through(c: &PointConfiguration, d: u32) -> QuadricSpace {
    let ring = c.ring();
    let basis = if c.is_empty() {
        ring.monomials_of_degree(d).into_iter().map(|m| Polynomial::from_monomial(&ring, m, 1)).collect()
    } else {
        let ev = ring.evaluation_matrix(&c.points, d).expect("validated points");
        ev.kernel_basis().iter().map(|v| Polynomial::from_coefficients(&ring, d, v)).collect()
    };
    QuadricSpace { ring, basis }
}

/// Saturated ideal of the points: all forms through them up to one degree
/// past the point where they impose independent conditions.
pub fn point_ideal(c: &PointConfiguration) -> Result<IdealHandle, PointsetError> {
    let ring = c.ring();
    let mut gens = Vec::new();
    let mut d = 1;
    let mut last = None;
    loop {
        gens.extend(forms_through(c, d).basis);
        if last.is_none() && conditions_in_degree(c, d) == c.len() {
            last = Some(d + 1);
        }
        if last == Some(d) {
            break;
        }
        d += 1;
        if binomial(c.n + d as usize, c.n) > 50_000 {
            return Err(PointsetError::TooLarge(format!("degree {d} forms in P^{}", c.n)));
        }
    }
    let ideal = IdealHandle::new(&ring, gens)?;
    let minimal = ideal.minimal_generators();
    Ok(IdealHandle::new(&ring, minimal)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_point_conditions() {
        let f = PrimeField::default_small();
        let c = PointConfiguration::new(f, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(conditions_on_quadrics(&c), 1);
        assert_eq!(quadrics_through(&c).dim(), 5);
    }

    #[test]
    fn apolar_pairs_and_random_sets() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = SymmetricForm::identity(f, 3);
        let c = self_associated_from_apolar(&q, &mut rng).unwrap();
        assert!(is_self_associated(&c).unwrap());
        assert_eq!(quadrics_through(&c).dim(), 1);
        let q = SymmetricForm::random_nondegenerate(f, 6, &mut rng);
        let c = self_associated_from_apolar(&q, &mut rng).unwrap();
        assert_eq!(conditions_on_quadrics(&c), 11);
        let r = random_configuration(f, 5, 12, &mut rng);
        assert_eq!(conditions_on_quadrics(&r), 12);
        assert!(!is_self_associated(&r).unwrap());
    }

    #[test]
    fn rnc_points() {
        let f = PrimeField::default_small();
        let c = points_on_rnc(f, 2, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(is_self_associated(&c).unwrap());
        assert_eq!(points_on_rnc(f, 2, &[0, 1, 1]), Err(PointsetError::DuplicateParam(1)));
        assert!(matches!(
            is_self_associated(&c.without(0)),
            Err(PointsetError::BadCardinality { expected: 6, got: 5 })
        ));
    }

    #[test]
    fn point_ideal_of_twelve_points() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = SymmetricForm::random_nondegenerate(f, 6, &mut rng);
        let c = self_associated_from_apolar(&q, &mut rng).unwrap();
        let i = point_ideal(&c).unwrap();
        assert_eq!(i.dimension_degree().unwrap(), (0, 12));
        assert_eq!(i.generators().len(), 10);
        for p in &c.points {
            assert!(i.generators().iter().all(|g| g.evaluate(p) == 0));
        }
    }
}
