use std::collections::HashMap;

use crate::error::MukaiError;
use crate::linalg::field::Scalar;
use crate::linalg::{Matrix, SymmetricForm};
use crate::pointsets::QuadricSpace;
use crate::poly::{Monomial, Polynomial};

/// Symmetric `C` with `Σ_{a,b} C_ab q_a q_b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRelation {
    matrix: Matrix,
}

impl QuadraticRelation {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.matrix.nrows()
    }

    /// `Σ C_ab q_a q_b`, expanded.
    pub fn evaluate(&self, qs: &[Polynomial]) -> Polynomial {
        let ring = qs[0].ring();
        let mut acc = ring.zero();
        for (a, qa) in qs.iter().enumerate() {
            for (b, qb) in qs.iter().enumerate() {
                let c = self.matrix.get(a, b);
                if c != 0 {
                    acc = &acc + &(qa * qb).scale(c);
                }
            }
        }
        acc
    }

    pub fn holds(&self, qs: &[Polynomial]) -> bool {
        self.evaluate(qs).is_zero()
    }
}

/// Basis of the symmetric matrices `C` with `Σ C_ab q_a q_b = 0`, from the
/// linear dependencies among the products `q_a q_b`, `a <= b`.
pub fn quadratic_relations(qs: &[Polynomial]) -> Vec<QuadraticRelation> {
    let m = qs.len();
    if m == 0 {
        return Vec::new();
    }
    let field = qs[0].field();
    let prods: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(prods.len());
    for &(a, b) in &prods {
        let p = &qs[a] * &qs[b];
        let col = p
            .terms()
            .iter()
            .map(|&(mono, c)| {
                let next = index.len();
                (*index.entry(mono).or_insert(next), c)
            })
            .collect();
        columns.push(col);
    }
    let mut mat = Matrix::zeros(field, index.len(), prods.len());
    for (j, col) in columns.iter().enumerate() {
        for &(r, c) in col {
            mat.set(r, j, c);
        }
    }
    let half = field.inv(2);
    mat.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut c = Matrix::zeros(field, m, m);
            for (&(a, b), &x) in prods.iter().zip(&v) {
                if a == b {
                    c.set(a, a, x);
                } else {
                    let y = field.mul(x, half);
                    c.set(a, b, y);
                    c.set(b, a, y);
                }
            }
            QuadraticRelation { matrix: c }
        })
        .collect()
}

/// `C^{-1}` as a form on the quadric space, scaled so that its first
/// nonzero entry is `1`.
pub fn dual_form(rel: &QuadraticRelation) -> Result<SymmetricForm, MukaiError> {
    let inv = rel.matrix.inverse().ok_or(MukaiError::DegenerateRelation(rel.rank()))?;
    let f = inv.field();
    let n = inv.nrows();
    let lead = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| inv.get(i, j))
        .find(|&x| x != 0)
        .expect("inverse is nonzero");
    let s = f.inv(lead);
    let mut g = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, f.mul(inv.get(i, j), s));
        }
    }
    Ok(SymmetricForm::new(g)?)
}

/// The quadrics of a space that are singular at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianWitness {
    pub point: Vec<Scalar>,
    /// Coefficient vectors in the basis of the quadric space.
    pub basis: Vec<Vec<Scalar>>,
    /// Set once the span has been tested against a form.
    pub isotropic: Option<bool>,
}

impl LagrangianWitness {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn certify(&mut self, form: &SymmetricForm) -> bool {
        let ok = form.is_isotropic(&self.basis);
        self.isotropic = Some(ok);
        ok
    }

    pub fn quadrics(&self, space: &QuadricSpace) -> Vec<Polynomial> {
        self.basis.iter().map(|c| space.combination(c)).collect()
    }
}

/// Kernel of `[∂q_a/∂x_j (p)]`.
pub fn singular_quadrics_at(qs: &QuadricSpace, p: &[Scalar]) -> LagrangianWitness {
    let field = qs.ring.field();
    let n = qs.ring.nvars();
    let mut g = Matrix::zeros(field, n, qs.dim());
    for (a, q) in qs.basis.iter().enumerate() {
        for j in 0..n {
            g.set(j, a, q.partial_derivative(j).evaluate(p));
        }
    }
    LagrangianWitness {
        point: p.to_vec(),
        basis: g.kernel_basis(),
        isotropic: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;
    use crate::poly::{parse_polynomials, Ring};

    #[test]
    fn sum_of_squares_relation() {
        let f = PrimeField::default_small();
        let r = Ring::new(f, 3).unwrap();
        // (x0 x1)(x2^2) = (x0 x2)(x1 x2)
        let qs = parse_polynomials(&r, "x0*x1\nx2^2\nx0*x2\nx1*x2").unwrap();
        let rels = quadratic_relations(&qs);
        assert_eq!(rels.len(), 1);
        assert!(rels[0].holds(&qs));
        assert!(rels[0].matrix().is_symmetric());
        assert!(rels[0].is_nondegenerate());
    }

    #[test]
    fn dual_of_diagonal() {
        let f = PrimeField::default_small();
        let c = QuadraticRelation {
            matrix: Matrix::from_i64_rows(f, &[vec![2, 0, 0], vec![0, 5, 0], vec![0, 0, 7]]),
        };
        let r = dual_form(&c).unwrap();
        // diag(1/2, 1/5, 1/7) scaled by 2
        let two = f.from_i64(2);
        assert_eq!(r.gram().get(0, 0), 1);
        assert_eq!(r.gram().get(1, 1), f.mul(two, f.inv(5)));
        assert_eq!(r.gram().get(2, 2), f.mul(two, f.inv(7)));
        let id = QuadraticRelation {
            matrix: Matrix::identity(f, 4),
        };
        assert_eq!(dual_form(&id).unwrap(), SymmetricForm::identity(f, 4));
        let bad = QuadraticRelation {
            matrix: Matrix::zeros(f, 2, 2),
        };
        assert!(matches!(dual_form(&bad), Err(MukaiError::DegenerateRelation(0))));
    }

    #[test]
    fn singular_quadrics_in_the_plane() {
        let f = PrimeField::default_small();
        let ring = Ring::new(f, 3).unwrap();
        let space = QuadricSpace {
            basis: parse_polynomials(&ring, "x0*x1\nx0*x2").unwrap(),
            ring,
        };
        let w = singular_quadrics_at(&space, &[0, 0, 1]);
        assert_eq!(w.dim(), 1);
        assert_eq!(w.quadrics(&space)[0].make_monic(), space.basis[0]);
    }
}
