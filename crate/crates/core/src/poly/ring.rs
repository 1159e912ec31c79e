use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};
use super::polynomial::Polynomial;
use crate::error::PolyError;
use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GRevLex,
    DegLex,
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    names: Vec<String>,
    field: PrimeField,
    order: MonomialOrder,
}

/// Graded polynomial ring `F_p[x0, ..., x{n-1}]`.
///
/// Cloning is a reference-count bump; equality first checks identity.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.names.join(","))
    }
}

impl Ring {
    pub fn new(field: PrimeField, nvars: usize) -> Result<Ring, PolyError> {
        let names = (0..nvars).map(|i| format!("x{i}")).collect();
        Ring::with_names(field, names, MonomialOrder::GRevLex)
    }

    pub fn with_names(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Result<Ring, PolyError> {
        if names.is_empty() {
            return Err(PolyError::NoVariables);
        }
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables {
                max: MAX_VARS,
                got: names.len(),
            });
        }
        Ok(Ring(Arc::new(RingData { names, field, order })))
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingData {
            names: self.0.names.clone(),
            field: self.0.field,
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.0.order {
            MonomialOrder::GRevLex => a.grevlex_cmp(b),
            MonomialOrder::DegLex => a.deglex_cmp(b),
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars());
        Polynomial::from_monomial(self, Monomial::var(i), 1)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, 1)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    /// Number of monomials of degree `d`.
    pub fn num_monomials(&self, d: u32) -> usize {
        binomial(self.nvars() + d as usize - 1, d as usize)
    }

    /// All monomials of degree `d`, largest first.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::with_capacity(self.num_monomials(d));
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        rec(0, d, &mut exps, &mut out);
        out.sort_unstable_by(|a, b| self.cmp(b, a));
        out
    }

    pub fn index_of_var(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Rows are points, columns the degree-`d` monomials in ring order.
    pub fn evaluation_matrix(&self, points: &[Vec<Scalar>], d: u32) -> Result<Matrix, PolyError> {
        let monos = self.monomials_of_degree(d);
        let field = self.field();
        let mut m = Matrix::zeros(field, points.len(), monos.len());
        for (r, pt) in points.iter().enumerate() {
            if pt.len() != self.nvars() {
                return Err(PolyError::SubstitutionShape {
                    expected: self.nvars(),
                    got: pt.len(),
                });
            }
            if pt.iter().all(|&x| x == 0) {
                return Err(PolyError::ZeroVector);
            }
            for (c, mono) in monos.iter().enumerate() {
                let mut v = 1;
                for (i, &x) in pt.iter().enumerate() {
                    let e = mono.exponent(i);
                    if e > 0 {
                        v = field.mul(v, field.pow(x, e as u64));
                    }
                }
                m.set(r, c, v);
            }
        }
        Ok(m)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        let r = Ring::new(PrimeField::default_large(), 6).unwrap();
        assert_eq!(r.monomials_of_degree(2).len(), 21);
        assert_eq!(r.num_monomials(4), 126);
        let m = r.monomials_of_degree(3);
        assert!(m.windows(2).all(|w| r.cmp(&w[0], &w[1]) == Ordering::Greater));
        assert_eq!(binomial(16, 2), 120);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn ring_limits() {
        let f = PrimeField::default_large();
        assert!(matches!(Ring::new(f, 0), Err(PolyError::NoVariables)));
        assert!(matches!(Ring::new(f, 17), Err(PolyError::TooManyVariables { .. })));
        assert_eq!(Ring::new(f, 3).unwrap(), Ring::new(f, 3).unwrap());
        assert_ne!(Ring::new(f, 3).unwrap(), Ring::new(PrimeField::default_small(), 3).unwrap());
    }

    #[test]
    fn evaluation_matrix_shapes() {
        let f = PrimeField::default_large();
        let r = Ring::new(f, 3).unwrap();
        let m = r.evaluation_matrix(&[vec![1, 2, 3]], 1).unwrap();
        assert_eq!(m.row(0), &[1, 2, 3]);
        assert_eq!(m.rank(), 1);
        assert_eq!(r.evaluation_matrix(&[vec![0, 0, 0]], 2), Err(PolyError::ZeroVector));
        let r6 = Ring::new(f, 6).unwrap();
        assert_eq!(r6.evaluation_matrix(&[vec![1; 6]], 2).unwrap().ncols(), binomial(7, 5));
        // rescaling a representative keeps the rank
        let pts = vec![vec![1, 2, 3], vec![4, 5, 7], vec![2, 0, 9]];
        let scaled = vec![vec![3, 6, 9], vec![4, 5, 7], vec![2, 0, 9]];
        assert_eq!(r.evaluation_matrix(&pts, 2).unwrap().rank(), r.evaluation_matrix(&scaled, 2).unwrap().rank());
    }
}
