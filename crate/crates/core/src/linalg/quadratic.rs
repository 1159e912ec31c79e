//! Symmetric bilinear forms: orthogonal bases, hyperbolic (Witt) bases and
//! isotropy tests.

use rand::Rng;

use super::field::{PrimeField, Scalar};
use super::matrix::Matrix;
use crate::error::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    gram: Matrix,
}

/// A hyperbolic basis: `Q(e_i, f_j) = delta_ij`, both spans totally isotropic.
#[derive(Clone, Debug)]
pub struct HyperbolicBasis {
    pub e: Vec<Vec<Scalar>>,
    pub f: Vec<Vec<Scalar>>,
}

impl HyperbolicBasis {
    /// Columns `e_1..e_n, f_1..f_n`.
    pub fn matrix(&self, field: PrimeField) -> Matrix {
        let dim = self.e.first().map_or(0, |v| v.len());
        let cols: Vec<Vec<Scalar>> = self.e.iter().chain(self.f.iter()).cloned().collect();
        Matrix::from_columns(field, dim, &cols)
    }

    /// Same pair with the roles of the two Lagrangeans exchanged.
    pub fn swapped(&self) -> HyperbolicBasis {
        HyperbolicBasis {
            e: self.f.clone(),
            f: self.e.clone(),
        }
    }
}

impl SymmetricForm {
    pub fn new(gram: Matrix) -> Result<Self, LinalgError> {
        if !gram.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        Ok(SymmetricForm { gram })
    }

    pub fn identity(field: PrimeField, dim: usize) -> Self {
        SymmetricForm {
            gram: Matrix::identity(field, dim),
        }
    }

    /// The split form with Gram matrix `[[0, I], [I, 0]]`.
    pub fn standard_hyperbolic(field: PrimeField, n: usize) -> Self {
        let mut g = Matrix::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            g.set(i, n + i, 1);
            g.set(n + i, i, 1);
        }
        SymmetricForm { gram: g }
    }

    /// A random symmetric matrix; nondegenerate with high probability.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        let mut g = Matrix::zeros(field, dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = field.random(rng);
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        SymmetricForm { gram: g }
    }

    pub fn random_nondegenerate<R: Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        loop {
            let q = SymmetricForm::random(field, dim, rng);
            if q.is_nondegenerate() {
                return q;
            }
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn field(&self) -> PrimeField {
        self.gram.field()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram.mul_vec(v);
        let f = self.field();
        u.iter().zip(&gv).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `B^T Q B` for the basis matrix `B` whose columns are `vectors`.
    pub fn restricted_gram(&self, vectors: &[Vec<Scalar>]) -> Matrix {
        let b = Matrix::from_columns(self.field(), self.dim(), vectors);
        b.transpose().mul(&self.gram).mul(&b)
    }

    /// Randomized orthogonal basis; columns of the returned matrix.
    pub fn orthogonal_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Matrix, LinalgError> {
        if !self.is_nondegenerate() {
            return Err(LinalgError::DegenerateForm {
                rank: self.rank(),
                dim: self.dim(),
            });
        }
        let f = self.field();
        let n = self.dim();
        let mut space: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut basis = Vec::with_capacity(n);
        while !space.is_empty() {
            // a random vector of the current subspace; anisotropic vectors
            // exist there because the restriction stays nondegenerate
            let v = loop {
                let coeffs: Vec<Scalar> = space.iter().map(|_| f.random(rng)).collect();
                let v = combine(f, &space, &coeffs);
                if self.eval(&v, &v) != 0 {
                    break v;
                }
            };
            space = self.orthogonal_complement_within(&space, std::slice::from_ref(&v));
            basis.push(v);
        }
        Ok(Matrix::from_columns(f, n, &basis))
    }

    /// Vectors of `span(space)` orthogonal to every vector of `against`.
    fn orthogonal_complement_within(&self, space: &[Vec<Scalar>], against: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let f = self.field();
        // coefficients c with Q(sum c_k s_k, a) = 0 for all a
        let mut m = Matrix::zeros(f, against.len(), space.len());
        for (i, a) in against.iter().enumerate() {
            for (j, s) in space.iter().enumerate() {
                m.set(i, j, self.eval(s, a));
            }
        }
        m.kernel_basis().iter().map(|c| combine(f, space, c)).collect()
    }

    /// Witt decomposition of a split form into two complementary Lagrangeans.
    pub fn hyperbolic_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<HyperbolicBasis, LinalgError> {
        let dim = self.dim();
        if !self.is_nondegenerate() {
            return Err(LinalgError::DegenerateForm {
                rank: self.rank(),
                dim,
            });
        }
        if !dim.is_multiple_of(2) {
            return Err(LinalgError::OddDimension(dim));
        }
        let f = self.field();
        let two_inv = f.inv(2);
        let retries = 10 * dim * dim;
        let mut space: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        let mut es = Vec::new();
        let mut fs = Vec::new();
        while !space.is_empty() {
            let e = self
                .find_isotropic(&space, retries, rng)
                .ok_or(LinalgError::NotSplit { found: es.len() })?;
            // a partner g with Q(e, g) = 1, then kill Q(g, g)
            let g = space
                .iter()
                .find(|s| self.eval(&e, s) != 0)
                .cloned()
                .ok_or(LinalgError::NotSplit { found: es.len() })?;
            let g = scale(f, &g, f.inv(self.eval(&e, &g)));
            let shift = f.mul(self.eval(&g, &g), two_inv);
            let fvec: Vec<Scalar> = g.iter().zip(&e).map(|(&gi, &ei)| f.sub_mul(gi, shift, ei)).collect();
            space = self.orthogonal_complement_within(&space, &[e.clone(), fvec.clone()]);
            es.push(e);
            fs.push(fvec);
        }
        Ok(HyperbolicBasis { e: es, f: fs })
    }

    /// Isotropic vector of `span(space)`: restrict to a random plane and solve
    /// the binary quadratic there.
    fn find_isotropic<R: Rng + ?Sized>(&self, space: &[Vec<Scalar>], retries: usize, rng: &mut R) -> Option<Vec<Scalar>> {
        let f = self.field();
        for _ in 0..retries {
            let cu: Vec<Scalar> = space.iter().map(|_| f.random(rng)).collect();
            let cw: Vec<Scalar> = space.iter().map(|_| f.random(rng)).collect();
            let u = combine(f, space, &cu);
            let w = combine(f, space, &cw);
            if u.iter().all(|&x| x == 0) || w.iter().all(|&x| x == 0) {
                continue;
            }
            let a = self.eval(&w, &w);
            let b = self.eval(&u, &w);
            let c = self.eval(&u, &u);
            if c == 0 {
                return Some(u);
            }
            if a == 0 {
                return Some(w);
            }
            // Q(u + t w) = c + 2 b t + a t^2
            let disc = f.sub(f.mul(b, b), f.mul(a, c));
            let Some(root) = f.sqrt(disc) else { continue };
            let t = f.div(f.sub(root, b), a);
            let v: Vec<Scalar> = u.iter().zip(&w).map(|(&x, &y)| f.add(x, f.mul(t, y))).collect();
            if v.iter().any(|&x| x != 0) {
                debug_assert_eq!(self.eval(&v, &v), 0);
                return Some(v);
            }
        }
        None
    }

    /// `true` iff the span of `vectors` is totally isotropic.
    pub fn is_isotropic(&self, vectors: &[Vec<Scalar>]) -> bool {
        self.restricted_gram(vectors).is_zero()
    }
}

pub(crate) fn combine(f: PrimeField, vectors: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let n = vectors.first().map_or(0, |v| v.len());
    let mut out = vec![0; n];
    for (v, &c) in vectors.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

fn scale(f: PrimeField, v: &[Scalar], c: Scalar) -> Vec<Scalar> {
    v.iter().map(|&x| f.mul(x, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag_check(q: &SymmetricForm, b: &Matrix) -> bool {
        let g = b.transpose().mul(q.gram()).mul(b);
        (0..g.nrows()).all(|i| (0..g.ncols()).all(|j| (i == j) == (g.get(i, j) != 0)))
    }

    #[test]
    fn orthogonal_basis_of_identity() {
        let f = PrimeField::default_large();
        let q = SymmetricForm::identity(f, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = q.orthogonal_basis(&mut rng).unwrap();
        assert!(diag_check(&q, &b));
        assert_eq!(b.rank(), 4);
    }

    #[test]
    fn degenerate_form_rejected() {
        let f = PrimeField::default_large();
        let g = Matrix::from_i64_rows(f, &[vec![1, 1], vec![1, 1]]);
        let q = SymmetricForm::new(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(q.orthogonal_basis(&mut rng), Err(LinalgError::DegenerateForm { rank: 1, dim: 2 })));
    }

    #[test]
    fn orthogonal_bases_many_forms() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for dim in 3..=10 {
            for _ in 0..100 {
                let q = SymmetricForm::random_nondegenerate(f, dim, &mut rng);
                let b = q.orthogonal_basis(&mut rng).unwrap();
                assert!(diag_check(&q, &b));
            }
        }
    }

    #[test]
    fn two_seeds_give_distinct_bases() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = SymmetricForm::random_nondegenerate(f, 5, &mut rng);
        let b1 = q.orthogonal_basis(&mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b2 = q.orthogonal_basis(&mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(diag_check(&q, &b1) && diag_check(&q, &b2));
        // first basis vector differs even projectively
        let v1 = b1.column(0);
        let v2 = b2.column(0);
        assert_eq!(Matrix::from_columns(f, 5, &[v1, v2]).rank(), 2);
        let again = q.orthogonal_basis(&mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(again, b1);
    }

    fn check_hyperbolic(q: &SymmetricForm, h: &HyperbolicBasis) {
        let n = h.e.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(q.eval(&h.e[i], &h.e[j]), 0);
                assert_eq!(q.eval(&h.f[i], &h.f[j]), 0);
                assert_eq!(q.eval(&h.e[i], &h.f[j]), (i == j) as Scalar);
            }
        }
        assert!(q.is_isotropic(&h.e));
        assert!(q.is_isotropic(&h.f));
    }

    #[test]
    fn hyperbolic_standard_and_random_split() {
        let f = PrimeField::default_large();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = SymmetricForm::standard_hyperbolic(f, 5);
        let h = q.hyperbolic_basis(&mut rng).unwrap();
        check_hyperbolic(&q, &h);
        for _ in 0..30 {
            // conjugate the standard split form by a random change of basis
            let m = loop {
                let m = Matrix::random(f, 10, 10, &mut rng);
                if m.rank() == 10 {
                    break m;
                }
            };
            let g = m.transpose().mul(q.gram()).mul(&m);
            let qq = SymmetricForm::new(g).unwrap();
            let h = qq.hyperbolic_basis(&mut rng).unwrap();
            check_hyperbolic(&qq, &h);
        }
    }

    #[test]
    fn anisotropic_plane_is_not_split() {
        let f = PrimeField::default_small();
        let a = f.nonsquare();
        assert!(!f.is_square(a));
        let g = Matrix::from_rows(f, &[vec![1, 0], vec![0, f.neg(a)]]);
        let q = SymmetricForm::new(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(q.hyperbolic_basis(&mut rng), Err(LinalgError::NotSplit { found: 0 })));
    }

    #[test]
    fn isotropy_detects_anisotropic_vector() {
        let f = PrimeField::default_large();
        let q = SymmetricForm::standard_hyperbolic(f, 2);
        assert!(q.is_isotropic(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]));
        assert!(!q.is_isotropic(&[vec![1, 0, 1, 0]]));
    }
}
