//! Pfaffian sections in `P^6`, the cubic singular along them and the
//! tangent space of the space of skew matrices defining the same section.

use rand::Rng;

use crate::error::{MukaiError, PointsetError};
use crate::groebner::IdealHandle;
use crate::linalg::field::Scalar;
use crate::linalg::Matrix;
use crate::pointsets::PointConfiguration;
use crate::poly::{Monomial, Polynomial, Ring};
use crate::varieties::{pair_index, pairs, SkewMatrixOfForms};

/// Skew `size x size` matrix of random linear forms.
pub fn random_linear_skew<R: Rng + ?Sized>(ring: &Ring, size: usize, rng: &mut R) -> SkewMatrixOfForms {
    let f = ring.field();
    let forms: Vec<Polynomial> = pairs(size)
        .iter()
        .map(|_| {
            let c: Vec<Scalar> = (0..ring.nvars()).map(|_| f.random(rng)).collect();
            Polynomial::linear_form(ring, &c)
        })
        .collect();
    SkewMatrixOfForms::from_upper(ring, size, |i, j| forms[pair_index(size, i, j)].clone())
}

/// Ideal of the 4x4 pfaffians of a skew matrix of linear forms.
pub fn pfaffian_section(a: &SkewMatrixOfForms) -> Result<IdealHandle, MukaiError> {
    let linear = a
        .entries()
        .iter()
        .flatten()
        .all(|e| e.is_zero() || (e.is_homogeneous() && e.degree() == Some(1)));
    if !linear {
        return Err(MukaiError::Assertion {
            stage: "pfaffian_section".into(),
            detail: "entries must be linear forms".into(),
        });
    }
    Ok(IdealHandle::new(a.ring(), a.pfaffians(4)?)?)
}

/// Ordered triples of disjoint pairs covering `0..6`, with the sign of the
/// permutation `(i1 j1 i2 j2 i3 j3)`.
fn matchings() -> Vec<([(usize, usize); 3], bool)> {
    let mut out = Vec::new();
    let ps = pairs(6);
    for &p in &ps {
        for &q in &ps {
            let used = [p.0, p.1, q.0, q.1];
            if (0..4).any(|k| (0..k).any(|l| used[k] == used[l])) {
                continue;
            }
            let rest: Vec<usize> = (0..6).filter(|x| !used.contains(x)).collect();
            let r = (rest[0], rest[1]);
            let perm = [p.0, p.1, q.0, q.1, r.0, r.1];
            let inversions = (0..6).flat_map(|k| (k + 1..6).map(move |l| (k, l))).filter(|&(k, l)| perm[k] > perm[l]).count();
            out.push(([p, q, r], inversions % 2 == 1));
        }
    }
    out
}

/// Coefficient of `e_0 ∧ ... ∧ e_5` in `ω_a ∧ ω_b ∧ ω_c`, where
/// `ω_x = Σ_{i<j} x_ij e_i ∧ e_j`.
pub fn top_wedge(a: &SkewMatrixOfForms, b: &SkewMatrixOfForms, c: &SkewMatrixOfForms) -> Polynomial {
    assert!(a.size() == 6 && b.size() == 6 && c.size() == 6);
    let mut acc = a.ring().zero();
    for ([p, q, r], odd) in matchings() {
        let (x, y, z) = (a.entry(p.0, p.1), b.entry(q.0, q.1), c.entry(r.0, r.1));
        if x.is_zero() || y.is_zero() || z.is_zero() {
            continue;
        }
        let t = &(x * y) * z;
        acc = if odd { &acc - &t } else { &acc + &t };
    }
    acc
}

/// Matrix of `B ↦ B ∧ A ∧ A` on skew matrices of linear forms: columns
/// indexed by (pair, variable), rows by cubic monomials.
pub fn tangent_equations(a: &SkewMatrixOfForms) -> Matrix {
    assert_eq!(a.size(), 6);
    let ring = a.ring();
    let f = ring.field();
    let n = ring.nvars();
    // q_P = Σ_{matchings with first pair P} ± a_Q a_R
    let mut q = vec![ring.zero(); 15];
    for ([p, s, r], odd) in matchings() {
        let t = a.entry(s.0, s.1) * a.entry(r.0, r.1);
        let k = pair_index(6, p.0, p.1);
        q[k] = if odd { &q[k] - &t } else { &q[k] + &t };
    }
    let cubics = ring.num_monomials(3);
    let mut m = Matrix::zeros(f, cubics, 15 * n);
    for (k, qk) in q.iter().enumerate() {
        for v in 0..n {
            let col = qk.mul_term(&Monomial::var(v), 1).coefficient_vector(3);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, k * n + v, x);
            }
        }
    }
    m
}

/// Dimension of `{B : B ∧ A ∧ A = 0}` among skew matrices of linear forms.
pub fn tangent_space_z(a: &SkewMatrixOfForms) -> usize {
    let m = tangent_equations(a);
    m.ncols() - m.rank()
}

/// The skew matrix of linear forms with coordinates `v` in the basis used by
/// [`tangent_equations`].
pub fn skew_from_coordinates(ring: &Ring, v: &[Scalar]) -> SkewMatrixOfForms {
    let n = ring.nvars();
    SkewMatrixOfForms::from_upper(ring, 6, |i, j| {
        let k = pair_index(6, i, j);
        Polynomial::linear_form(ring, &v[k * n..(k + 1) * n])
    })
}

fn unique(field_kernel: Vec<Vec<Scalar>>, ring: &Ring) -> Result<Polynomial, MukaiError> {
    match field_kernel.as_slice() {
        [v] => Ok(Polynomial::from_coefficients(ring, 3, v).make_monic()),
        other => Err(MukaiError::UnexpectedKernel(other.len())),
    }
}

/// The cubic singular at all 14 points of a configuration in `P^6`.
pub fn unique_singular_cubic(gamma: &PointConfiguration) -> Result<Polynomial, MukaiError> {
    if gamma.n != 6 || gamma.len() != 14 {
        return Err(PointsetError::BadCardinality {
            expected: 14,
            got: if gamma.n == 6 { gamma.len() } else { 0 },
        }
        .into());
    }
    let ring = gamma.ring();
    let f = ring.field();
    let monos = ring.monomials_of_degree(3);
    let mut m = Matrix::zeros(f, 7 * gamma.len(), monos.len());
    for (c, mono) in monos.iter().enumerate() {
        let cubic = Polynomial::from_monomial(&ring, *mono, 1);
        for j in 0..7 {
            let d = cubic.partial_derivative(j);
            for (i, p) in gamma.points.iter().enumerate() {
                m.set(7 * i + j, c, d.evaluate(p));
            }
        }
    }
    unique(m.kernel_basis(), &ring)
}

/// Cubics all of whose partial derivatives lie in `ideal`; the same as
/// [`unique_singular_cubic`] for a reduced zero-dimensional ideal, without
/// needing its points to be rational.
pub fn singular_cubic_of_ideal(ideal: &IdealHandle) -> Result<Polynomial, MukaiError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let f = ring.field();
    let gb = ideal.groebner_basis();
    let monos = ring.monomials_of_degree(3);
    let quads = ring.num_monomials(2);
    let mut m = Matrix::zeros(f, n * quads, monos.len());
    for (c, mono) in monos.iter().enumerate() {
        let cubic = Polynomial::from_monomial(ring, *mono, 1);
        let partials: Vec<Polynomial> = (0..n).map(|j| cubic.partial_derivative(j)).collect();
        for (j, nf) in gb.normal_forms(&partials).iter().enumerate() {
            for (r, &x) in nf.coefficient_vector(2).iter().enumerate() {
                m.set(j * quads + r, c, x);
            }
        }
    }
    unique(m.kernel_basis(), ring)
}
