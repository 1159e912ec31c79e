use rand::Rng;

use super::interpolation::{ideal_by_interpolation, Parametrization};
use super::skew::{pairs, subsets, SkewMatrixOfForms};
use crate::error::VarietyError;
use crate::groebner::IdealHandle;
use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::Matrix;
use crate::poly::Ring;

/// Ring of Plücker coordinates `x_{pair(i,j)}` on `P(∧² k^n)`.
pub fn plucker_ring(field: PrimeField, n: usize) -> Ring {
    Ring::new(field, n * (n - 1) / 2).expect("at most 16 Plücker coordinates")
}

/// `G(2, n)` cut out by the 4x4 pfaffians of the generic skew matrix.
pub fn grassmannian_g2n_ideal(field: PrimeField, n: usize) -> Result<IdealHandle, VarietyError> {
    if !(4..=6).contains(&n) {
        return Err(VarietyError::Unsupported(format!("G(2,{n}) needs 4 <= n <= 6")));
    }
    let ring = plucker_ring(field, n);
    let a = SkewMatrixOfForms::generic(&ring, n);
    Ok(IdealHandle::new(&ring, a.pfaffians(4)?)?)
}

/// The secant variety `σ_m(G(2,n))`: all `(2m+4)`-pfaffians.
pub fn secant_pfaffian_ideal(field: PrimeField, n: usize, m: usize) -> Result<IdealHandle, VarietyError> {
    let k = 2 * m + 4;
    if k > n {
        return Err(VarietyError::TooLarge { size: k, n });
    }
    if n > 6 {
        return Err(VarietyError::Unsupported(format!("n = {n} exceeds 16 variables")));
    }
    let ring = plucker_ring(field, n);
    let a = SkewMatrixOfForms::generic(&ring, n);
    Ok(IdealHandle::new(&ring, a.pfaffians(k)?)?)
}

/// Plücker point of the row space of a `k x n` matrix (maximal minors,
/// column subsets in lex order).
pub fn plucker_point(m: &Matrix) -> Vec<Scalar> {
    let k = m.nrows();
    subsets(m.ncols(), k)
        .iter()
        .map(|cols| {
            let rows: Vec<usize> = (0..k).collect();
            m.submatrix(&rows, cols).determinant()
        })
        .collect()
}

/// Rational normal curve in `P^n`: 2x2 minors of the Hankel matrix.
pub fn rational_normal_curve_ideal(field: PrimeField, n: usize) -> Result<IdealHandle, VarietyError> {
    if n < 2 {
        return Err(VarietyError::Unsupported(format!("rational normal curve needs n >= 2, got {n}")));
    }
    let ring = Ring::new(field, n + 1)?;
    let x = ring.vars();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(&(&x[i] * &x[j + 1]) - &(&x[i + 1] * &x[j]));
        }
    }
    Ok(IdealHandle::new(&ring, gens)?)
}

/// `t -> (1, t, ..., t^n)` and, for the point at infinity, `(0, ..., 0, 1)`.
pub fn rational_normal_curve_point(field: PrimeField, n: usize, t: Option<Scalar>) -> Vec<Scalar> {
    match t {
        Some(t) => (0..=n).map(|k| field.pow(t, k as u64)).collect(),
        None => (0..=n).map(|k| (k == n) as Scalar).collect(),
    }
}

/// Labels of the 16 spinor coordinates: the empty set, the ten pairs, the
/// five 4-subsets of `{1..5}` (lex order within each group).
pub fn spinor_coordinate_labels() -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    out.extend(subsets(5, 2).into_iter().map(|s| s.iter().map(|i| i + 1).collect()));
    out.extend(subsets(5, 4).into_iter().map(|s| s.iter().map(|i| i + 1).collect()));
    out
}

/// Spinor coordinates of the graph of a skew `5 x 5` matrix: `1`, the
/// entries `a_ij`, and the 4x4 principal pfaffians, the one on the
/// complement of `i` carrying the sign `(-1)^(i+1)`.
pub fn lagrangian_spinor_chart(a: &Matrix) -> Vec<Scalar> {
    assert!(a.nrows() == 5 && a.ncols() == 5);
    let f = a.field();
    let pf4 = |s: &[usize]| -> Scalar {
        let x = |i: usize, j: usize| a.get(s[i], s[j]);
        let t = f.sub(f.mul(x(0, 1), x(2, 3)), f.mul(x(0, 2), x(1, 3)));
        f.add(t, f.mul(x(0, 3), x(1, 2)))
    };
    let mut out = vec![1];
    for (i, j) in pairs(5) {
        out.push(a.get(i, j));
    }
    for s in subsets(5, 4) {
        let missing = (0..5).find(|i| !s.contains(i)).unwrap() + 1;
        let v = pf4(&s);
        out.push(if missing % 2 == 1 { v } else { f.neg(v) });
    }
    out
}

/// Skew `5 x 5` matrix from its ten upper entries in pair order.
pub fn skew5_from_params(field: PrimeField, t: &[Scalar]) -> Matrix {
    let mut a = Matrix::zeros(field, 5, 5);
    for (k, (i, j)) in pairs(5).into_iter().enumerate() {
        a.set(i, j, t[k]);
        a.set(j, i, field.neg(t[k]));
    }
    a
}

pub fn spinor_parametrization(field: PrimeField) -> Parametrization {
    Parametrization::new(field, 10, 16, move |t| lagrangian_spinor_chart(&skew5_from_params(field, t)))
}

/// `LG(5,10) ⊂ P^15` from its 10 interpolated quadrics.
pub fn lagrangian_grassmannian_ideal<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> IdealHandle {
    let ring = Ring::new(field, 16).unwrap();
    let quadrics = ideal_by_interpolation(&spinor_parametrization(field), &ring, 2, None, rng);
    IdealHandle::new(&ring, quadrics).unwrap()
}

/// The isotropic Grassmannian of 3-planes for `ω = Σ e_i ∧ e_{i+3}` in the
/// 14-dimensional linear span of its Plücker image.
#[derive(Clone, Debug)]
pub struct SymplecticGrassmannian {
    pub ideal: IdealHandle,
    /// Chart from symmetric `3x3` matrices into `P^13`.
    pub chart: Parametrization,
    /// Coefficient vectors of the linear forms on `P(∧³k⁶)` (20 coordinates,
    /// 3-subsets in lex order) cutting out the span.
    pub linear_forms: Vec<Vec<Scalar>>,
    /// The 14 Plücker coordinates kept as coordinates of `P^13`.
    pub kept_coordinates: Vec<usize>,
}

/// Row space of `(I_3 | S)` for the symmetric matrix with upper entries `t`.
pub fn isotropic_graph(field: PrimeField, t: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(field, 3, 6);
    let mut k = 0;
    for i in 0..3 {
        m.set(i, i, 1);
        for j in i..3 {
            m.set(i, 3 + j, t[k]);
            m.set(j, 3 + i, t[k]);
            k += 1;
        }
    }
    m
}

/// Builds `Gω(3,6) ⊂ P^13` by interpolation. The 20 Plücker coordinates do
/// not fit a polynomial ring here, so the linear span is found from the
/// evaluation matrix directly and the pivot coordinates are dropped.
pub fn symplectic_grassmannian<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> SymplecticGrassmannian {
    let full = Parametrization::new(field, 6, 20, move |t| plucker_point(&isotropic_graph(field, t)));
    let points: Vec<Vec<Scalar>> = (0..4 * 21).map(|_| full.sample(rng)).collect();
    let forms = Matrix::from_rows(field, &points).kernel_basis();
    let (_, pivots) = Matrix::from_rows(field, &forms).rref();
    let kept: Vec<usize> = (0..20).filter(|c| !pivots.contains(c)).collect();
    let mut proj = Matrix::zeros(field, kept.len(), 20);
    for (r, &c) in kept.iter().enumerate() {
        proj.set(r, c, 1);
    }
    let chart = full.project(&proj);
    let ring = Ring::new(field, kept.len()).unwrap();
    let quadrics = ideal_by_interpolation(&chart, &ring, 2, None, rng);
    SymplecticGrassmannian {
        ideal: IdealHandle::new(&ring, quadrics).unwrap(),
        chart,
        linear_forms: forms,
        kept_coordinates: kept,
    }
}
