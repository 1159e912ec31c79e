//! Sections of the kernel bundle of a `2 x 7` matrix of linear forms on
//! `P^5`, its Chern classes and the moduli dimension counts.

use rand::Rng;
use serde::Serialize;

use crate::error::MukaiError;
use crate::groebner::IdealHandle;
use crate::linalg::field::Scalar;
use crate::linalg::Matrix;
use crate::poly::{binomial, Polynomial, Ring};

/// `rows x cols` matrix of random linear forms.
pub fn random_linear_map<R: Rng + ?Sized>(ring: &Ring, rows: usize, cols: usize, rng: &mut R) -> Vec<Vec<Polynomial>> {
    let f = ring.field();
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    let c: Vec<Scalar> = (0..ring.nvars()).map(|_| f.random(rng)).collect();
                    Polynomial::linear_form(ring, &c)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchsbaumRimReport {
    pub unknowns: usize,
    pub equations: usize,
    pub section_space_dim: usize,
    pub syzygies_hold: bool,
    pub dimension: i64,
    pub degree: i64,
    /// Conditions imposed on quadrics: the Hilbert function of the
    /// saturated ideal in degree 2.
    pub conditions: usize,
    pub deficiency: i64,
}

#[derive(Clone, Debug)]
pub struct BuchsbaumRimSection {
    pub report: BuchsbaumRimReport,
    pub quadrics: Vec<Polynomial>,
    pub ideal: IdealHandle,
}

/// Matrix of `q ↦ f · q` on 7-tuples of quadrics.
fn kernel_equations(f: &[Vec<Polynomial>], ring: &Ring) -> Matrix {
    let monos = ring.monomials_of_degree(2);
    let cubics = ring.num_monomials(3);
    let cols = f[0].len();
    let mut m = Matrix::zeros(ring.field(), f.len() * cubics, cols * monos.len());
    for j in 0..cols {
        for (k, mono) in monos.iter().enumerate() {
            for (i, row) in f.iter().enumerate() {
                let image = row[j].mul_term(mono, 1).coefficient_vector(3);
                for (r, &x) in image.iter().enumerate() {
                    m.set(i * cubics + r, j * monos.len() + k, x);
                }
            }
        }
    }
    m
}

/// The quadric 7-tuples killed by `f`, one random member and its zero
/// scheme.
pub fn buchsbaum_rim_sections<R: Rng + ?Sized>(f: &[Vec<Polynomial>], rng: &mut R) -> Result<BuchsbaumRimSection, MukaiError> {
    let ring = f[0][0].ring().clone();
    let field = ring.field();
    let cols = f[0].len();
    let nquad = ring.num_monomials(2);
    let m = kernel_equations(f, &ring);
    let kernel = m.kernel_basis();
    let expected = cols * nquad - f.len() * ring.num_monomials(3);
    if kernel.len() != expected {
        return Err(MukaiError::DegenerateMap(kernel.len()));
    }
    let mut coeffs = vec![0; cols * nquad];
    for v in &kernel {
        let c = field.random(rng);
        for (x, &y) in coeffs.iter_mut().zip(v) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    let quadrics: Vec<Polynomial> = coeffs
        .chunks(nquad)
        .map(|c| Polynomial::from_coefficients(&ring, 2, c))
        .collect();
    let syzygies_hold = f.iter().all(|row| {
        let mut acc = ring.zero();
        for (a, q) in row.iter().zip(&quadrics) {
            acc = &acc + &(a * q);
        }
        acc.is_zero()
    });
    let ideal = IdealHandle::new(&ring, quadrics.clone())?.saturate_irrelevant(rng)?;
    let (dimension, degree) = ideal.dimension_degree()?;
    let conditions = ideal.hilbert_function(2);
    Ok(BuchsbaumRimSection {
        report: BuchsbaumRimReport {
            unknowns: m.ncols(),
            equations: m.nrows(),
            section_space_dim: kernel.len(),
            syzygies_hold,
            dimension,
            degree,
            conditions,
            deficiency: degree - conditions as i64,
        },
        quadrics,
        ideal,
    })
}

/// Chern classes `c_1..c_5` as multiples of powers of the hyperplane class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChernVector {
    pub c: [i64; 5],
}

/// `(1 + 2H)^7 / (1 + 3H)^2` mod `H^6`, by long division.
pub fn chern_bf() -> ChernVector {
    let num: Vec<i64> = (0..6).map(|k| binomial(7, k) as i64 * 2i64.pow(k as u32)).collect();
    let mut q = [0i64; 6];
    for k in 0..6 {
        // (1 + 6H + 9H^2) q = num
        let mut v = num[k];
        if k >= 1 {
            v -= 6 * q[k - 1];
        }
        if k >= 2 {
            v -= 9 * q[k - 2];
        }
        q[k] = v;
    }
    debug_assert_eq!(q[0], 1);
    ChernVector {
        c: [q[1], q[2], q[3], q[4], q[5]],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliCounts {
    pub n: usize,
    /// Dimension of the ambient projective space of the variety.
    pub ambient: usize,
    pub group: String,
    pub group_dim: usize,
    /// `(n+1)(N-n) - dim G`.
    pub dim_section_moduli: usize,
    /// `binom(n+1, 2)`.
    pub dim_a_n: usize,
    pub verdict: String,
}

/// Dimension of the space of `P^n`-sections of the homogeneous variety
/// modulo its group, against the dimension of the moduli of s.a. sets.
pub fn moduli_counts(n: usize) -> Result<ModuliCounts, MukaiError> {
    let (ambient, group, group_dim) = match n {
        5 => (15, "SO(10)", binomial(10, 2)),
        6 => (14, "SL(6)", 35),
        7 => (13, "Sp(6)", binomial(7, 2)),
        _ => return Err(MukaiError::UnsupportedN(n)),
    };
    let dim_section_moduli = (n + 1) * (ambient - n) - group_dim;
    let dim_a_n = binomial(n + 1, 2);
    let verdict = if dim_section_moduli == dim_a_n {
        "equal".to_string()
    } else {
        format!("deficit {}", dim_a_n as i64 - dim_section_moduli as i64)
    };
    Ok(ModuliCounts {
        n,
        ambient,
        group: group.into(),
        group_dim,
        dim_section_moduli,
        dim_a_n,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chern_against_series_product() {
        // (1+3H)^{-2} = Σ (k+1)(-3)^k H^k
        let inv: Vec<i64> = (0..6).map(|k| (k as i64 + 1) * (-3i64).pow(k)).collect();
        assert_eq!(inv, vec![1, -6, 27, -108, 405, -1458]);
        let num: Vec<i64> = (0..6).map(|k| binomial(7, k) as i64 * (1 << k)).collect();
        let conv: Vec<i64> = (0..6).map(|k| (0..=k).map(|i| num[i] * inv[k - i]).sum()).collect();
        assert_eq!(conv[0], 1);
        assert_eq!(chern_bf().c.to_vec(), conv[1..].to_vec());
        assert_eq!(chern_bf().c, [8, 27, 46, 41, 12]);
    }

    #[test]
    fn moduli() {
        let got: Vec<(usize, usize, String)> = (5..=7)
            .map(|n| {
                let m = moduli_counts(n).unwrap();
                (m.dim_section_moduli, m.dim_a_n, m.verdict)
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (15, 15, "equal".to_string()),
                (21, 21, "equal".to_string()),
                (27, 28, "deficit 1".to_string())
            ]
        );
        assert!(matches!(moduli_counts(4), Err(MukaiError::UnsupportedN(4))));
    }
}
