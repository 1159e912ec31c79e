use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::PolyError;
use crate::linalg::field::{PrimeField, Scalar};
use crate::linalg::matrix::Matrix;

pub type Term = (Monomial, Scalar);

/// Sparse polynomial; terms strictly decreasing in the ring order, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Polynomial::from_monomial(ring, Monomial::ONE, c)
    }

    pub fn from_monomial(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Self {
        let f = ring.field();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusted constructor: terms must already be sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(ring: &Ring, coeffs: &[Scalar]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(i), c))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Form of degree `d` with the given coefficients on `ring.monomials_of_degree(d)`.
    pub fn from_coefficients(ring: &Ring, d: u32, coeffs: &[Scalar]) -> Self {
        let monos = ring.monomials_of_degree(d);
        assert_eq!(monos.len(), coeffs.len());
        let terms = monos.into_iter().zip(coeffs.iter().copied()).filter(|t| t.1 != 0).collect();
        Polynomial::from_sorted_terms(ring, terms)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn lead_term(&self) -> Option<Term> {
        self.terms.first().copied()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Scalar {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map_or(0, |i| self.terms[i].1)
    }

    /// Coefficients on `ring.monomials_of_degree(d)`.
    pub fn coefficient_vector(&self, d: u32) -> Vec<Scalar> {
        self.ring
            .monomials_of_degree(d)
            .iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring != other.ring {
            Err(PolyError::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.field().neg(1)))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other` by merging.
    fn combine(&self, other: &Polynomial, c: Scalar) -> Polynomial {
        let f = self.field();
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, c, &Monomial::ONE, f);
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled_shift(&self, c: Scalar, m: &Monomial, other: &Polynomial) -> Polynomial {
        let f = self.field();
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, c, m, f);
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        if other.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_term(&m, c);
        }
        if self.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_term(&m, c);
        }
        let p = f.modulus();
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = (*e + *ca as u64 * *cb as u64) % p;
            }
        }
        let terms = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (m, c as Scalar)).collect();
        let mut out = Polynomial {
            ring: self.ring.clone(),
            terms,
        };
        out.terms.sort_unstable_by(|a, b| self.ring.cmp(&b.0, &a.0));
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: Scalar) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        // multiplying by a monomial preserves the order
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), f.mul(*tc, c))).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: Scalar) -> Polynomial {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(1))
    }

    pub fn make_monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field().inv(self.lead_coeff()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let f = self.field();
        let n = self.ring.nvars();
        assert_eq!(point.len(), n);
        // per-variable power tables up to the needed exponent
        let mut powers: Vec<Vec<Scalar>> = point.iter().map(|&x| vec![1, x]).collect();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = f.mul(*pw.last().unwrap(), point[i]);
                    pw.push(next);
                }
                v = f.mul(v, pw[e]);
            }
            acc = f.add(acc, v);
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let f = self.field();
        let xi = Monomial::var(i);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(i);
                if e == 0 {
                    return None;
                }
                let coeff = f.mul(*c, f.from_u64(e as u64));
                (coeff != 0).then(|| (m.checked_div(&xi).unwrap(), coeff))
            })
            .collect();
        // dividing by x_i does not preserve the order in general
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Degree-`d` part.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.0.degree() == d).copied().collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn substitute(&self, s: &LinearSubstitution) -> Result<Polynomial, PolyError> {
        if self.ring != s.source {
            return Err(PolyError::RingMismatch);
        }
        Ok(s.apply(self))
    }

    /// Same coefficients in a ring with identical variables and a different
    /// order (re-sorts the terms).
    pub fn to_ring(&self, ring: &Ring) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field(), self.ring.field());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Divides every monomial by the largest power of `x_i` dividing them all.
    pub fn divide_out_var(&self, i: usize) -> Polynomial {
        let k = self.terms.iter().map(|t| t.0.exponent(i)).min().unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        let d = Monomial::var_pow(i, k);
        let terms = self.terms.iter().map(|(m, c)| (m.checked_div(&d).unwrap(), *c)).collect();
        Polynomial::from_terms(&self.ring, terms)
    }
}

/// `a + c * m * b` for sorted term lists.
pub(crate) fn merge_scaled(ring: &Ring, a: &[Term], b: &[Term], c: Scalar, m: &Monomial, f: PrimeField) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match ring.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, f.mul(c, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.add(a[i].1, f.mul(c, b[j].1));
                if v != 0 {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.mul(m), f.mul(c, t.1)));
    }
    if c == 0 {
        out.retain(|t| t.1 != 0);
    }
    out
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = field.to_signed(*c);
            let (sign, mag) = if v < 0 { ("-", -v) } else { ("+", v) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.format(self.ring.names()))?;
            } else {
                write!(f, "{mag}*{}", m.format(self.ring.names()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Ring map `x_i -> sum_j m[i][j] y_j` from `source` to `target`.
#[derive(Clone, Debug)]
pub struct LinearSubstitution {
    source: Ring,
    target: Ring,
    images: Vec<Vec<Scalar>>,
}

impl LinearSubstitution {
    /// `images[i]` holds the coefficients of the image of `x_i` in the target
    /// variables.
    pub fn new(source: &Ring, target: &Ring, images: Vec<Vec<Scalar>>) -> Result<Self, PolyError> {
        if source.field() != target.field() {
            return Err(PolyError::RingMismatch);
        }
        if images.len() != source.nvars() {
            return Err(PolyError::SubstitutionShape {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|r| r.len() != target.nvars()) {
            return Err(PolyError::SubstitutionShape {
                expected: target.nvars(),
                got: bad.len(),
            });
        }
        Ok(LinearSubstitution {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// From a `source_vars x target_vars` matrix.
    pub fn from_matrix(source: &Ring, target: &Ring, m: &Matrix) -> Result<Self, PolyError> {
        let images = (0..m.nrows()).map(|r| m.row(r).to_vec()).collect();
        LinearSubstitution::new(source, target, images)
    }

    pub fn identity(ring: &Ring) -> Self {
        let n = ring.nvars();
        let images = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as Scalar).collect())
            .collect();
        LinearSubstitution {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(self.source.field(), &self.images)
    }

    pub fn image_of_var(&self, i: usize) -> Polynomial {
        Polynomial::linear_form(&self.target, &self.images[i])
    }

    /// Pushes a target point to the source space: `x_i = sum_j m_ij y_j`.
    pub fn push_point(&self, y: &[Scalar]) -> Vec<Scalar> {
        self.matrix().mul_vec(y)
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let n = self.source.nvars();
        let mut powers: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| vec![self.target.one(), self.image_of_var(i)])
            .collect();
        let field = self.target.field();
        let p = field.modulus();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in f.terms() {
            let mut prod = Polynomial::constant(&self.target, *c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_unchecked(&pw[1]);
                    pw.push(next);
                }
                prod = prod.mul_unchecked(&pw[e]);
            }
            for (tm, tc) in prod.terms {
                let e = acc.entry(tm).or_insert(0);
                *e = (*e + tc as u64) % p;
            }
        }
        let terms = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (m, c as Scalar)).collect();
        Polynomial::from_terms(&self.target, terms)
    }

    /// Composition `other ∘ self` as substitutions (apply `self` first).
    pub fn then(&self, other: &LinearSubstitution) -> Result<LinearSubstitution, PolyError> {
        if self.target != other.source {
            return Err(PolyError::RingMismatch);
        }
        let m = self.matrix().mul(&other.matrix());
        LinearSubstitution::from_matrix(&self.source, &other.target, &m)
    }
}
