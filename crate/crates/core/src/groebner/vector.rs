//! Elements of graded free modules `R(-s_0) ⊕ ... ⊕ R(-s_{r-1})` and the
//! module orders used by the engine. An ideal is the rank-one case.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::linalg::field::{PrimeField, Scalar};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MTerm {
    pub mono: Monomial,
    pub comp: u32,
}

impl MTerm {
    pub fn new(mono: Monomial, comp: u32) -> Self {
        MTerm { mono, comp }
    }

    #[inline]
    pub fn divides(&self, other: &MTerm) -> bool {
        self.comp == other.comp && self.mono.divides(&other.mono)
    }

    #[inline]
    pub fn mul(&self, m: &Monomial) -> MTerm {
        MTerm {
            mono: self.mono.mul(m),
            comp: self.comp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position over term: `e_0 > e_1 > ...`, then the ring order.
    Pot,
    /// Shifted degree first, then the ring order, then position.
    Top,
    /// Induced order of a Schreyer frame: `m e_k` is compared through
    /// `m * M_k` in the ring order, then through the rank of `k`.
    Schreyer,
}

/// Sort key, larger key = larger term.
pub type TermKey = (u32, u32, u128, u32);

#[derive(Clone, Debug)]
pub struct FreeModule {
    ring: Ring,
    shifts: Vec<u32>,
    order: ModuleOrder,
    /// For [`ModuleOrder::Schreyer`]: per component the monomial `M_k` and
    /// the tie-breaking rank.
    frame: Option<Arc<Vec<(Monomial, u32)>>>,
}

impl FreeModule {
    pub fn new(ring: &Ring, shifts: Vec<u32>, order: ModuleOrder) -> Self {
        assert!(order != ModuleOrder::Schreyer, "use FreeModule::schreyer");
        FreeModule {
            ring: ring.clone(),
            shifts,
            order,
            frame: None,
        }
    }

    /// Module with a Schreyer order; `shifts[k]` must equal `deg M_k`.
    pub fn schreyer(ring: &Ring, frame: Vec<(Monomial, u32)>) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts: frame.iter().map(|(m, _)| m.degree()).collect(),
            order: ModuleOrder::Schreyer,
            frame: Some(Arc::new(frame)),
        }
    }

    /// `(M_k, rank_k)` per component of a Schreyer module.
    pub fn frame(&self) -> Option<&[(Monomial, u32)]> {
        self.frame.as_deref().map(|v| v.as_slice())
    }

    /// The ring itself as a rank-one module.
    pub fn ideal(ring: &Ring) -> Self {
        FreeModule::new(ring, vec![0], ModuleOrder::Pot)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    #[inline]
    pub fn degree(&self, t: &MTerm) -> u32 {
        t.mono.degree() + self.shifts[t.comp as usize]
    }

    #[inline]
    fn mono_key(&self, m: &Monomial) -> u128 {
        match self.ring.order() {
            MonomialOrder::GRevLex => !m.packed(),
            MonomialOrder::DegLex => m.packed().swap_bytes(),
        }
    }

    #[inline]
    pub fn key(&self, t: &MTerm) -> TermKey {
        let d = t.mono.degree();
        let mk = self.mono_key(&t.mono);
        match self.order {
            ModuleOrder::Pot => (u32::MAX - t.comp, d, mk, 0),
            ModuleOrder::Top => (d + self.shifts[t.comp as usize], d, mk, u32::MAX - t.comp),
            ModuleOrder::Schreyer => {
                let (m, rank) = self.frame.as_ref().unwrap()[t.comp as usize];
                let total = t.mono.mul(&m);
                (total.degree(), 0, self.mono_key(&total), rank)
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Sparse module element; terms strictly decreasing, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    pub(crate) terms: Vec<(MTerm, Scalar)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(module: &FreeModule, mut terms: Vec<(MTerm, Scalar)>) -> Self {
        let f = module.field();
        terms.sort_unstable_by(|a, b| module.cmp(&b.0, &a.0));
        let mut out: Vec<(MTerm, Scalar)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == t => last.1 = f.add(last.1, c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Vector { terms: out }
    }

    /// Builds `sum_k polys[k] e_k`.
    pub fn from_polynomials(module: &FreeModule, polys: &[Polynomial]) -> Self {
        let terms = polys
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().iter().map(move |(m, c)| (MTerm::new(*m, k as u32), *c)))
            .collect();
        Vector::from_terms(module, terms)
    }

    pub fn from_polynomial(module: &FreeModule, p: &Polynomial) -> Self {
        Vector::from_polynomials(module, std::slice::from_ref(p))
    }

    pub fn terms(&self) -> &[(MTerm, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<MTerm> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Scalar {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn make_monic(&mut self, f: PrimeField) {
        if let Some(&(_, c)) = self.terms.first() {
            if c != 1 {
                let inv = f.inv(c);
                for t in &mut self.terms {
                    t.1 = f.mul(t.1, inv);
                }
            }
        }
    }

    /// Component polynomials `[p_0, ..., p_{r-1}]`.
    pub fn to_polynomials(&self, module: &FreeModule) -> Vec<Polynomial> {
        let ring = module.ring();
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); module.rank()];
        for (t, c) in &self.terms {
            parts[t.comp as usize].push((t.mono, *c));
        }
        parts.into_iter().map(|p| Polynomial::from_terms(ring, p)).collect()
    }

    pub fn to_polynomial(&self, module: &FreeModule) -> Polynomial {
        let terms = self.terms.iter().map(|(t, c)| (t.mono, *c)).collect();
        Polynomial::from_terms(module.ring(), terms)
    }

    /// Shifted degree, assuming homogeneity.
    pub fn degree(&self, module: &FreeModule) -> Option<u32> {
        self.terms.first().map(|(t, _)| module.degree(t))
    }

    pub fn is_homogeneous(&self, module: &FreeModule) -> bool {
        match self.terms.first() {
            None => true,
            Some((t, _)) => {
                let d = module.degree(t);
                self.terms.iter().all(|(s, _)| module.degree(s) == d)
            }
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: Scalar, f: PrimeField) -> Vector {
        Vector {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, module: &FreeModule, c: Scalar, other: &Vector) -> Vector {
        let f = module.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match module.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, f.mul(c, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| (t.0, f.mul(c, t.1))));
        out.retain(|t| t.1 != 0);
        Vector { terms: out }
    }
}
