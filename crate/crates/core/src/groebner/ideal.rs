use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};

use super::engine::{self, GbOptions};
use super::hilbert::HilbertSeries;
use super::vector::{FreeModule, ModuleOrder, Vector};
use crate::error::{IdealError, PolyError};
use crate::linalg::field::Scalar;
use crate::poly::{LinearSubstitution, Monomial, Polynomial, Ring};

/// Reduced Groebner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    module: FreeModule,
    vectors: Vec<Vector>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub(crate) fn compute(ring: &Ring, gens: &[Polynomial], opts: GbOptions) -> Self {
        let module = FreeModule::ideal(ring);
        let input: Vec<Vector> = gens.iter().map(|g| Vector::from_polynomial(&module, g)).collect();
        let vectors = engine::groebner(&module, &input, opts);
        let elements = vectors.iter().map(|v| v.to_polynomial(&module)).collect();
        GroebnerBasis {
            module,
            vectors,
            elements,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.vectors.iter().map(|v| v.terms[0].0.mono).collect()
    }

    /// Remainder of division; homogeneous components are reduced separately.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if f.ring() != self.ring() {
            return Err(PolyError::RingMismatch);
        }
        Ok(self.normal_forms(std::slice::from_ref(f)).pop().unwrap())
    }

    pub fn normal_forms(&self, fs: &[Polynomial]) -> Vec<Polynomial> {
        let ring = self.ring();
        let mut targets = Vec::new();
        let mut owner = Vec::new();
        for (k, f) in fs.iter().enumerate() {
            let mut degrees: Vec<u32> = f.terms().iter().map(|t| t.0.degree()).collect();
            degrees.sort_unstable();
            degrees.dedup();
            for d in degrees {
                targets.push(Vector::from_polynomial(&self.module, &f.homogeneous_part(d)));
                owner.push(k);
            }
        }
        let reduced = engine::normal_forms(&self.module, &self.vectors, &targets);
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); fs.len()];
        for (k, v) in owner.into_iter().zip(reduced) {
            parts[k].extend(v.terms.iter().map(|(t, c)| (t.mono, *c)));
        }
        parts.into_iter().map(|p| Polynomial::from_terms(ring, p)).collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_forms(std::slice::from_ref(f))[0].is_zero()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(&self.lead_monomials(), self.ring().nvars())
    }
}

/// Homogeneous ideal with a lazily computed, shared Groebner basis.
#[derive(Debug)]
pub struct IdealHandle {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        IdealHandle {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl IdealHandle {
    /// Zero generators are dropped; the rest are sorted by degree, then by
    /// lead term.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self, IdealError> {
        let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for (k, g) in gens.iter().enumerate() {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch.into());
            }
            if !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(k));
            }
        }
        gens.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| ring.cmp(&b.lead_monomial().unwrap(), &a.lead_monomial().unwrap()))
        });
        Ok(IdealHandle {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        IdealHandle::new(ring, Vec::new()).unwrap()
    }

    /// The irrelevant ideal `(x_0, ..., x_{n-1})`.
    pub fn irrelevant(ring: &Ring) -> Self {
        IdealHandle::new(ring, ring.vars()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Self {
        IdealHandle::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| Arc::new(GroebnerBasis::compute(&self.ring, &self.gens, GbOptions::default())))
    }

    /// Groebner basis up to degree `d` (complete in degrees `<= d`).
    pub fn truncated_groebner_basis(&self, d: u32) -> GroebnerBasis {
        if let Some(g) = self.gb.get() {
            return (**g).clone();
        }
        GroebnerBasis::compute(
            &self.ring,
            &self.gens,
            GbOptions {
                max_degree: Some(d),
            },
        )
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        self.groebner_basis().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool, PolyError> {
        if other.ring != self.ring {
            return Err(PolyError::RingMismatch);
        }
        let gb = self.groebner_basis();
        Ok(gb.normal_forms(&other.gens).iter().all(|f| f.is_zero()))
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool, PolyError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.groebner_basis().hilbert_series()
    }

    /// `dim_k (R/I)_d`.
    pub fn hilbert_function(&self, d: u32) -> usize {
        let gb = match self.gb.get() {
            Some(g) => g.clone(),
            None => Arc::new(self.truncated_groebner_basis(d)),
        };
        let leads: Vec<Monomial> = gb.lead_monomials().into_iter().filter(|m| m.degree() <= d).collect();
        HilbertSeries::of_monomial_ideal(&leads, self.ring.nvars()).hilbert_function(d) as usize
    }

    /// Projective dimension (`-1` for the empty scheme) and degree.
    pub fn dimension_degree(&self) -> Result<(i64, i64), IdealError> {
        let hs = self.hilbert_series();
        if hs.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        Ok((hs.krull_dimension() as i64 - 1, hs.multiplicity()))
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealHandle::new(&self.ring, gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    /// Generated by all `k`-fold products of generators.
    pub fn power(&self, k: u32) -> IdealHandle {
        assert!(k >= 1);
        let n = self.gens.len();
        let mut gens = Vec::new();
        // multisets of size k via non-decreasing index sequences
        fn rec(start: usize, left: u32, acc: &Polynomial, gens: &[Polynomial], n: usize, out: &mut Vec<Polynomial>) {
            if left == 0 {
                out.push(acc.clone());
                return;
            }
            for i in start..n {
                rec(i, left - 1, &(acc * &gens[i]), gens, n, out);
            }
        }
        rec(0, k, &self.ring.one(), &self.gens, n, &mut gens);
        IdealHandle::new(&self.ring, gens).unwrap()
    }

    /// Image under a linear substitution.
    pub fn substitute(&self, s: &LinearSubstitution) -> Result<IdealHandle, IdealError> {
        let gens = self.gens.iter().map(|g| g.substitute(s)).collect::<Result<Vec<_>, _>>()?;
        IdealHandle::new(s.target(), gens)
    }

    /// `I : f`, read off from the syzygies of `(g_1, ..., g_k, f)`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<IdealHandle, IdealError> {
        if f.ring() != &self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        if !f.is_homogeneous() {
            return Err(IdealError::NotHomogeneous(0));
        }
        if f.is_zero() {
            return Ok(IdealHandle::unit(&self.ring));
        }
        let df = f.degree().unwrap();
        let module = FreeModule::new(&self.ring, vec![0, df], ModuleOrder::Pot);
        let mut input: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polynomial(&module, g)).collect();
        input.push(Vector::from_polynomials(&module, &[f.clone(), self.ring.one()]));
        let gb = engine::groebner(&module, &input, GbOptions::default());
        let gens = gb
            .iter()
            .filter(|v| v.terms[0].0.comp == 1)
            .map(|v| v.to_polynomials(&module).pop().unwrap())
            .collect();
        IdealHandle::new(&self.ring, gens)
    }

    /// `I : J = ∩_j (I : g_j)`.
    pub fn quotient(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        let mut acc: Option<IdealHandle> = None;
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| IdealHandle::unit(&self.ring)))
    }

    /// `I ∩ J` from the module generated by `(f, f)` and `(g, 0)`.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        if other.ring != self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        let module = FreeModule::new(&self.ring, vec![0, 0], ModuleOrder::Pot);
        let zero = self.ring.zero();
        let mut input: Vec<Vector> = self
            .gens
            .iter()
            .map(|f| Vector::from_polynomials(&module, &[f.clone(), f.clone()]))
            .collect();
        input.extend(other.gens.iter().map(|g| Vector::from_polynomials(&module, &[g.clone(), zero.clone()])));
        let gb = engine::groebner(&module, &input, GbOptions::default());
        let gens = gb
            .iter()
            .filter(|v| v.terms[0].0.comp == 1)
            .map(|v| v.to_polynomials(&module).pop().unwrap())
            .collect();
        IdealHandle::new(&self.ring, gens)
    }

    /// `I : J^∞` by iterated quotients. The irrelevant ideal is routed to
    /// [`IdealHandle::saturate_irrelevant`] with a fixed seed.
    pub fn saturate(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        if other.is_irrelevant() {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5a7);
            return self.saturate_irrelevant(&mut rng);
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// True when the ideal is `(x_0, ..., x_{n-1})`.
    pub fn is_irrelevant(&self) -> bool {
        let (h, k) = self.hilbert_series().reduced();
        h == vec![1] && k == self.ring.nvars()
    }

    /// `I : m^∞`: after a random change of the last coordinate, a grevlex
    /// basis divided by the largest power of the last variable generates
    /// `I : x_{n-1}^∞`, which equals the saturation for a general coordinate.
    pub fn saturate_irrelevant<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<IdealHandle, IdealError> {
        let ring = &self.ring;
        let n = ring.nvars();
        let field = ring.field();
        let grevlex = ring.with_order(crate::poly::MonomialOrder::GRevLex);
        let last: Vec<Scalar> = (0..n)
            .map(|i| if i + 1 == n { field.random_nonzero(rng) } else { field.random(rng) })
            .collect();
        let ident = |i: usize| -> Vec<Scalar> { (0..n).map(|j| (i == j) as Scalar).collect() };
        let mut fwd: Vec<Vec<Scalar>> = (0..n - 1).map(ident).collect();
        fwd.push(last.clone());
        // inverse: x_{n-1} -> (x_{n-1} - sum_{i<n-1} c_i x_i) / c_{n-1}
        let inv_c = field.inv(last[n - 1]);
        let mut back: Vec<Vec<Scalar>> = (0..n - 1).map(ident).collect();
        back.push(
            (0..n)
                .map(|j| {
                    if j + 1 == n {
                        inv_c
                    } else {
                        field.mul(field.neg(last[j]), inv_c)
                    }
                })
                .collect(),
        );
        let s_fwd = LinearSubstitution::new(ring, &grevlex, fwd)?;
        let s_back = LinearSubstitution::new(&grevlex, ring, back)?;
        let moved = self.substitute(&s_fwd)?;
        let gb = moved.groebner_basis();
        let divided: Vec<Polynomial> = gb.elements().iter().map(|g| g.divide_out_var(n - 1)).collect();
        IdealHandle::new(&grevlex, divided)?.substitute(&s_back)
    }

    /// Minimal homogeneous generators, chosen among the given generators.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let module = FreeModule::ideal(&self.ring);
        let vecs: Vec<Vector> = self.gens.iter().map(|g| Vector::from_polynomial(&module, g)).collect();
        engine::minimal_generators(&module, &vecs)
            .into_iter()
            .map(|k| self.gens[k].clone())
            .collect()
    }

    /// Vector space basis of `I_d`: `u - NF(u)` for the lead monomials `u`
    /// of degree `d`.
    pub fn basis_in_degree(&self, d: u32) -> Vec<Polynomial> {
        let gb = self.groebner_basis();
        let leads = gb.lead_monomials();
        let monos: Vec<Polynomial> = self
            .ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .map(|m| Polynomial::from_monomial(&self.ring, m, 1))
            .collect();
        let nfs = gb.normal_forms(&monos);
        monos.iter().zip(nfs).map(|(u, r)| u - &r).collect()
    }
}
