use super::engine::{self, GbOptions};
use super::vector::{FreeModule, MTerm, ModuleOrder, Vector};
use crate::poly::{Monomial, Polynomial, Ring};

/// Relations among `m` module elements: each column `s` satisfies
/// `sum_k s[k] * element_k = 0`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    ring: Ring,
    /// Degrees of the related elements.
    pub target_degrees: Vec<u32>,
    /// Degrees of the minimal syzygies.
    pub source_degrees: Vec<u32>,
    pub columns: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Checks `sum_k s[k] * elements[k] = 0` exactly for every column.
    pub fn annihilates(&self, module: &FreeModule, elements: &[Vector]) -> bool {
        let parts: Vec<Vec<Polynomial>> = elements.iter().map(|e| e.to_polynomials(module)).collect();
        self.columns.iter().all(|col| {
            (0..module.rank()).all(|c| {
                let mut acc = self.ring.zero();
                for (k, s) in col.iter().enumerate() {
                    acc = &acc + &(s * &parts[k][c]);
                }
                acc.is_zero()
            })
        })
    }
}

/// Minimal syzygies of homogeneous elements of `module`, from a
/// position-over-term basis of the graph module `{(v_k, e_k)}`.
pub fn syzygies(module: &FreeModule, elements: &[Vector]) -> SyzygyModule {
    let ring = module.ring().clone();
    let r = module.rank() as u32;
    let degs: Vec<u32> = elements
        .iter()
        .map(|v| v.degree(module).expect("zero element has no degree"))
        .collect();
    let mut shifts = module.shifts().to_vec();
    shifts.extend(&degs);
    let graph = FreeModule::new(&ring, shifts, ModuleOrder::Pot);
    let input: Vec<Vector> = elements
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut terms = v.terms.clone();
            terms.push((MTerm::new(Monomial::ONE, r + k as u32), 1));
            Vector::from_terms(&graph, terms)
        })
        .collect();
    let gb = engine::groebner(&graph, &input, GbOptions::default());
    let rel_module = FreeModule::new(&ring, degs.clone(), ModuleOrder::Pot);
    let rels: Vec<Vector> = gb
        .iter()
        .filter(|v| v.terms[0].0.comp >= r)
        .map(|v| Vector {
            terms: v
                .terms
                .iter()
                .map(|(t, c)| (MTerm::new(t.mono, t.comp - r), *c))
                .collect(),
        })
        .collect();
    let keep = engine::minimal_generators(&rel_module, &rels);
    let mut columns = Vec::new();
    let mut source_degrees = Vec::new();
    for k in keep {
        source_degrees.push(rels[k].degree(&rel_module).unwrap());
        columns.push(rels[k].to_polynomials(&rel_module));
    }
    SyzygyModule {
        ring,
        target_degrees: degs,
        source_degrees,
        columns,
    }
}

/// Syzygies of a list of homogeneous polynomials.
pub fn polynomial_syzygies(ring: &Ring, polys: &[Polynomial]) -> SyzygyModule {
    let module = FreeModule::ideal(ring);
    let vecs: Vec<Vector> = polys.iter().map(|p| Vector::from_polynomial(&module, p)).collect();
    syzygies(&module, &vecs)
}
