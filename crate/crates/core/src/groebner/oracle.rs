//! Hilbert function by plain linear algebra on Macaulay matrices, with no
//! Groebner basis involved. Used to cross-check the engine.

use std::collections::HashMap;

use crate::linalg::matrix::SparseEchelon;
use crate::poly::{Monomial, Polynomial, Ring};

/// Rank of the span of all degree-`d` multiples `m * g` of the generators.
pub fn ideal_dimension_in_degree(ring: &Ring, gens: &[Polynomial], d: u32) -> usize {
    let monos = ring.monomials_of_degree(d);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut ech = SparseEchelon::new(ring.field(), monos.len());
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - dg) {
            let row: Vec<(usize, u32)> = g.terms().iter().map(|(t, c)| (index[&t.mul(&m)], *c)).collect();
            ech.insert(&row);
            if ech.rank() == monos.len() {
                return ech.rank();
            }
        }
    }
    ech.rank()
}

/// `dim (R/I)_d` from the Macaulay matrix.
pub fn hilbert_function_by_rank(ring: &Ring, gens: &[Polynomial], d: u32) -> usize {
    ring.num_monomials(d) - ideal_dimension_in_degree(ring, gens, d)
}
