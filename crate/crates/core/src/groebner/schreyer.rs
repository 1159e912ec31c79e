//! Schreyer frames: syzygies of a Groebner basis from its reduced S-pairs,
//! which again form a Groebner basis for the induced order. Iterating gives a
//! (usually non-minimal) free resolution.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::engine::{self, GbOptions};
use super::vector::{FreeModule, MTerm, Vector};
use crate::poly::{Monomial, Polynomial, Ring};

/// One differential of a Schreyer resolution: `columns` live in `target`,
/// one per component of the next module.
#[derive(Clone, Debug)]
pub struct FrameLevel {
    pub target: FreeModule,
    pub columns: Vec<Vector>,
}

/// Induced module whose components are the elements of `level`.
fn induced_module(level: &FrameLevel) -> FreeModule {
    let ring = level.target.ring();
    let prev: Vec<(Monomial, u32)> = match level.target.frame() {
        Some(f) => f.to_vec(),
        None => (0..level.target.rank()).map(|c| (Monomial::ONE, c as u32)).collect(),
    };
    let mut order: Vec<usize> = (0..level.columns.len()).collect();
    let lead_comp = |k: usize| level.columns[k].terms[0].0.comp as usize;
    order.sort_by_key(|&k| (prev[lead_comp(k)].1, k));
    let mut rank = vec![0u32; order.len()];
    for (pos, &k) in order.iter().enumerate() {
        rank[k] = pos as u32;
    }
    let frame = level
        .columns
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let lead = v.terms[0].0;
            (lead.mono.mul(&prev[lead.comp as usize].0), rank[k])
        })
        .collect();
    let module = FreeModule::schreyer(ring, frame);
    debug_assert!(level
        .columns
        .iter()
        .enumerate()
        .all(|(k, v)| v.degree(&level.target) == Some(module.shifts()[k])));
    module
}

/// Syzygies of the Groebner basis `level.columns`, as a Groebner basis of
/// the induced module.
fn next_level(level: &FrameLevel) -> FrameLevel {
    let source = induced_module(level);
    let target = &level.target;
    let basis = &level.columns;
    let f = target.field();
    let mut by_comp: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, v) in basis.iter().enumerate() {
        by_comp.entry(v.terms[0].0.comp).or_default().push(k);
    }
    // (l, k, q): q e_l - (lcm / a_k) e_k with minimal q among k < l
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for group in by_comp.values() {
        for (pos, &l) in group.iter().enumerate() {
            let al = basis[l].terms[0].0.mono;
            let mut quots: Vec<(Monomial, usize)> = group[..pos]
                .iter()
                .map(|&k| (basis[k].terms[0].0.mono.lcm(&al).checked_div(&al).unwrap(), k))
                .collect();
            quots.sort_by_key(|(q, k)| (q.degree(), *k));
            let mut kept: Vec<Monomial> = Vec::new();
            for (q, k) in quots {
                if kept.iter().any(|m| m.divides(&q)) {
                    continue;
                }
                kept.push(q);
                pairs.push((l, k, q));
            }
        }
    }
    let spairs: Vec<Vector> = pairs
        .iter()
        .map(|&(l, k, q)| {
            let ak = basis[k].terms[0].0.mono;
            let r = q.mul(&basis[l].terms[0].0.mono).checked_div(&ak).unwrap();
            basis[l].mul_term(&q, 1, f).add_scaled(target, f.neg(1), &basis[k].mul_term(&r, 1, f))
        })
        .collect();
    let divided = engine::divide(target, basis, &spairs);
    let columns: Vec<Vector> = pairs
        .par_iter()
        .zip(divided.par_iter())
        .map(|(&(l, k, q), (rem, quo))| {
            debug_assert!(rem.is_zero(), "S-pair of a Groebner basis must reduce to zero");
            let ak = basis[k].terms[0].0.mono;
            let r = q.mul(&basis[l].terms[0].0.mono).checked_div(&ak).unwrap();
            let mut terms = vec![(MTerm::new(q, l as u32), 1), (MTerm::new(r, k as u32), f.neg(1))];
            terms.extend(quo.iter().map(|&(g, m, c)| (MTerm::new(m, g as u32), f.neg(c))));
            let v = Vector::from_terms(&source, terms);
            debug_assert_eq!(v.terms[0].0, MTerm::new(q, l as u32));
            v
        })
        .collect();
    FrameLevel { target: source, columns }
}

/// Within each lead component, lead monomials ascending in lex order; then
/// the leads of the next level avoid one more variable, which bounds the
/// length by the number of variables.
fn sort_for_next(level: &mut FrameLevel) {
    let n = level.target.ring().nvars();
    level.columns.sort_by_cached_key(|v| {
        let t = v.terms[0].0;
        (t.comp, t.mono.exponents(n))
    });
}

/// Schreyer resolution of `R/I`: the first level holds a reduced Groebner
/// basis of `I`, each further level the syzygies of the previous one.
pub fn schreyer_resolution(ring: &Ring, gens: &[Polynomial], max_levels: usize) -> Vec<FrameLevel> {
    let module = FreeModule::ideal(ring);
    let input: Vec<Vector> = gens.iter().map(|g| Vector::from_polynomial(&module, g)).collect();
    let gb = engine::groebner(&module, &input, GbOptions::default());
    let mut levels = Vec::new();
    if gb.is_empty() {
        return levels;
    }
    let mut first = FrameLevel {
        target: module,
        columns: gb,
    };
    sort_for_next(&mut first);
    levels.push(first);
    while levels.len() < max_levels {
        let mut next = next_level(levels.last().unwrap());
        if next.columns.is_empty() {
            break;
        }
        sort_for_next(&mut next);
        levels.push(next);
    }
    levels
}
