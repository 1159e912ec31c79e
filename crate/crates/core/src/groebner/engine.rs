//! Homogeneous Buchberger engine.
//!
//! Pairs are selected by sugar (for homogeneous input, the degree of the lcm)
//! and pruned with the Gebauer-Moller criteria. All S-polynomials of one
//! degree are reduced together: each reducer multiple `m * g` is expanded
//! once and rows are reduced against it in a dense accumulator.

use std::collections::HashMap;

use super::vector::{FreeModule, MTerm, Vector};
use crate::linalg::field::Scalar;
use crate::poly::Monomial;

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: MTerm,
    deg: u32,
}

/// Lead terms with support masks for quick divisibility rejection.
#[derive(Default, Clone)]
pub(crate) struct LeadIndex {
    by_comp: Vec<Vec<(Monomial, u32, usize)>>,
}

impl LeadIndex {
    pub(crate) fn insert(&mut self, t: MTerm, idx: usize) {
        let c = t.comp as usize;
        if self.by_comp.len() <= c {
            self.by_comp.resize_with(c + 1, Vec::new);
        }
        self.by_comp[c].push((t.mono, t.mono.support_mask(), idx));
    }

    pub(crate) fn find_divisor(&self, t: &MTerm) -> Option<usize> {
        let list = self.by_comp.get(t.comp as usize)?;
        let mask = t.mono.support_mask();
        list.iter()
            .find(|(m, mm, _)| mm & !mask == 0 && m.divides(&t.mono))
            .map(|e| e.2)
    }
}

/// Rows of one degree, indexed by column (a module term).
struct Batch<'a> {
    module: &'a FreeModule,
    col_of: HashMap<MTerm, u32>,
    cols: Vec<MTerm>,
    rows: Vec<Vec<(u32, Scalar)>>,
    /// reducer row for a column, if any
    pivot: Vec<Option<u32>>,
    multiples: HashMap<(usize, Monomial), u32>,
}

impl<'a> Batch<'a> {
    fn new(module: &'a FreeModule) -> Self {
        Batch {
            module,
            col_of: HashMap::new(),
            cols: Vec::new(),
            rows: Vec::new(),
            pivot: Vec::new(),
            multiples: HashMap::new(),
        }
    }

    fn column(&mut self, t: MTerm) -> u32 {
        if let Some(&c) = self.col_of.get(&t) {
            return c;
        }
        let c = self.cols.len() as u32;
        self.cols.push(t);
        self.pivot.push(None);
        self.col_of.insert(t, c);
        c
    }

    fn add_vector(&mut self, v: &Vector) -> u32 {
        let row = v.terms.iter().map(|(t, c)| (self.column(*t), *c)).collect();
        self.rows.push(row);
        (self.rows.len() - 1) as u32
    }

    fn add_multiple(&mut self, basis: &[Vector], g: usize, m: Monomial) -> u32 {
        if let Some(&r) = self.multiples.get(&(g, m)) {
            return r;
        }
        let row = basis[g].terms.iter().map(|(t, c)| (self.column(t.mul(&m)), *c)).collect();
        self.rows.push(row);
        let r = (self.rows.len() - 1) as u32;
        self.multiples.insert((g, m), r);
        r
    }

    /// Adds reducer multiples for every column divisible by a basis lead.
    /// Rows listed in `candidates` may serve as reducers for their own lead.
    fn preprocess(&mut self, basis: &[Vector], leads: &LeadIndex, candidates: &[u32], extra: &[u32]) -> Vec<u32> {
        let mut rest = Vec::new();
        for &r in candidates {
            let lead = self.rows[r as usize][0].0 as usize;
            if self.pivot[lead].is_none() && self.rows[r as usize][0].1 == 1 {
                self.pivot[lead] = Some(r);
            } else {
                rest.push(r);
            }
        }
        rest.extend_from_slice(extra);
        let mut next = 0;
        while next < self.cols.len() {
            let c = next;
            next += 1;
            if self.pivot[c].is_some() {
                continue;
            }
            let t = self.cols[c];
            if let Some(g) = leads.find_divisor(&t) {
                let m = t.mono.checked_div(&basis[g].terms[0].0.mono).unwrap();
                let r = self.add_multiple(basis, g, m);
                self.pivot[c] = Some(r);
            }
        }
        rest
    }

    /// Renumbers columns so that index order is term order (largest first).
    fn sort_columns(&mut self) {
        let module = self.module;
        let mut perm: Vec<u32> = (0..self.cols.len() as u32).collect();
        let keys: Vec<_> = self.cols.iter().map(|t| module.key(t)).collect();
        perm.sort_unstable_by(|&a, &b| keys[b as usize].cmp(&keys[a as usize]));
        let mut new_of = vec![0u32; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        self.cols = perm.iter().map(|&o| self.cols[o as usize]).collect();
        self.pivot = perm.iter().map(|&o| self.pivot[o as usize]).collect();
        for row in &mut self.rows {
            for e in row.iter_mut() {
                e.0 = new_of[e.0 as usize];
            }
            row.sort_unstable_by_key(|e| e.0);
        }
        self.col_of.clear();
    }

    /// Reduces `targets` against the pivot rows. With `echelon`, nonzero
    /// results become pivots themselves and are inter-reduced at the end;
    /// otherwise each target is reduced independently.
    fn reduce(&mut self, targets: &[u32], echelon: bool) -> Vec<Vec<(u32, Scalar)>> {
        let f = self.module.field();
        let p = f.modulus();
        let n = self.cols.len();
        let mut acc = vec![0u64; n];
        let mut out: Vec<Vec<(u32, Scalar)>> = Vec::new();
        let mut new_pivots: Vec<u32> = Vec::new();
        for &r in targets {
            let row = &self.rows[r as usize];
            if row.is_empty() {
                if !echelon {
                    out.push(Vec::new());
                }
                continue;
            }
            let start = row[0].0 as usize;
            for &(c, v) in row {
                acc[c as usize] = v as u64;
            }
            let mut res = Vec::new();
            for c in start..n {
                let v = acc[c] % p;
                if v == 0 {
                    acc[c] = 0;
                    continue;
                }
                acc[c] = 0;
                match self.pivot[c] {
                    Some(pr) => {
                        let m = p - v;
                        let prow = &self.rows[pr as usize];
                        for &(pc, pv) in &prow[1..] {
                            let slot = &mut acc[pc as usize];
                            *slot = (*slot + m * pv as u64) % p;
                        }
                    }
                    None => res.push((c as u32, v as Scalar)),
                }
            }
            if echelon {
                if res.is_empty() {
                    continue;
                }
                let inv = f.inv(res[0].1);
                for e in res.iter_mut() {
                    e.1 = f.mul(e.1, inv);
                }
                let lead = res[0].0 as usize;
                self.rows.push(res);
                let id = (self.rows.len() - 1) as u32;
                self.pivot[lead] = Some(id);
                new_pivots.push(id);
            } else {
                out.push(res);
            }
        }
        if !echelon {
            return out;
        }
        // back substitution among the new rows, smallest lead first
        new_pivots.sort_unstable_by_key(|&r| std::cmp::Reverse(self.rows[r as usize][0].0));
        let is_new: std::collections::HashSet<u32> = new_pivots.iter().copied().collect();
        for &r in &new_pivots {
            let row = std::mem::take(&mut self.rows[r as usize]);
            let needs = row[1..]
                .iter()
                .any(|&(c, _)| self.pivot[c as usize].is_some_and(|q| is_new.contains(&q)));
            if !needs {
                self.rows[r as usize] = row;
                continue;
            }
            let start = row[0].0 as usize;
            for &(c, v) in &row {
                acc[c as usize] = v as u64;
            }
            let mut res = vec![row[0]];
            acc[start] = 0;
            for c in start + 1..n {
                let v = acc[c] % p;
                acc[c] = 0;
                if v == 0 {
                    continue;
                }
                match self.pivot[c] {
                    Some(pr) if is_new.contains(&pr) => {
                        let m = p - v;
                        for &(pc, pv) in &self.rows[pr as usize][1..] {
                            let slot = &mut acc[pc as usize];
                            *slot = (*slot + m * pv as u64) % p;
                        }
                    }
                    _ => res.push((c as u32, v as Scalar)),
                }
            }
            self.rows[r as usize] = res;
        }
        new_pivots.sort_unstable_by_key(|&r| self.rows[r as usize][0].0);
        new_pivots.iter().map(|&r| self.rows[r as usize].clone()).collect()
    }

    /// Reduces each target independently and records the reducer multiples
    /// used: `target = sum c * m * basis[g] + remainder`.
    fn reduce_tracking(&self, targets: &[u32]) -> Vec<(Vec<(u32, Scalar)>, Quotients)> {
        let mut origin: Vec<Option<(usize, Monomial)>> = vec![None; self.rows.len()];
        for (&(g, m), &r) in &self.multiples {
            origin[r as usize] = Some((g, m));
        }
        let f = self.module.field();
        let p = f.modulus();
        let n = self.cols.len();
        let mut acc = vec![0u64; n];
        targets
            .iter()
            .map(|&r| {
                let row = &self.rows[r as usize];
                let mut res = Vec::new();
                let mut quo = Vec::new();
                let Some(&(start, _)) = row.first() else {
                    return (res, quo);
                };
                for &(c, v) in row {
                    acc[c as usize] = v as u64;
                }
                for c in start as usize..n {
                    let v = acc[c] % p;
                    acc[c] = 0;
                    if v == 0 {
                        continue;
                    }
                    match self.pivot[c] {
                        Some(pr) if pr != r => {
                            let (g, m) = origin[pr as usize].expect("pivot rows are basis multiples");
                            quo.push((g, m, v as Scalar));
                            let neg = p - v;
                            for &(pc, pv) in &self.rows[pr as usize][1..] {
                                let slot = &mut acc[pc as usize];
                                *slot = (*slot + neg * pv as u64) % p;
                            }
                        }
                        _ => res.push((c as u32, v as Scalar)),
                    }
                }
                (res, quo)
            })
            .collect()
    }

    fn to_vector(&self, row: &[(u32, Scalar)]) -> Vector {
        Vector {
            terms: row.iter().map(|&(c, v)| (self.cols[c as usize], v)).collect(),
        }
    }
}

/// `(basis index, monomial, coefficient)` triples of a division.
pub(crate) type Quotients = Vec<(usize, Monomial, Scalar)>;

/// Division of homogeneous `targets` by a monic Groebner basis, returning
/// remainders and quotients.
pub(crate) fn divide(module: &FreeModule, basis: &[Vector], targets: &[Vector]) -> Vec<(Vector, Quotients)> {
    let mut leads = LeadIndex::default();
    for (i, g) in basis.iter().enumerate() {
        debug_assert_eq!(g.terms[0].1, 1);
        leads.insert(g.terms[0].0, i);
    }
    let mut by_degree: HashMap<u32, Vec<usize>> = HashMap::new();
    for (k, t) in targets.iter().enumerate() {
        if let Some(d) = t.degree(module) {
            by_degree.entry(d).or_default().push(k);
        }
    }
    let mut out = vec![(Vector::zero(), Vec::new()); targets.len()];
    for ids in by_degree.values() {
        let mut batch = Batch::new(module);
        let rows: Vec<u32> = ids.iter().map(|&k| batch.add_vector(&targets[k])).collect();
        batch.preprocess(basis, &leads, &[], &[]);
        batch.sort_columns();
        for (&k, (r, q)) in ids.iter().zip(batch.reduce_tracking(&rows)) {
            out[k] = (batch.to_vector(&r), q);
        }
    }
    out
}

/// Options for [`groebner`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    /// Stop after this degree (truncated basis).
    pub max_degree: Option<u32>,
}

/// Reduced Groebner basis of the submodule generated by homogeneous `input`.
pub(crate) fn groebner(module: &FreeModule, input: &[Vector], opts: GbOptions) -> Vec<Vector> {
    let rank_one = module.rank() == 1;
    let mut pending_input: Vec<Vector> = input.iter().filter(|v| !v.is_zero()).cloned().collect();
    pending_input.sort_by(|a, b| {
        a.degree(module)
            .cmp(&b.degree(module))
            .then_with(|| module.cmp(&b.terms[0].0, &a.terms[0].0))
    });
    pending_input.reverse();

    let mut basis: Vec<Vector> = Vec::new();
    let mut leads = LeadIndex::default();
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let next_input = pending_input.last().map(|v| v.degree(module).unwrap());
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if opts.max_degree.is_some_and(|m| d > m) {
            break;
        }
        let mut batch = Batch::new(module);
        let mut candidates = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut inputs = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.into_iter().partition(|p| p.deg == d);
        pairs = later;
        let mut now = now;
        now.sort_by(|a, b| module.cmp(&b.lcm, &a.lcm).then((a.i, a.j).cmp(&(b.i, b.j))));
        for pr in &now {
            for g in [pr.i, pr.j] {
                let m = pr.lcm.mono.checked_div(&basis[g].terms[0].0.mono).unwrap();
                let r = batch.add_multiple(&basis, g, m);
                if seen.insert(r) {
                    candidates.push(r);
                }
            }
        }
        while pending_input.last().is_some_and(|v| v.degree(module) == Some(d)) {
            let mut v = pending_input.pop().unwrap();
            v.make_monic(module.field());
            inputs.push(batch.add_vector(&v));
        }
        let targets = batch.preprocess(&basis, &leads, &candidates, &inputs);
        batch.sort_columns();
        let new_rows = batch.reduce(&targets, true);
        for row in new_rows {
            let v = batch.to_vector(&row);
            let h = basis.len();
            let lead = v.terms[0].0;
            update_pairs(module, &basis, &mut pairs, &v, rank_one);
            leads.insert(lead, h);
            basis.push(v);
        }
    }
    basis
}

fn update_pairs(module: &FreeModule, basis: &[Vector], pairs: &mut Vec<Pair>, h: &Vector, rank_one: bool) {
    let hl = h.terms[0].0;
    let hidx = basis.len();
    // criterion B on existing pairs
    pairs.retain(|p| {
        if !hl.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].terms[0].0;
        let lj = basis[p.j].terms[0].0;
        let lih = li.mono.lcm(&hl.mono);
        let ljh = lj.mono.lcm(&hl.mono);
        lih == p.lcm.mono || ljh == p.lcm.mono
    });
    struct Cand {
        i: usize,
        lcm: Monomial,
        coprime: bool,
        alive: bool,
    }
    let mut cands: Vec<Cand> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| g.terms[0].0.comp == hl.comp)
        .map(|(i, g)| {
            let l = g.terms[0].0.mono;
            Cand {
                i,
                lcm: l.lcm(&hl.mono),
                coprime: rank_one && l.is_coprime(&hl.mono),
                alive: true,
            }
        })
        .collect();
    cands.sort_by_key(|c| c.lcm.degree());
    // criterion M: drop pairs whose lcm is a proper multiple of another lcm
    for a in 0..cands.len() {
        let la = cands[a].lcm;
        for b in 0..cands.len() {
            if cands[b].lcm.degree() >= la.degree() {
                break;
            }
            if cands[b].lcm.divides(&la) {
                cands[a].alive = false;
                break;
            }
        }
    }
    // criterion F: one pair per lcm, none if any of them is coprime
    let mut by_lcm: HashMap<Monomial, (usize, bool)> = HashMap::new();
    for (k, c) in cands.iter().enumerate() {
        if !c.alive {
            continue;
        }
        let e = by_lcm.entry(c.lcm).or_insert((k, false));
        e.1 |= c.coprime;
    }
    let mut keep: Vec<(usize, Monomial)> = by_lcm
        .into_iter()
        .filter(|(_, (_, cop))| !cop)
        .map(|(lcm, (k, _))| (cands[k].i, lcm))
        .collect();
    keep.sort_unstable_by_key(|e| e.0);
    for (i, lcm) in keep {
        let t = MTerm::new(lcm, hl.comp);
        pairs.push(Pair {
            i,
            j: hidx,
            lcm: t,
            deg: module.degree(&t),
        });
    }
}

/// Normal forms of homogeneous `targets` against a Groebner basis.
pub(crate) fn normal_forms(module: &FreeModule, basis: &[Vector], targets: &[Vector]) -> Vec<Vector> {
    let mut leads = LeadIndex::default();
    for (i, g) in basis.iter().enumerate() {
        leads.insert(g.terms[0].0, i);
    }
    let mut by_degree: HashMap<u32, Vec<usize>> = HashMap::new();
    for (k, t) in targets.iter().enumerate() {
        if let Some(d) = t.degree(module) {
            by_degree.entry(d).or_default().push(k);
        }
    }
    let mut out = vec![Vector::zero(); targets.len()];
    let mut degrees: Vec<u32> = by_degree.keys().copied().collect();
    degrees.sort_unstable();
    for d in degrees {
        let ids = &by_degree[&d];
        let mut batch = Batch::new(module);
        let rows: Vec<u32> = ids.iter().map(|&k| batch.add_vector(&targets[k])).collect();
        batch.preprocess(basis, &leads, &[], &[]);
        batch.sort_columns();
        let reduced = batch.reduce(&rows, false);
        for (&k, r) in ids.iter().zip(reduced) {
            out[k] = batch.to_vector(&r);
        }
    }
    out
}

/// Indices of a minimal generating subset of homogeneous `vecs`, scanning
/// by degree and keeping those not generated by earlier choices.
pub(crate) fn minimal_generators(module: &FreeModule, vecs: &[Vector]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vecs.len()).filter(|&k| !vecs[k].is_zero()).collect();
    order.sort_by_key(|&k| vecs[k].degree(module).unwrap());
    let mut chosen: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let d = vecs[order[k]].degree(module).unwrap();
        let mut end = k;
        while end < order.len() && vecs[order[end]].degree(module) == Some(d) {
            end += 1;
        }
        let current: Vec<Vector> = chosen.iter().map(|&c| vecs[c].clone()).collect();
        let gb = groebner(module, &current, GbOptions { max_degree: Some(d) });
        let cands: Vec<Vector> = order[k..end].iter().map(|&c| vecs[c].clone()).collect();
        let nfs = normal_forms(module, &gb, &cands);
        let mut cols: HashMap<MTerm, usize> = HashMap::new();
        for v in &nfs {
            for (t, _) in &v.terms {
                let next = cols.len();
                cols.entry(*t).or_insert(next);
            }
        }
        let mut ech = crate::linalg::matrix::SparseEchelon::new(module.field(), cols.len());
        for (v, &c) in nfs.iter().zip(&order[k..end]) {
            let row: Vec<(usize, Scalar)> = v.terms.iter().map(|(t, x)| (cols[t], *x)).collect();
            if !row.is_empty() && ech.insert(&row) {
                chosen.push(c);
            }
        }
        k = end;
    }
    chosen.sort_unstable();
    chosen
}
