//! Minimal graded free resolutions of cyclic modules `R/I`.

mod betti;

pub use betti::BettiTable;

use rand::Rng;

use crate::error::ResolutionError;
use std::collections::{BTreeMap, BTreeSet};

use crate::groebner::schreyer::{schreyer_resolution, FrameLevel};
use crate::groebner::IdealHandle;
use crate::linalg::field::Scalar;
use crate::linalg::Matrix;
use crate::poly::{LinearSubstitution, Polynomial, Ring};

/// A homogeneous map `⊕ R(-source_degrees[c]) -> ⊕ R(-target_degrees[r])`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub target_degrees: Vec<u32>,
    pub source_degrees: Vec<u32>,
    /// `columns[c][r]` is the entry in row `r`, column `c`.
    pub columns: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    pub fn nrows(&self) -> usize {
        self.target_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.source_degrees.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.columns[c][r]
    }

    /// Every entry is zero or homogeneous of degree `source - target`.
    pub fn is_graded(&self) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| {
            col.iter().enumerate().all(|(r, p)| {
                p.is_zero()
                    || (p.is_homogeneous()
                        && self.source_degrees[c] >= self.target_degrees[r]
                        && p.degree() == Some(self.source_degrees[c] - self.target_degrees[r]))
            })
        })
    }

    /// Position of a nonzero constant entry, if any.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (c, col) in self.columns.iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                if !p.is_zero() && p.is_constant() {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn evaluate(&self, point: &[Scalar], field: crate::linalg::PrimeField) -> Matrix {
        let mut m = Matrix::zeros(field, self.nrows(), self.ncols());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                if !p.is_zero() {
                    m.set(r, c, p.evaluate(point));
                }
            }
        }
        m
    }

    /// Exact product `self ∘ next`, as columns.
    pub fn compose(&self, next: &GradedMap, ring: &Ring) -> Vec<Vec<Polynomial>> {
        next.columns
            .iter()
            .map(|col| {
                let mut out = vec![ring.zero(); self.nrows()];
                for (k, s) in col.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    for (r, a) in self.columns[k].iter().enumerate() {
                        if !a.is_zero() {
                            out[r] = &out[r] + &(a * s);
                        }
                    }
                }
                out
            })
            .collect()
    }
}

/// `0 <- R/I <- F_0 <- F_1 <- ...`, with `maps[i]: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    maps: Vec<GradedMap>,
    /// Number of general linear forms the ideal was cut by before resolving;
    /// `0` when the maps live over the original ring.
    cut: usize,
}

impl FreeResolution {
    /// Ring the differentials live in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    /// Length of the resolution (index of the last nonzero module).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Ranks of `F_0, F_1, ...`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![1];
        out.extend(self.maps.iter().map(|m| m.ncols()));
        out
    }

    /// Consecutive differentials compose to zero, exactly.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&w[1], &self.ring).iter().flatten().all(|p| p.is_zero()))
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.unit_entry().is_none())
    }

    pub fn is_graded(&self) -> bool {
        self.maps.iter().all(GradedMap::is_graded)
    }

    /// Away from the support of `R/I` the complex is split exact, so at a
    /// random point `rank d_i + rank d_{i+1} = rank F_i` for `i >= 1` and
    /// `rank d_1 = 1`.
    pub fn exact_at_random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let field = self.ring.field();
        let p: Vec<Scalar> = (0..self.ring.nvars()).map(|_| field.random(rng)).collect();
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.evaluate(&p, field).rank()).collect();
        let free = self.ranks();
        if self.maps.is_empty() {
            return true;
        }
        if ranks[0] != 1 {
            return false;
        }
        (1..free.len()).all(|i| ranks[i - 1] + ranks.get(i).copied().unwrap_or(0) == free[i])
    }
}

/// Minimal free resolution of `R/I` by iterated minimal syzygies.
pub fn minimal_free_resolution(ideal: &IdealHandle, max_length: Option<usize>) -> Result<FreeResolution, ResolutionError> {
    resolve(ideal, max_length, 0)
}

fn resolve(ideal: &IdealHandle, max_length: Option<usize>, cut: usize) -> Result<FreeResolution, ResolutionError> {
    let ring = ideal.ring().clone();
    let limit = max_length.unwrap_or(ring.nvars());
    let frame = schreyer_resolution(&ring, ideal.generators(), ring.nvars() + 1);
    let mut maps: Vec<SparseMap> = frame.iter().map(SparseMap::from_level).collect();
    for l in 0..maps.len() {
        minimalize_step(&mut maps, l);
    }
    let mut dense: Vec<GradedMap> = maps.iter().map(SparseMap::to_graded).collect();
    while dense.last().is_some_and(|m| m.ncols() == 0) {
        dense.pop();
    }
    if dense.len() > limit {
        return Err(ResolutionError::LengthExceeded(limit));
    }
    if let Some(step) = dense.iter().position(|m| m.unit_entry().is_some()) {
        return Err(ResolutionError::NotMinimal { step: step + 1 });
    }
    Ok(FreeResolution { ring, maps: dense, cut })
}

/// A differential under minimalization; rows and columns are never
/// renumbered, cancelled ones are marked dead.
struct SparseMap {
    ring: Ring,
    row_deg: Vec<u32>,
    col_deg: Vec<u32>,
    cols: Vec<BTreeMap<usize, Polynomial>>,
    rows: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl SparseMap {
    fn from_level(level: &FrameLevel) -> Self {
        let module = &level.target;
        let ring = module.ring().clone();
        let nrows = module.rank();
        let mut rows = vec![BTreeSet::new(); nrows];
        let cols: Vec<BTreeMap<usize, Polynomial>> = level
            .columns
            .iter()
            .enumerate()
            .map(|(c, v)| {
                let mut parts: BTreeMap<usize, Vec<(crate::poly::Monomial, Scalar)>> = BTreeMap::new();
                for (t, x) in v.terms() {
                    parts.entry(t.comp as usize).or_default().push((t.mono, *x));
                }
                parts
                    .into_iter()
                    .map(|(r, terms)| {
                        rows[r].insert(c);
                        (r, Polynomial::from_terms(&ring, terms))
                    })
                    .collect()
            })
            .collect();
        let col_deg = level.columns.iter().map(|v| v.degree(module).unwrap()).collect();
        SparseMap {
            ring,
            row_deg: module.shifts().to_vec(),
            col_deg,
            row_alive: vec![true; nrows],
            col_alive: vec![true; cols.len()],
            cols,
            rows,
        }
    }

    fn unit(&self) -> Option<(usize, usize, Scalar)> {
        for (c, col) in self.cols.iter().enumerate() {
            if !self.col_alive[c] {
                continue;
            }
            for (&r, p) in col {
                if p.is_constant() && !p.is_zero() {
                    return Some((r, c, p.lead_coeff()));
                }
            }
        }
        None
    }

    fn remove_row(&mut self, r: usize) {
        for c in std::mem::take(&mut self.rows[r]) {
            self.cols[c].remove(&r);
        }
        self.row_alive[r] = false;
    }

    fn remove_col(&mut self, c: usize) {
        for r in std::mem::take(&mut self.cols[c]).into_keys() {
            self.rows[r].remove(&c);
        }
        self.col_alive[c] = false;
    }

    /// Splits off `R e_c -> R f_r` for the unit entry `u` at `(r, c)`:
    /// `d[i][k] -= d[r][k] d[i][c] / u`, then row `r` and column `c` go.
    fn cancel(&mut self, r: usize, c: usize, u: Scalar) {
        let f = self.ring.field();
        let inv = f.inv(u);
        let pivot_col: Vec<(usize, Polynomial)> = self.cols[c]
            .iter()
            .filter(|(&i, _)| i != r)
            .map(|(&i, p)| (i, p.scale(inv)))
            .collect();
        let row_cols: Vec<usize> = self.rows[r].iter().copied().filter(|&k| k != c).collect();
        for k in row_cols {
            let a = self.cols[k][&r].clone();
            for (i, p) in &pivot_col {
                let prod = &a * p;
                let entry = self.cols[k].entry(*i).or_insert_with(|| self.ring.zero());
                *entry = &*entry - &prod;
                if entry.is_zero() {
                    self.cols[k].remove(i);
                    self.rows[*i].remove(&k);
                } else {
                    self.rows[*i].insert(k);
                }
            }
        }
        self.remove_row(r);
        self.remove_col(c);
    }

    fn to_graded(&self) -> GradedMap {
        let live_rows: Vec<usize> = (0..self.row_deg.len()).filter(|&r| self.row_alive[r]).collect();
        let mut new_row = vec![usize::MAX; self.row_deg.len()];
        for (k, &r) in live_rows.iter().enumerate() {
            new_row[r] = k;
        }
        let mut source_degrees = Vec::new();
        let mut columns = Vec::new();
        for (c, col) in self.cols.iter().enumerate() {
            if !self.col_alive[c] {
                continue;
            }
            let mut dense = vec![self.ring.zero(); live_rows.len()];
            for (&r, p) in col {
                dense[new_row[r]] = p.clone();
            }
            source_degrees.push(self.col_deg[c]);
            columns.push(dense);
        }
        GradedMap {
            target_degrees: live_rows.iter().map(|&r| self.row_deg[r]).collect(),
            source_degrees,
            columns,
        }
    }
}

/// Cancels every unit entry of `maps[l]`, deleting the matching column of
/// `maps[l - 1]` and row of `maps[l + 1]`.
fn minimalize_step(maps: &mut [SparseMap], l: usize) {
    while let Some((r, c, u)) = maps[l].unit() {
        maps[l].cancel(r, c, u);
        if l > 0 {
            maps[l - 1].remove_col(r);
        }
        if l + 1 < maps.len() {
            maps[l + 1].remove_row(c);
        }
    }
}

/// Restriction of `I` to `k` general linear forms, when they form a regular
/// sequence on `R/I`: the Hilbert series numerator is unchanged.
pub fn regular_linear_cut<R: Rng + ?Sized>(
    ideal: &IdealHandle,
    k: usize,
    rng: &mut R,
) -> Result<Option<IdealHandle>, ResolutionError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if k == 0 {
        return Ok(Some(ideal.clone()));
    }
    if k >= n {
        return Ok(None);
    }
    let target = Ring::new(ring.field(), n - k).expect("fewer variables");
    let m = Matrix::random(ring.field(), n, n - k, rng);
    if m.rank() < n - k {
        return Ok(None);
    }
    let s = LinearSubstitution::from_matrix(ring, &target, &m).map_err(crate::error::IdealError::from)?;
    let cut = ideal.substitute(&s)?;
    let before = ideal.hilbert_series().numerator;
    let after = cut.hilbert_series().numerator;
    Ok((before == after).then_some(cut))
}

/// Minimal resolution of `R/I` computed after cutting by as many general
/// linear forms as form a regular sequence. Graded Betti numbers, length and
/// codimension are those of `R/I`; the maps live over the smaller ring.
pub fn minimal_free_resolution_cut<R: Rng + ?Sized>(
    ideal: &IdealHandle,
    rng: &mut R,
) -> Result<FreeResolution, ResolutionError> {
    let hs = ideal.hilbert_series();
    if hs.is_zero() {
        return minimal_free_resolution(ideal, None);
    }
    let dim = hs.krull_dimension();
    for k in (1..=dim).rev() {
        if let Some(cut) = regular_linear_cut(ideal, k, rng)? {
            return resolve(&cut, None, k);
        }
    }
    minimal_free_resolution(ideal, None)
}

pub fn betti_table(res: &FreeResolution) -> Result<BettiTable, ResolutionError> {
    let mut t = BettiTable::new();
    t.add(0, 0, 1);
    for (i, m) in res.maps.iter().enumerate() {
        if m.unit_entry().is_some() {
            return Err(ResolutionError::NotMinimal { step: i + 1 });
        }
        for &d in &m.source_degrees {
            t.add(i + 1, d, 1);
        }
    }
    Ok(t)
}

/// Codimension of `V(I)` in the affine cone, `n - dim R/I`.
pub fn codimension(ideal: &IdealHandle) -> usize {
    let hs = ideal.hilbert_series();
    if hs.is_zero() {
        return ideal.ring().nvars() + 1;
    }
    ideal.ring().nvars() - hs.krull_dimension()
}

/// Cohen–Macaulay test by Auslander–Buchsbaum: resolution length equals
/// codimension.
pub fn is_acm<R: Rng + ?Sized>(ideal: &IdealHandle, rng: &mut R) -> Result<bool, ResolutionError> {
    let res = minimal_free_resolution_cut(ideal, rng)?;
    Ok(res.length() == codimension(ideal))
}

pub fn is_arithmetically_gorenstein<R: Rng + ?Sized>(ideal: &IdealHandle, rng: &mut R) -> Result<bool, ResolutionError> {
    let res = minimal_free_resolution_cut(ideal, rng)?;
    Ok(res.length() == codimension(ideal) && res.ranks().last() == Some(&1))
}
