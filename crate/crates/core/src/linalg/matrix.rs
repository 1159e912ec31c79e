//! Dense matrices over a prime field, plus a sparse incremental echelon form
//! used where rows are monomial shifts of sparse polynomials.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use super::field::{PrimeField, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(12) {
            let row: Vec<i64> = self.row(r).iter().map(|&x| self.field.to_signed(x)).collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| (x as u64 % field.modulus()) as Scalar));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, &rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, nrows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.field.modulus();
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in other.row(k).iter().zip(acc.iter_mut()) {
                    *slot = (*slot + a * *c as u64) % p;
                }
            }
            for (c, v) in acc.iter().enumerate() {
                out.set(r, c, *v as Scalar);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.modulus();
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as Scalar
            })
            .collect()
    }

    /// Rows `rows` and columns `cols` of `self`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// `row[target] -= c * row[source]` restricted to columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, c: Scalar, from: usize) {
        let p = self.field.modulus();
        let pp = p * p;
        let cols = self.cols;
        let (src, dst) = if source < target {
            let (head, tail) = self.data.split_at_mut(target * cols);
            (&head[source * cols..(source + 1) * cols], &mut tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(source * cols);
            (&tail[..cols], &mut head[target * cols..(target + 1) * cols])
        };
        let c = c as u64;
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if *s != 0 {
                *d = ((*d as u64 + pp - c * *s as u64) % p) as Scalar;
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: Scalar, from: usize) {
        let f = self.field;
        for v in &mut self.data[r * self.cols + from..(r + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    /// Forward elimination in place; returns pivot columns. When `reduced`
    /// is set the result is the reduced row echelon form.
    fn echelonize(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.field.inv(self.get(r, c));
            self.scale_row(r, inv, c);
            let range: Box<dyn Iterator<Item = usize>> = if reduced {
                Box::new((0..self.rows).filter(move |&i| i != r))
            } else {
                Box::new(r + 1..self.rows)
            };
            let targets: Vec<usize> = range.collect();
            for i in targets {
                let f = self.get(i, c);
                if f != 0 {
                    self.eliminate(i, r, f, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelonize(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.echelonize(false).len()
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{ w : w^T M = 0 }`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel_basis()
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let bm = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&bm).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mut m = self.clone();
        let mut det: Scalar = 1;
        for c in 0..self.cols {
            let Some(pr) = (c..self.rows).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..self.rows {
                let factor = f.mul(m.get(i, c), inv);
                if factor != 0 {
                    m.eliminate(i, c, factor, c);
                }
            }
        }
        det
    }

    /// Projective-style comparison of the row spaces.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        let (a, pa) = self.rref();
        let (b, pb) = other.rref();
        if pa != pb {
            return false;
        }
        (0..pa.len()).all(|i| a.row(i) == b.row(i))
    }
}

/// Echelon form built one sparse row at a time.
///
/// Rows are kept with a normalized leading entry. Insertion reports whether
/// the new row was independent of everything inserted so far.
pub struct SparseEchelon {
    field: PrimeField,
    ncols: usize,
    pivot_of: HashMap<usize, usize>,
    rows: Vec<Vec<(usize, Scalar)>>,
    work: Vec<u64>,
}

impl SparseEchelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        SparseEchelon {
            field,
            ncols,
            pivot_of: HashMap::new(),
            rows: Vec::new(),
            work: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_of.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Inserts a row given as `(column, value)` pairs; returns `true` when it
    /// increased the rank.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        let p = self.field.modulus();
        let pp = p * p;
        if row.is_empty() {
            return false;
        }
        let mut cols: Vec<usize> = Vec::with_capacity(row.len());
        for &(c, v) in row {
            if v == 0 {
                continue;
            }
            if self.work[c] == 0 {
                cols.push(c);
            }
            self.work[c] = (self.work[c] + v as u64) % p;
        }
        // columns are visited in increasing order; new columns touched by a
        // pivot row are always to the right of the pivot
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            cols.iter().map(|&c| std::cmp::Reverse(c)).collect();
        let mut touched = cols;
        let mut lead = None;
        let mut last = None;
        while let Some(std::cmp::Reverse(c)) = heap.pop() {
            if last == Some(c) {
                continue;
            }
            last = Some(c);
            let v = self.work[c] % p;
            if v == 0 {
                continue;
            }
            match self.pivot_of.get(&c) {
                Some(&ri) => {
                    let prow = &self.rows[ri];
                    for &(pc, pv) in prow {
                        let old = self.work[pc];
                        let new = (old + pp - v * pv as u64) % p;
                        if old == 0 && new != 0 && pc != c {
                            touched.push(pc);
                            heap.push(std::cmp::Reverse(pc));
                        } else if old != 0 && pc > c {
                            // already queued
                        }
                        self.work[pc] = new;
                    }
                    self.work[c] = 0;
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let result = if let Some(lc) = lead {
            touched.sort_unstable();
            touched.dedup();
            let inv = self.field.inv((self.work[lc] % p) as Scalar);
            let mut new_row: Vec<(usize, Scalar)> = touched
                .iter()
                .filter(|&&c| c >= lc)
                .filter_map(|&c| {
                    let v = self.work[c] % p;
                    (v != 0).then(|| (c, self.field.mul(v as Scalar, inv)))
                })
                .collect();
            new_row.sort_unstable_by_key(|e| e.0);
            self.pivot_of.insert(lc, self.rows.len());
            self.rows.push(new_row);
            true
        } else {
            false
        };
        for c in touched {
            self.work[c] = 0;
        }
        result
    }
}
