use std::collections::HashMap;

use crate::error::VarietyError;
use crate::poly::{Polynomial, Ring};

/// Skew-symmetric matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrixOfForms {
    ring: Ring,
    entries: Vec<Vec<Polynomial>>,
}

/// Index of the pair `(i, j)`, `i < j < n`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < n`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl SkewMatrixOfForms {
    /// Entries above the diagonal determine the rest.
    pub fn from_upper(ring: &Ring, size: usize, upper: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut entries = vec![vec![ring.zero(); size]; size];
        for (i, j) in pairs(size) {
            let a = upper(i, j);
            entries[j][i] = a.neg();
            entries[i][j] = a;
        }
        SkewMatrixOfForms {
            ring: ring.clone(),
            entries,
        }
    }

    /// Checks antisymmetry and a zero diagonal.
    pub fn new(ring: &Ring, entries: Vec<Vec<Polynomial>>) -> Option<Self> {
        let n = entries.len();
        for i in 0..n {
            if entries[i].len() != n || !entries[i][i].is_zero() {
                return None;
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i].neg() {
                    return None;
                }
            }
        }
        Some(SkewMatrixOfForms {
            ring: ring.clone(),
            entries,
        })
    }

    /// Generic `n x n` skew matrix in `binom(n, 2)` variables, `a_ij = x_{pair(i,j)}`.
    pub fn generic(ring: &Ring, n: usize) -> Self {
        assert_eq!(ring.nvars(), n * (n - 1) / 2);
        SkewMatrixOfForms::from_upper(ring, n, |i, j| ring.var(pair_index(n, i, j)))
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// Pfaffian of the principal submatrix on `rows` (in the given order).
    pub fn pfaffian(&self, rows: &[usize]) -> Result<Polynomial, VarietyError> {
        if rows.len() % 2 == 1 {
            return Err(VarietyError::OddSubset(rows.len()));
        }
        if rows.len() > self.size() || rows.iter().any(|&r| r >= self.size()) {
            return Err(VarietyError::TooLarge {
                size: rows.len(),
                n: self.size(),
            });
        }
        let mut memo = HashMap::new();
        Ok(self.pf_rec(rows, &mut memo))
    }

    fn pf_rec(&self, rows: &[usize], memo: &mut HashMap<Vec<usize>, Polynomial>) -> Polynomial {
        if rows.is_empty() {
            return self.ring.one();
        }
        if let Some(p) = memo.get(rows) {
            return p.clone();
        }
        let first = rows[0];
        let mut acc = self.ring.zero();
        for k in 1..rows.len() {
            let a = &self.entries[first][rows[k]];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows[1..].iter().enumerate().filter(|(i, _)| i + 1 != k).map(|(_, &r)| r).collect();
            let term = a * &self.pf_rec(&rest, memo);
            acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        memo.insert(rows.to_vec(), acc.clone());
        acc
    }

    /// All pfaffians of principal `k x k` submatrices, index sets in lex order.
    pub fn pfaffians(&self, k: usize) -> Result<Vec<Polynomial>, VarietyError> {
        if k % 2 == 1 {
            return Err(VarietyError::OddSubset(k));
        }
        if k > self.size() {
            return Err(VarietyError::TooLarge { size: k, n: self.size() });
        }
        let mut memo = HashMap::new();
        Ok(subsets(self.size(), k).iter().map(|s| self.pf_rec(s, &mut memo)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::poly::parse_polynomial;

    fn det(m: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
        let n = m.len();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let t = &m[0][j] * &det(&minor, ring);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn indexing() {
        let ps = pairs(6);
        for (k, &(i, j)) in ps.iter().enumerate() {
            assert_eq!(pair_index(6, i, j), k);
        }
        assert_eq!(subsets(5, 4).len(), 5);
        assert_eq!(subsets(6, 4)[0], vec![0, 1, 2, 3]);
    }

    #[test]
    fn small_pfaffians() {
        let f = PrimeField::default_large();
        let r1 = Ring::new(f, 1).unwrap();
        let a = SkewMatrixOfForms::generic(&r1, 2);
        assert_eq!(a.pfaffian(&[0, 1]).unwrap(), r1.var(0));
        assert_eq!(a.pfaffian(&[0]), Err(VarietyError::OddSubset(1)));
        let r = Ring::new(f, 6).unwrap();
        let a = SkewMatrixOfForms::generic(&r, 4);
        // w12 w34 - w13 w24 + w14 w23 with pair order 12,13,14,23,24,34
        let expected = parse_polynomial(&r, "x0*x5 - x1*x4 + x2*x3").unwrap();
        assert_eq!(a.pfaffian(&[0, 1, 2, 3]).unwrap(), expected);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let f = PrimeField::default_large();
        for n in [2usize, 4, 6] {
            let r = Ring::new(f, n * (n - 1) / 2).unwrap();
            let a = SkewMatrixOfForms::generic(&r, n);
            let all: Vec<usize> = (0..n).collect();
            let pf = a.pfaffian(&all).unwrap();
            assert_eq!(&pf * &pf, det(a.entries(), &r));
        }
    }
}
