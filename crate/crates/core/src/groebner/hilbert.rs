//! Hilbert series of monomial quotients `R/M`, `R = k[x_0..x_{n-1}]`, as a
//! numerator `N(t)` with `HS(t) = N(t) / (1-t)^n`.

use serde::{Deserialize, Serialize};

use crate::poly::{binomial, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    /// Coefficients of `N(t)`, lowest degree first.
    pub numerator: Vec<i64>,
    pub nvars: usize,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_shifted(acc: &mut Vec<i64>, other: &[i64], shift: usize, sign: i64) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, 0);
    }
    for (k, &c) in other.iter().enumerate() {
        acc[k + shift] += sign * c;
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_unstable_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for &g in gens.iter() {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    *gens = out;
}

/// Numerator of the Hilbert series of `R/(gens)`.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let mut g = gens.to_vec();
    minimalize(&mut g);
    trim(numerator_rec(g, nvars))
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // split off generators coprime to all others
    let mut product = vec![1i64];
    let mut rest = Vec::with_capacity(gens.len());
    for (k, m) in gens.iter().enumerate() {
        let lonely = gens.iter().enumerate().all(|(j, o)| j == k || m.is_coprime(o));
        if lonely {
            let mut next = product.clone();
            add_shifted(&mut next, &product, m.degree() as usize, -1);
            product = next;
        } else {
            rest.push(*m);
        }
    }
    if rest.is_empty() {
        return product;
    }
    // pivot on the most frequent variable, at the median exponent
    let mut counts = vec![0usize; nvars];
    for m in &rest {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let var = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = rest.iter().map(|m| m.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2].max(1);
    let pivot = Monomial::var_pow(var, e);

    let mut with_pivot = rest.clone();
    with_pivot.push(pivot);
    minimalize(&mut with_pivot);
    let mut quotient: Vec<Monomial> = rest.iter().map(|m| m.checked_div(&m.gcd(&pivot)).unwrap()).collect();
    minimalize(&mut quotient);

    let mut n = numerator_rec(with_pivot, nvars);
    let q = numerator_rec(quotient, nvars);
    add_shifted(&mut n, &q, e as usize, 1);
    multiply(&product, &n)
}

fn multiply(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, nvars: usize) -> Self {
        HilbertSeries {
            numerator: trim(numerator),
            nvars,
        }
    }

    /// Series of `R/M` for a monomial ideal `M`.
    pub fn of_monomial_ideal(gens: &[Monomial], nvars: usize) -> Self {
        HilbertSeries::new(monomial_numerator(gens, nvars), nvars)
    }

    /// Sum of shifted series, e.g. for a free module quotient.
    pub fn add_shifted(&mut self, other: &HilbertSeries, shift: u32) {
        assert_eq!(self.nvars, other.nvars);
        add_shifted(&mut self.numerator, &other.numerator, shift as usize, 1);
        self.numerator = trim(std::mem::take(&mut self.numerator));
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// `(h, k)` with `N(t) = (1-t)^k h(t)` and `h(1) != 0`.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut h = self.numerator.clone();
        let mut k = 0;
        while !h.is_empty() && h.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t)
            let mut q = vec![0i64; h.len() - 1];
            let mut run = 0;
            for i in 0..q.len() {
                run += h[i];
                q[i] = run;
            }
            h = trim(q);
            k += 1;
        }
        (h, k)
    }

    /// Krull dimension of the quotient ring.
    pub fn krull_dimension(&self) -> usize {
        let (_, k) = self.reduced();
        self.nvars - k
    }

    /// Multiplicity `h(1)`.
    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn hilbert_function(&self, d: u32) -> i64 {
        let n = self.nvars;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| *k as u32 <= d)
            .map(|(k, &c)| c * binomial(d as usize - k + n - 1, n - 1) as i64)
            .sum()
    }

    /// Value of the Hilbert polynomial at `d`.
    pub fn hilbert_polynomial_value(&self, d: i64) -> i64 {
        let (h, k) = self.reduced();
        let dim = self.nvars - k;
        if dim == 0 {
            return 0;
        }
        // HS = h(t)/(1-t)^dim ; P(d) = sum_j h_j C(d - j + dim - 1, dim - 1)
        h.iter()
            .enumerate()
            .map(|(j, &c)| c * binom_poly(d - j as i64 + dim as i64 - 1, dim - 1))
            .sum()
    }
}

/// `C(x, k)` as a polynomial in `x` (valid for negative `x`).
fn binom_poly(x: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= x as i128 - i;
        den *= i + 1;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Counts standard monomials directly.
    fn brute_hf(gens: &[Monomial], n: usize, d: u32) -> i64 {
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, gens: &[Monomial], count: &mut i64) {
            if i + 1 == e.len() {
                e[i] = left;
                let m = Monomial::from_exponents(e);
                if !gens.iter().any(|g| g.divides(&m)) {
                    *count += 1;
                }
                return;
            }
            for k in 0..=left {
                e[i] = k;
                rec(i + 1, left - k, e, gens, count);
            }
        }
        let mut c = 0;
        rec(0, d, &mut vec![0; n], gens, &mut c);
        c
    }

    #[test]
    fn simple_series() {
        // k[x,y]/(x^2, xy): 1 + 2t + t^2 + t^3 + ...
        let hs = HilbertSeries::of_monomial_ideal(&[mono(&[2, 0]), mono(&[1, 1])], 2);
        assert_eq!(hs.hilbert_function(0), 1);
        assert_eq!(hs.hilbert_function(1), 2);
        assert_eq!(hs.hilbert_function(5), 1);
        assert_eq!(hs.krull_dimension(), 1);
        assert_eq!(hs.multiplicity(), 1);
        // complete intersection of three quadrics in P^3 lead terms
        let ci = HilbertSeries::of_monomial_ideal(&[mono(&[2, 0, 0, 0]), mono(&[0, 2, 0, 0]), mono(&[0, 0, 2, 0])], 4);
        assert_eq!(ci.krull_dimension(), 1);
        assert_eq!(ci.multiplicity(), 8);
        assert_eq!(ci.hilbert_polynomial_value(10), 8);
        let unit = HilbertSeries::of_monomial_ideal(&[Monomial::ONE], 3);
        assert!(unit.is_zero());
    }

    proptest! {
        #[test]
        fn numerator_matches_standard_monomial_count(
            raw in proptest::collection::vec(proptest::collection::vec(0u32..4, 4), 1..7)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| mono(e)).filter(|m| !m.is_one()).collect();
            let hs = HilbertSeries::of_monomial_ideal(&gens, 4);
            for d in 0..9 {
                prop_assert_eq!(hs.hilbert_function(d), brute_hf(&gens, 4, d));
            }
        }
    }
}
