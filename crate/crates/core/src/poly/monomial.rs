//! Packed monomials: up to 16 variables, one byte per exponent.
//!
//! Variable `i` lives in byte `i % 8` of word `i / 8`, so that `(hi, lo)` read
//! as one 128-bit integer compares exponent vectors starting from the last
//! variable. Exponents stay below 128, which keeps the byte-parallel
//! divisibility and lcm tricks carry-free.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 16;
pub const MAX_EXPONENT: u32 = 127;

const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    lo: u64,
    hi: u64,
    deg: u32,
}

#[inline]
fn ge_mask(a: u64, b: u64) -> u64 {
    // 0xff in every byte where a >= b
    let m = ((a | HIGH).wrapping_sub(b)) & HIGH;
    (m >> 7).wrapping_mul(0xff)
}

#[inline]
fn nonzero_bytes(x: u64) -> u64 {
    (((x & LOW7).wrapping_add(LOW7)) | x) & HIGH
}

impl Monomial {
    pub const ONE: Monomial = Monomial { lo: 0, hi: 0, deg: 0 };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} too large");
            let shift = 8 * (i % 8);
            if i < 8 {
                m.lo |= (e as u64) << shift;
            } else {
                m.hi |= (e as u64) << shift;
            }
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        Monomial::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Monomial {
        let mut exps = [0u32; MAX_VARS];
        exps[i] = e;
        Monomial::from_exponents(&exps[..=i])
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        let w = if i < 8 { self.lo } else { self.hi };
        ((w >> (8 * (i % 8))) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Packed exponent vector, last variable most significant.
    #[inline]
    pub fn packed(&self) -> u128 {
        ((self.hi as u128) << 64) | self.lo as u128
    }

    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let lo = self.lo + other.lo;
        let hi = self.hi + other.hi;
        if (lo | hi) & HIGH != 0 {
            return None;
        }
        Some(Monomial {
            lo,
            hi,
            deg: self.deg + other.deg,
        })
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow in monomial product")
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && ((other.lo | HIGH).wrapping_sub(self.lo) & HIGH) == HIGH
            && ((other.hi | HIGH).wrapping_sub(self.hi) & HIGH) == HIGH
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            lo: self.lo - other.lo,
            hi: self.hi - other.hi,
            deg: self.deg - other.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let ml = ge_mask(self.lo, other.lo);
        let mh = ge_mask(self.hi, other.hi);
        let lo = (self.lo & ml) | (other.lo & !ml);
        let hi = (self.hi & mh) | (other.hi & !mh);
        Monomial {
            lo,
            hi,
            deg: byte_sum(lo) + byte_sum(hi),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let ml = ge_mask(self.lo, other.lo);
        let mh = ge_mask(self.hi, other.hi);
        let lo = (other.lo & ml) | (self.lo & !ml);
        let hi = (other.hi & mh) | (self.hi & !mh);
        Monomial {
            lo,
            hi,
            deg: byte_sum(lo) + byte_sum(hi),
        }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (nonzero_bytes(self.lo) & nonzero_bytes(other.lo)) == 0
            && (nonzero_bytes(self.hi) & nonzero_bytes(other.hi)) == 0
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let gather = |x: u64| -> u32 {
            let b = nonzero_bytes(x) >> 7;
            // one bit per byte, packed into the low byte
            ((b.wrapping_mul(0x0102_0408_1020_4080)) >> 56) as u32
        };
        gather(self.lo) | (gather(self.hi) << 8)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self, nvars: usize) -> Vec<usize> {
        (0..nvars).filter(|&i| self.exponent(i) > 0).collect()
    }

    /// Largest index of a variable dividing `self`.
    pub fn max_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exponent(i) > 0)
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| other.packed().cmp(&self.packed()))
    }

    pub fn deglex_cmp(&self, other: &Monomial) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.packed().swap_bytes().cmp(&other.packed().swap_bytes()))
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[inline]
fn byte_sum(x: u64) -> u32 {
    x.to_le_bytes().iter().map(|&b| b as u32).sum()
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.max_var().map_or(0, |v| v + 1);
        write!(f, "{:?}", self.exponents(last))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exps() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..20, 16)
    }

    proptest! {
        #[test]
        fn packed_ops_match_exponentwise(a in exps(), b in exps()) {
            let ma = Monomial::from_exponents(&a);
            let mb = Monomial::from_exponents(&b);
            let prod = ma.mul(&mb);
            let lcm = ma.lcm(&mb);
            let gcd = ma.gcd(&mb);
            for i in 0..16 {
                prop_assert_eq!(prod.exponent(i), a[i] + b[i]);
                prop_assert_eq!(lcm.exponent(i), a[i].max(b[i]));
                prop_assert_eq!(gcd.exponent(i), a[i].min(b[i]));
            }
            prop_assert_eq!(lcm.degree(), (0..16).map(|i| a[i].max(b[i])).sum::<u32>());
            let divides = (0..16).all(|i| a[i] <= b[i]);
            prop_assert_eq!(ma.divides(&mb), divides);
            let coprime = (0..16).all(|i| a[i] == 0 || b[i] == 0);
            prop_assert_eq!(ma.is_coprime(&mb), coprime);
            prop_assert_eq!(prod.checked_div(&mb), Some(ma));
            let mask: u32 = (0..16).filter(|&i| a[i] > 0).map(|i| 1u32 << i).sum();
            prop_assert_eq!(ma.support_mask(), mask);
        }

        #[test]
        fn grevlex_is_multiplicative(a in exps(), b in exps(), c in exps()) {
            let (ma, mb, mc) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
            prop_assert_eq!(ma.grevlex_cmp(&mb), ma.mul(&mc).grevlex_cmp(&mb.mul(&mc)));
            prop_assert_eq!(ma.deglex_cmp(&mb), ma.mul(&mc).deglex_cmp(&mb.mul(&mc)));
        }
    }

    #[test]
    fn grevlex_small_cases() {
        // x0 > x1 > x2, and x1^2 > x0*x2 in grevlex (but not in deglex)
        let x = |e: &[u32]| Monomial::from_exponents(e);
        assert_eq!(x(&[1, 0, 0]).grevlex_cmp(&x(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(x(&[0, 2, 0]).grevlex_cmp(&x(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(x(&[0, 2, 0]).deglex_cmp(&x(&[1, 0, 1])), Ordering::Less);
        assert_eq!(x(&[0, 0, 2]).grevlex_cmp(&x(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn overflow_detected() {
        let a = Monomial::var_pow(3, 100);
        assert!(a.checked_mul(&a).is_none());
    }
}
