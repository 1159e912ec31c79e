//! Prime fields `F_p` with `3 < p < 2^31`.
//!
//! Elements are stored as raw `u32` residues and all arithmetic goes through a
//! [`PrimeField`] handle. The handle is `Copy` and carries nothing but the
//! modulus, so it is cheap to thread through polynomial and matrix code.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Default working prime, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Small prime used when rational points are enumerated exhaustively.
pub const SMALL_PRIME: u64 = 101;

/// Raw residue. Always `< p` for the field it belongs to.
pub type Scalar = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

/// Miller–Rabin with bases 2, 7, 61: exact for `n < 2^32`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 61] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    debug_assert!(n < 1 << 32);
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % n;
            }
            b = b * b % n;
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    [2, 7, 61].iter().all(|&a| {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p <= 3 {
            return Err(FieldError::Characteristic(p));
        }
        Ok(PrimeField { p })
    }

    pub fn default_large() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    pub fn default_small() -> Self {
        PrimeField { p: SMALL_PRIME }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u64 + b as u64;
        (if s >= self.p { s - self.p } else { s }) as Scalar
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p - b as u64) as Scalar
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            (self.p - a as u64) as Scalar
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p) as Scalar
    }

    /// `a - c * b`, the elimination kernel.
    #[inline]
    pub fn sub_mul(&self, a: Scalar, c: Scalar, b: Scalar) -> Scalar {
        let prod = (c as u64 * b as u64) % self.p;
        ((a as u64 + self.p - prod) % self.p) as Scalar
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a as u64 % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as Scalar
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        if t < 0 {
            t += self.p as i64;
        }
        t as Scalar
    }

    #[inline]
    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        (v % self.p) as Scalar
    }

    /// Symmetric lift into `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: Scalar) -> i64 {
        let a = a as i64;
        if a > (self.p as i64) / 2 {
            a - self.p as i64
        } else {
            a
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        rng.gen_range(0..self.p) as Scalar
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        rng.gen_range(1..self.p) as Scalar
    }

    /// Euler's criterion.
    pub fn is_square(&self, a: Scalar) -> bool {
        a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Tonelli-Shanks square root, `None` for non-residues.
    pub fn sqrt(&self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let p = self.p;
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Smallest quadratic non-residue.
    pub fn nonsquare(&self) -> Scalar {
        (2..).find(|&z| !self.is_square(z)).unwrap()
    }

    pub fn elem(&self, value: i64) -> FieldElement {
        FieldElement {
            value: self.from_i64(value),
            field: *self,
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue bundled with its field, for call sites where operator syntax
/// reads better than explicit `field.mul(a, b)` calls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub value: Scalar,
    pub field: PrimeField,
}

impl FieldElement {
    pub fn inv(self) -> FieldElement {
        FieldElement {
            value: self.field.inv(self.value),
            field: self.field,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.to_signed(self.value))
    }
}
