//! Arithmetic in the prime field F_p.
//!
//! Scalars are stored as `u32` residues in `[0, p)`. Vectors are plain
//! `Vec<u32>`/`&[u32]` and every vector helper lives on [`PrimeField`], which
//! carries the modulus. Only small primes are supported (p < 2^16) so that
//! products never leave `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p as u64 >= MAX_PRIME as u64 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn scalar(self, v: i64) -> FpScalar {
        FpScalar {
            value: self.reduce(v),
            field: self,
        }
    }

    // ---- vector helpers -------------------------------------------------

    pub fn zero_vec(self, n: usize) -> Vec<u32> {
        vec![0; n]
    }

    pub fn unit_vec(self, n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1 % self.p;
        v
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn neg_vec(self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.neg(x)).collect()
    }

    pub fn scale_vec(self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `acc += c * v`
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        debug_assert_eq!(acc.len(), v.len());
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            if x != 0 {
                *a = self.add(*a, self.mul(c, x));
            }
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let s: u64 = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| (x as u64 * y as u64) % self.p as u64)
            .sum();
        (s % self.p as u64) as u32
    }

    pub fn reduce_vec(self, v: &[i64]) -> Vec<u32> {
        v.iter().map(|&x| self.reduce(x)).collect()
    }

    /// Number of vectors in F_p^n, saturating at `u64::MAX`.
    pub fn space_size(self, n: usize) -> u64 {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(self.p as u64);
        }
        acc
    }

    /// The `index`-th vector of F_p^n in little-endian base-p order.
    pub fn vector_from_index(self, n: usize, mut index: u64) -> Vec<u32> {
        let mut v = vec![0; n];
        for x in v.iter_mut() {
            *x = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        v
    }

    pub fn all_vectors(self, n: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = self.space_size(n);
        (0..total).map(move |i| self.vector_from_index(n, i))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A single element of F_p, bundled with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    field: PrimeField,
}

impl FpScalar {
    pub fn new(field: PrimeField, value: u32) -> Self {
        FpScalar {
            value: value % field.p,
            field,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn pow(self, e: u64) -> Self {
        FpScalar::new(self.field, self.field.pow(self.value, e))
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar::new(self.field, self.field.inv(self.value)))
    }

    fn check(self, other: FpScalar) {
        assert_eq!(self.field, other.field, "modulus mismatch");
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::new(self.field, self.field.add(self.value, rhs.value))
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::new(self.field, self.field.sub(self.value, rhs.value))
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        self.check(rhs);
        FpScalar::new(self.field, self.field.mul(self.value, rhs.value))
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar::new(self.field, self.field.neg(self.value))
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_units() {
        for bad in [0, 1, 4, 6, 9, 15, 100] {
            assert!(PrimeField::new(bad).is_err(), "{bad}");
        }
        for good in [2, 3, 5, 7, 13, 65_521] {
            assert!(PrimeField::new(good).is_ok(), "{good}");
        }
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn vector_enumeration_is_bijective() {
        let f = PrimeField::new(3).unwrap();
        let all: Vec<_> = f.all_vectors(3).collect();
        assert_eq!(all.len(), 27);
        let set: std::collections::HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 27);
    }

    proptest! {
        #[test]
        fn fermat_identity(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), a in 0u32..1000) {
            let f = PrimeField::new(p).unwrap();
            let x = FpScalar::new(f, a);
            prop_assert_eq!(x.pow(p as u64), x);
        }

        #[test]
        fn field_axioms(p in prop::sample::select(vec![2u32, 3, 5, 7]), a in 0u32..50, b in 0u32..50, c in 0u32..50) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (FpScalar::new(f, a), FpScalar::new(f, b), FpScalar::new(f, c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, FpScalar::new(f, 0));
            prop_assert_eq!(-(-a), a);
        }
    }
}
