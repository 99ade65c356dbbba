use std::fmt;

use serde::{Deserialize, Serialize};

use super::{assert_same_modulus, is_prime, ArithError, Field};

/// The prime field `F_p`, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn elem(self, v: i64) -> Fp {
        Fp::new(self.p, v)
    }
}

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    v: u32,
}

pub(crate) fn reduce(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add_mod(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul_mod(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
pub(crate) fn inv_mod(p: u32, a: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(reduce(p, t0))
}

impl Fp {
    pub fn new(p: u32, v: i64) -> Self {
        Self { p, v: reduce(p, v) }
    }

    pub fn value(self) -> u32 {
        self.v
    }
}

impl Field for Fp {
    fn modulus(&self) -> u32 {
        self.p
    }
    fn zero_like(&self) -> Self {
        Self { p: self.p, v: 0 }
    }
    fn one_like(&self) -> Self {
        Self { p: self.p, v: 1 % self.p }
    }
    fn int_like(&self, n: i64) -> Self {
        Self::new(self.p, n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        Self { p: self.p, v: add_mod(self.p, self.v, rhs.v) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        Self { p: self.p, v: sub_mod(self.p, self.v, rhs.v) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        Self { p: self.p, v: mul_mod(self.p, self.v, rhs.v) }
    }
    fn neg(&self) -> Self {
        Self { p: self.p, v: sub_mod(self.p, 0, self.v) }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        inv_mod(self.p, self.v)
            .map(|v| Self { p: self.p, v })
            .ok_or(ArithError::DivisionByZero)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}
