use std::fmt;

use super::fp::{add_mod, inv_mod, mul_mod, reduce, sub_mod};
use super::{assert_same_modulus, ArithError};

/// A dense polynomial in `x` over `F_p`, coefficients indexed by degree.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// is the empty vector and structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn constant(p: u32, c: i64) -> Self {
        Self::from_raw(p, vec![reduce(p, c)])
    }

    pub fn monomial(p: u32, c: i64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = reduce(p, c);
        Self::from_raw(p, coeffs)
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_coeffs(p: u32, coeffs: &[i64]) -> Self {
        Self::from_raw(p, coeffs.iter().map(|&c| reduce(p, c)).collect())
    }

    pub(crate) fn from_raw(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.p, self.coeff(i), rhs.coeff(i)))
            .collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.p, self.coeff(i), rhs.coeff(i)))
            .collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| sub_mod(self.p, 0, c)).collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(self.p, a, c)).collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        // Accumulate unreduced while the sum cannot overflow.
        let limit = u64::MAX / ((p - 1).max(1) * (p - 1).max(1)).max(1);
        let mut pending = 0u64;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
            pending += 1;
            if pending + 1 >= limit {
                acc.iter_mut().for_each(|c| *c %= p);
                pending = 0;
            }
        }
        Self::from_raw(self.p, acc.into_iter().map(|c| (c % p) as u32).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { p: self.p, coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.p);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        assert_same_modulus(self.p, d.p);
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let p = self.p;
        let lead_inv = inv_mod(p, d.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(p, r[i + dd], lead_inv);
            q[i] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[i + j] = sub_mod(p, r[i + j], mul_mod(p, c, b));
                }
            }
        }
        r.truncate(dd);
        Ok((Self::from_raw(p, q), Self::from_raw(p, r)))
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub(crate) fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn rem(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Returns the monic associate together with the removed leading coefficient.
    pub fn monic(&self) -> (Self, u32) {
        match self.lead() {
            0 => (self.clone(), 0),
            1 => (self.clone(), 1),
            lc => {
                let inv = inv_mod(self.p, lc).expect("nonzero");
                (self.scale(inv), lc)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().0
    }

    pub fn eval(&self, at: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(self.p, mul_mod(self.p, acc, at), c))
    }

    /// Composition `f(x + a)`.
    pub fn taylor_shift(&self, a: u32) -> Self {
        // Horner with the linear polynomial x + a.
        let lin = Self::from_raw(self.p, vec![a % self.p, 1]);
        self.coeffs.iter().rev().fold(Self::zero(self.p), |acc, &c| {
            acc.mul(&lin).add(&Self::from_raw(self.p, vec![c]))
        })
    }

    /// `x^deg · f(1/x)` for `deg = self.degree()`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_raw(self.p, coeffs)
    }

    /// Largest `k` with `pi^k | self`; `None` for the zero polynomial.
    pub fn multiplicity(&self, pi: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        assert!(pi.degree().unwrap_or(0) >= 1, "multiplicity of a constant");
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(pi).expect("nonzero");
            if !r.is_zero() {
                return Some(k);
            }
            k += 1;
            cur = q;
        }
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most half the degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        (1..=n / 2).all(|d| monic_polys(self.p, d).all(|q| !self.rem(&q).unwrap().is_zero()))
    }
}

/// Every monic polynomial of exactly the given degree, in lexicographic order
/// of the lower coefficients.
pub(crate) fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Poly> {
    let total = (p as u64).checked_pow(degree as u32).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        coeffs.push(1);
        Poly::from_raw(p, coeffs)
    })
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
