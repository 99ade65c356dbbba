//! Finite residue fields `F_p[x]/(π)` with Zech-logarithm arithmetic.
//!
//! Reduction modulo a prime `π` is a ring homomorphism on every rational
//! function whose denominator is prime to `π`; sending `y` to a nonzero
//! residue extends it to Laurent polynomials in `y`. A nonzero image proves a
//! nonzero preimage, which is what the exhaustive word sweeps rely on: they
//! only fall back to exact arithmetic when the image is inconclusive.
//!
//! Elements are stored as discrete logarithms to a primitive root, so
//! multiplication is an integer addition and addition is one table lookup.

use std::fmt;

use super::fp::{mul_mod, sub_mod};
use super::poly::monic_polys;
use super::{BiRat, Poly, RatFunc, YLaurent};

/// A residue-field element: a discrete log, or [`Gf::ZERO`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf(u32);

impl Gf {
    pub const ZERO: Gf = Gf(u32::MAX);
    pub const ONE: Gf = Gf(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

pub struct ResidueField {
    p: u32,
    modulus: Poly,
    order: u32,
    /// base-p digit index -> log
    log: Vec<u32>,
    /// n -> log(1 + g^n), `u32::MAX` where 1 + g^n = 0
    zech: Vec<u32>,
    y_image: Gf,
}

impl fmt::Debug for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResidueField")
            .field("p", &self.p)
            .field("modulus", &self.modulus.to_string())
            .finish()
    }
}

impl ResidueField {
    /// The smallest field `F_{p^k}` with at least `min_size` elements whose
    /// modulus is a primitive polynomial dividing none of `avoid`.
    pub fn new(p: u32, min_size: u64, avoid: &[Poly]) -> Self {
        let mut k = 1usize;
        while (p as u64).pow(k as u32) < min_size {
            k += 1;
        }
        loop {
            let q = (p as u64).pow(k as u32);
            assert!(q < u32::MAX as u64 / 2, "residue field too large");
            let found = monic_polys(p, k).find(|pi| {
                pi.is_irreducible()
                    && avoid.iter().all(|a| !a.is_zero() && !a.rem(pi).unwrap().is_zero())
                    && x_is_primitive(pi, q)
            });
            if let Some(pi) = found {
                return Self::build(pi, q as u32);
            }
            k += 1;
        }
    }

    fn build(modulus: Poly, q: u32) -> Self {
        let p = modulus.p();
        let k = modulus.degree().unwrap();
        let order = q - 1;
        let mut log = vec![u32::MAX; q as usize];
        let mut exp = vec![0u32; order as usize];
        // Walk the powers of x as digit vectors.
        let mut cur = vec![0u32; k];
        cur[0] = 1;
        for i in 0..order {
            let idx = digits_to_index(p, &cur);
            exp[i as usize] = idx;
            log[idx as usize] = i;
            // multiply by x modulo the monic modulus
            let top = cur[k - 1];
            for j in (1..k).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (j, slot) in cur.iter_mut().enumerate() {
                    *slot = sub_mod(p, *slot, mul_mod(p, top, modulus.coeff(j)));
                }
            }
        }
        let zech = (0..order)
            .map(|n| {
                let idx = exp[n as usize];
                // adding 1 touches only the constant digit
                let c0 = idx % p;
                let bumped = idx - c0 + (c0 + 1) % p;
                if bumped == 0 {
                    u32::MAX
                } else {
                    log[bumped as usize]
                }
            })
            .collect();
        let mut field = Self { p, modulus, order, log, zech, y_image: Gf::ONE };
        // A fixed residue for y, away from the small powers of x.
        field.y_image = Gf((order / 3 + 7) % order);
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn size(&self) -> u32 {
        self.order + 1
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        let s = a.0 as u64 + b.0 as u64;
        Gf((s % self.order as u64) as u32)
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        // a + b = a·(1 + b/a)
        let n = (b.0 + self.order - a.0) % self.order;
        match self.zech[n as usize] {
            u32::MAX => Gf::ZERO,
            z => Gf(((a.0 as u64 + z as u64) % self.order as u64) as u32),
        }
    }

    pub fn neg(&self, a: Gf) -> Gf {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        Gf(((a.0 as u64 + (self.order / 2) as u64) % self.order as u64) as u32)
    }

    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Gf) -> Option<Gf> {
        (!a.is_zero()).then(|| Gf((self.order - a.0) % self.order))
    }

    pub fn constant(&self, c: u32) -> Gf {
        let c = c % self.p;
        if c == 0 {
            Gf::ZERO
        } else {
            Gf(self.log[c as usize])
        }
    }

    /// The image of x, which is the primitive root itself.
    pub fn x(&self) -> Gf {
        Gf(1 % self.order)
    }

    pub fn y(&self) -> Gf {
        self.y_image
    }

    fn pow(&self, a: Gf, e: i64) -> Option<Gf> {
        if a.is_zero() {
            return (e > 0).then_some(Gf::ZERO);
        }
        let e = e.rem_euclid(self.order as i64) as u64;
        Some(Gf(((a.0 as u64 * e) % self.order as u64) as u32))
    }

    pub fn eval_poly(&self, f: &Poly) -> Gf {
        let x = self.x();
        f.coeffs()
            .iter()
            .rev()
            .fold(Gf::ZERO, |acc, &c| self.add(self.mul(acc, x), self.constant(c)))
    }

    /// `None` when the denominator vanishes modulo the field's modulus.
    pub fn eval_ratfunc(&self, f: &RatFunc) -> Option<Gf> {
        let den = self.inv(self.eval_poly(f.den()))?;
        Some(self.mul(self.eval_poly(f.num()), den))
    }

    pub fn eval_laurent(&self, f: &YLaurent) -> Option<Gf> {
        let mut acc = Gf::ZERO;
        for (l, c) in f.terms() {
            let term = self.mul(self.eval_ratfunc(c)?, self.pow(self.y(), l as i64)?);
            acc = self.add(acc, term);
        }
        Some(acc)
    }

    pub fn eval_birat(&self, f: &BiRat) -> Option<Gf> {
        let den = self.inv(self.eval_laurent(f.den())?)?;
        Some(self.mul(self.eval_laurent(f.num())?, den))
    }

    /// Digit vector (coefficients of 1, x, ..., x^{k-1}) of an element.
    pub fn digits(&self, a: Gf) -> Vec<u32> {
        let k = self.modulus.degree().unwrap();
        if a.is_zero() {
            return vec![0; k];
        }
        // Recompute g^a by square-and-multiply on polynomials.
        let x = Poly::x(self.p);
        let mut acc = Poly::one(self.p);
        let mut sq = x;
        let mut e = a.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).rem(&self.modulus).unwrap();
            }
            sq = sq.mul(&sq).rem(&self.modulus).unwrap();
            e >>= 1;
        }
        (0..k).map(|i| acc.coeff(i)).collect()
    }
}

fn digits_to_index(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn x_is_primitive(pi: &Poly, q: u64) -> bool {
    let p = pi.p();
    let order = q - 1;
    if order == 1 {
        return true;
    }
    let powmod = |mut e: u64| {
        let mut acc = Poly::one(p);
        let mut sq = Poly::x(p).rem(pi).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).rem(pi).unwrap();
            }
            sq = sq.mul(&sq).rem(pi).unwrap();
            e >>= 1;
        }
        acc
    };
    prime_factors(order).into_iter().all(|r| !powmod(order / r).is_one())
}
