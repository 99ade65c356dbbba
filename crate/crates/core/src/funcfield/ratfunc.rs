use std::fmt;

use super::fp::inv_mod;
use super::{assert_same_modulus, ArithError, Field, Poly};

/// An element of `F_p(x)` in canonical form: coprime numerator and monic
/// denominator, with zero stored as `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        assert_same_modulus(num.p(), den.p());
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let p = num.p();
        if num.is_zero() {
            return Self { num, den: Poly::one(p) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.lead();
        if lc == 1 {
            Self { num, den }
        } else {
            let inv = inv_mod(p, lc).expect("nonzero");
            Self { num: num.scale(inv), den: den.scale(inv) }
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        let p = num.p();
        Self { num, den: Poly::one(p) }
    }

    pub fn zero(p: u32) -> Self {
        Self::from_poly(Poly::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::from_poly(Poly::one(p))
    }

    pub fn x(p: u32) -> Self {
        Self::from_poly(Poly::x(p))
    }

    pub fn constant(p: u32, c: i64) -> Self {
        Self::from_poly(Poly::constant(p, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Re-normalizes from the stored parts; the identity on canonical values.
    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }
}

impl Field for RatFunc {
    fn modulus(&self) -> u32 {
        self.num.p()
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.modulus())
    }

    fn one_like(&self) -> Self {
        Self::one(self.modulus())
    }

    fn int_like(&self, n: i64) -> Self {
        Self::constant(self.modulus(), n)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        // With g = gcd(b, d): a/b + c/d = (a·(d/g) + c·(b/g)) / (b·(d/g)).
        let g = self.den.gcd(&rhs.den);
        let (b_g, d_g) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let num = self.num.mul(&d_g).add(&rhs.num.mul(&b_g));
        let den = self.den.mul(&d_g);
        if g.is_one() {
            // Already coprime: any common factor of num and den would divide b·d.
            if num.is_zero() {
                return self.zero_like();
            }
            return Self { num, den };
        }
        Self::normalize(num, den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.modulus(), rhs.modulus());
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = (self.num.exact_div(&g1), rhs.den.exact_div(&g1));
        let (c, b) = (rhs.num.exact_div(&g2), self.den.exact_div(&g2));
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lc = den.lead();
        if lc == 1 {
            Self { num, den }
        } else {
            let inv = inv_mod(self.modulus(), lc).expect("nonzero");
            Self { num: num.scale(inv), den: den.scale(inv) }
        }
    }

    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lc = self.num.lead();
        let inv = inv_mod(self.modulus(), lc).expect("nonzero");
        Ok(Self { num: self.den.scale(inv), den: self.num.scale(inv) })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains(' ') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
