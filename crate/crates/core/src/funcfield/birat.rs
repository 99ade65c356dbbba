use std::fmt;

use super::{assert_same_modulus, ArithError, Field, RatFunc, YLaurent};

/// An element of `F_p(x, y)` stored as a fraction of Laurent polynomials in
/// `y` over `F_p(x)`.
///
/// The denominator is shifted so its lowest `y`-exponent is 0 and scaled so
/// the coefficient there is 1. A monomial denominator therefore collapses to
/// 1, so Laurent polynomials (every matrix entry met in practice) are stored
/// with denominator 1. This is not a unique form in general; equality is
/// decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct BiRat {
    num: YLaurent,
    den: YLaurent,
}

impl BiRat {
    pub fn new(num: YLaurent, den: YLaurent) -> Result<Self, ArithError> {
        assert_same_modulus(num.p(), den.p());
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: YLaurent, den: YLaurent) -> Self {
        let p = num.p();
        if num.is_zero() {
            return Self { num, den: YLaurent::one(p) };
        }
        if den.is_one() {
            return Self { num, den };
        }
        let (low, c) = {
            let (l, c) = den.terms().next().expect("nonzero denominator");
            (l, c.clone())
        };
        let c_inv = c.inv().expect("stored coefficients are nonzero");
        if den.len() == 1 {
            return Self { num: num.shift(-low).scale(&c_inv), den: YLaurent::one(p) };
        }
        Self {
            num: num.shift(-low).scale(&c_inv),
            den: den.shift(-low).scale(&c_inv),
        }
    }

    pub fn from_laurent(num: YLaurent) -> Self {
        let p = num.p();
        Self { num, den: YLaurent::one(p) }
    }

    pub fn from_ratfunc(c: RatFunc) -> Self {
        Self::from_laurent(YLaurent::constant(c))
    }

    pub fn zero(p: u32) -> Self {
        Self::from_laurent(YLaurent::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::from_laurent(YLaurent::one(p))
    }

    pub fn x(p: u32) -> Self {
        Self::from_ratfunc(RatFunc::x(p))
    }

    pub fn y(p: u32) -> Self {
        Self::from_laurent(YLaurent::y(p))
    }

    pub fn num(&self) -> &YLaurent {
        &self.num
    }

    pub fn den(&self) -> &YLaurent {
        &self.den
    }

    /// The Laurent polynomial if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&YLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    /// The element of `F_p(x)` if `y` does not occur.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        self.as_laurent().and_then(YLaurent::as_constant)
    }

    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    /// The substitution `y ↦ y·x^n`, a field automorphism of `F_p(x, y)`.
    pub fn substitute_y(&self, n: i32) -> Self {
        Self::normalize(self.num.substitute_y(n), self.den.substitute_y(n))
    }
}

impl PartialEq for BiRat {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for BiRat {}

impl Field for BiRat {
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
        Self::from_ratfunc(RatFunc::constant(self.modulus(), n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_laurent(self.num.mul(&rhs.num));
        }
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |l: &YLaurent| {
            let s = l.to_string();
            if s.contains(' ') || s.contains('/') || s.contains('*') {
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
