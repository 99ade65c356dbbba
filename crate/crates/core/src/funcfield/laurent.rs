use std::collections::BTreeMap;
use std::fmt;

use super::{assert_same_modulus, Field, RatFunc};

/// A Laurent polynomial in `y` with coefficients in `F_p(x)`.
///
/// Sparse: only nonzero coefficients are stored, the empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YLaurent {
    p: u32,
    terms: BTreeMap<i32, RatFunc>,
}

impl YLaurent {
    pub fn zero(p: u32) -> Self {
        Self { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(RatFunc::one(p))
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · y^l`.
    pub fn monomial(c: RatFunc, l: i32) -> Self {
        let mut out = Self::zero(c.modulus());
        if !c.is_zero() {
            out.terms.insert(l, c);
        }
        out
    }

    pub fn y(p: u32) -> Self {
        Self::monomial(RatFunc::one(p), 1)
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (i32, RatFunc)>) -> Self {
        let mut out = Self::zero(p);
        for (l, c) in terms {
            out.add_term(l, c);
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &RatFunc)> {
        self.terms.iter().map(|(&l, c)| (l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: i32) -> RatFunc {
        self.terms.get(&l).cloned().unwrap_or_else(|| RatFunc::zero(self.p))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `y`.
    pub fn leading(&self) -> Option<(i32, &RatFunc)> {
        self.terms.iter().next_back().map(|(&l, c)| (l, c))
    }

    /// The element of `F_p(x)` if no positive or negative power of `y` occurs.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero(self.p)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, l: i32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&l);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(l, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (&l, c) in &other.terms {
            out.add_term(l, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(&l, c)| (l, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_same_modulus(self.p, rhs.p);
        let mut out = Self::zero(self.p);
        for (&l1, c1) in &self.terms {
            for (&l2, c2) in &rhs.terms {
                out.add_term(l1 + l2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.p);
        }
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(&l, a)| (l, a.mul(c))).collect(),
        }
    }

    /// Multiplies by `y^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(&l, c)| (l + k, c.clone())).collect(),
        }
    }

    /// The substitution `y ↦ y·x^n`: the coefficient of `y^l` picks up `x^{n·l}`.
    pub fn substitute_y(&self, n: i32) -> Self {
        let x = RatFunc::x(self.p);
        Self {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(&l, c)| {
                    let factor = x.pow(n as i64 * l as i64).expect("x is nonzero");
                    (l, c.mul(&factor))
                })
                .collect(),
        }
    }
}

impl fmt::Display for YLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&l, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = c.to_string();
            let coeff = if coeff.contains(' ') || coeff.contains('/') {
                format!("({coeff})")
            } else {
                coeff
            };
            match l {
                0 => write!(f, "{coeff}")?,
                _ => {
                    let ypow = if l == 1 { "y".to_string() } else { format!("y^{l}") };
                    if c.is_one() {
                        write!(f, "{ypow}")?
                    } else {
                        write!(f, "{coeff}*{ypow}")?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;

    fn xpow(p: u32, k: usize) -> RatFunc {
        RatFunc::from_poly(Poly::monomial(p, 1, k))
    }

    #[test]
    fn substitution_examples() {
        let p = 5;
        assert_eq!(YLaurent::y(p).substitute_y(3), YLaurent::monomial(xpow(p, 3), 1));
        let c = YLaurent::constant(RatFunc::constant(p, 2));
        assert_eq!(c.substitute_y(7), c);
        // x·y² + x³·y ↦ x·x²·y² + x³·x·y, computed term by term.
        let f = YLaurent::from_terms(p, [(2, xpow(p, 1)), (1, xpow(p, 3))]);
        let expected = YLaurent::from_terms(p, [(2, xpow(p, 3)), (1, xpow(p, 4))]);
        assert_eq!(f.substitute_y(1), expected);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = 3;
        let f = YLaurent::from_terms(p, [(1, RatFunc::one(p)), (-2, xpow(p, 1))]);
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.min_exp(), Some(-2));
        assert_eq!(f.max_exp(), Some(1));
        assert_eq!(f.to_string(), "y + x*y^-2");
    }
}
