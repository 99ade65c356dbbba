//! Discrete valuations on `F_p(x)`, Gauss extensions to `F_p(x, y)`, and
//! truncated Laurent expansions at rational places.

mod series;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::funcfield::{parse_ratfunc, BiRat, Field, ParseError, Poly, RatFunc, YLaurent};

pub use series::{laurent_expand, LaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("place polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("place polynomial must have degree at least 1")]
    ConstantPlace,
    #[error("operation needs a degree-1 place, got degree {0}")]
    UnsupportedPlaceDegree(usize),
    #[error("unknown place '{0}' (expected inf, x, or poly:<expr>)")]
    UnknownPlace(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An integer valuation or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Self::Finite(v) if v < 0)
    }

    /// `n · self`; `+∞` stays `+∞` for positive `n`.
    pub fn scale(self, n: i64) -> Self {
        match self {
            Self::Finite(v) => Self::Finite(v * n),
            Self::Infinite if n > 0 => Self::Infinite,
            Self::Infinite => panic!("non-positive multiple of an infinite valuation"),
        }
    }

    /// `self - rhs` for a finite right-hand side.
    pub fn minus(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a - b),
            (Self::Infinite, Self::Finite(_)) => Self::Infinite,
            (_, Self::Infinite) => panic!("subtracting an infinite valuation"),
        }
    }
}

impl Add for Valuation {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a + b),
            _ => Self::Infinite,
        }
    }
}

impl Add<i64> for Valuation {
    type Output = Self;
    fn add(self, rhs: i64) -> Self {
        self + Self::Finite(rhs)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Infinite, Self::Infinite) => Ordering::Equal,
            (Self::Infinite, Self::Finite(_)) => Ordering::Greater,
            (Self::Finite(_), Self::Infinite) => Ordering::Less,
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => s.serialize_i64(*v),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Self::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Self::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// A place of `F_p(x)`: the degree valuation at infinity, or the order of
/// vanishing at a monic irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Irreducible(Poly),
}

impl Place {
    /// Validates irreducibility and makes the polynomial monic.
    pub fn irreducible(pi: Poly) -> Result<Self, ValuationError> {
        if pi.degree().unwrap_or(0) == 0 {
            return Err(ValuationError::ConstantPlace);
        }
        let pi = pi.monic().0;
        if !pi.is_irreducible() {
            return Err(ValuationError::NotIrreducible(pi.to_string()));
        }
        Ok(Self::Irreducible(pi))
    }

    /// The place `x = 0`.
    pub fn at_zero(p: u32) -> Self {
        Self::Irreducible(Poly::x(p))
    }

    /// `"inf"`, `"x"`, or `"poly:<expr>"`.
    pub fn parse(text: &str, p: u32) -> Result<Self, ValuationError> {
        let text = text.trim();
        match text {
            "inf" | "infinity" => Ok(Self::Infinity),
            "x" => Ok(Self::at_zero(p)),
            _ => {
                let Some(expr) = text.strip_prefix("poly:") else {
                    return Err(ValuationError::UnknownPlace(text.to_string()));
                };
                let f = parse_ratfunc(expr, p)?;
                if !f.is_poly() {
                    return Err(ValuationError::UnknownPlace(text.to_string()));
                }
                Self::irreducible(f.num().clone())
            }
        }
    }

    /// Degree of the residue field over `F_p`.
    pub fn degree(&self) -> usize {
        match self {
            Self::Infinity => 1,
            Self::Irreducible(pi) => pi.degree().unwrap(),
        }
    }

    /// A uniformiser: `1/x` at infinity, `π` otherwise.
    pub fn uniformizer(&self, p: u32) -> RatFunc {
        match self {
            Self::Infinity => RatFunc::x(p).inv().expect("x is nonzero"),
            Self::Irreducible(pi) => RatFunc::from_poly(pi.clone()),
        }
    }

    /// The root `a` of a linear place `x - a`, or `None` at infinity.
    pub(crate) fn linear_root(&self) -> Result<Option<u32>, ValuationError> {
        match self {
            Self::Infinity => Ok(None),
            Self::Irreducible(pi) if pi.degree() == Some(1) => {
                Ok(Some((pi.p() - pi.coeff(0)) % pi.p()))
            }
            Self::Irreducible(pi) => Err(ValuationError::UnsupportedPlaceDegree(pi.degree().unwrap())),
        }
    }

    /// Valuation of a polynomial.
    pub fn val_poly(&self, f: &Poly) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinite;
        }
        match self {
            Self::Infinity => Valuation::Finite(-(f.degree().unwrap() as i64)),
            Self::Irreducible(pi) => Valuation::Finite(f.multiplicity(pi).unwrap() as i64),
        }
    }

    pub fn val(&self, f: &RatFunc) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinite;
        }
        self.val_poly(f.num()).minus(self.val_poly(f.den()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Irreducible(pi) if pi.degree() == Some(1) && pi.coeff(0) == 0 => write!(f, "x"),
            Self::Irreducible(pi) => write!(f, "poly:{pi}"),
        }
    }
}

/// `val(f)` at a place of `F_p(x)`.
pub fn val(f: &RatFunc, place: &Place) -> Valuation {
    place.val(f)
}

/// A Gauss valuation on `F_p(x, y)`: the base place on coefficients, with
/// `y` assigned the integer weight `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussPlace {
    pub base: Place,
    pub weight: i64,
}

impl GaussPlace {
    pub fn new(base: Place, weight: i64) -> Self {
        Self { base, weight }
    }

    /// `min_l (val(c_l) + l·w)` and whether the minimum is attained once.
    pub fn val_laurent_strict(&self, f: &YLaurent) -> (Valuation, bool) {
        let mut best = Valuation::Infinite;
        let mut count = 0usize;
        for (l, c) in f.terms() {
            let v = self.base.val(c) + (l as i64) * self.weight;
            match v.cmp(&best) {
                Ordering::Less => {
                    best = v;
                    count = 1;
                }
                Ordering::Equal => count += 1,
                Ordering::Greater => {}
            }
        }
        (best, count <= 1)
    }

    pub fn val_laurent(&self, f: &YLaurent) -> Valuation {
        self.val_laurent_strict(f).0
    }

    pub fn val(&self, f: &BiRat) -> Valuation {
        self.val_strict(f).0
    }

    /// Numerator minus denominator valuation; the flag is set only when both
    /// minima are attained by a single term.
    pub fn val_strict(&self, f: &BiRat) -> (Valuation, bool) {
        if f.is_zero() {
            return (Valuation::Infinite, true);
        }
        let (vn, un) = self.val_laurent_strict(f.num());
        let (vd, ud) = self.val_laurent_strict(f.den());
        (vn.minus(vd), un && ud)
    }
}

impl fmt::Display for GaussPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (v(y) = {})", self.base, self.weight)
    }
}

pub fn gauss_val(f: &BiRat, gp: &GaussPlace) -> Valuation {
    gp.val(f)
}

pub fn gauss_val_strict(f: &BiRat, gp: &GaussPlace) -> (Valuation, bool) {
    gp.val_strict(f)
}

/// Something that assigns valuations to elements of a field layer.
pub trait Valuer<F> {
    fn value(&self, f: &F) -> Valuation;
}

impl Valuer<RatFunc> for Place {
    fn value(&self, f: &RatFunc) -> Valuation {
        self.val(f)
    }
}

impl Valuer<BiRat> for GaussPlace {
    fn value(&self, f: &BiRat) -> Valuation {
        self.val(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse_birat;

    fn rf(s: &str, p: u32) -> RatFunc {
        parse_ratfunc(s, p).unwrap()
    }

    #[test]
    fn degree_valuation_examples() {
        let inf = Place::Infinity;
        assert_eq!(inf.val(&rf("x^3+1", 5)), Valuation::Finite(-3));
        assert_eq!(inf.val(&rf("(1-x)/x^2", 5)), Valuation::Finite(1));
        assert_eq!(inf.val(&rf("(2*x^3+2*x^2-1)/x", 5)), Valuation::Finite(-2));
        assert_eq!(inf.val(&RatFunc::zero(5)), Valuation::Infinite);
    }

    #[test]
    fn order_at_zero_differs_from_degree_valuation() {
        // The same X as above has order -2 at x = 0, not 1.
        assert_eq!(Place::at_zero(5).val(&rf("(1-x)/x^2", 5)), Valuation::Finite(-2));
        let pi = Place::parse("poly:x^2+1", 3).unwrap();
        assert_eq!(pi.val(&rf("(x^2+1)^3/(x*(x^2+1))", 3)), Valuation::Finite(2));
    }

    #[test]
    fn place_parsing() {
        assert_eq!(Place::parse("inf", 5).unwrap(), Place::Infinity);
        assert_eq!(Place::parse("x", 5).unwrap(), Place::at_zero(5));
        assert_eq!(
            Place::parse("poly:2*x+2", 5).unwrap(),
            Place::Irreducible(Poly::from_coeffs(5, &[1, 1]))
        );
        assert!(matches!(Place::parse("poly:x^2-1", 5), Err(ValuationError::NotIrreducible(_))));
        assert!(matches!(Place::parse("poly:3", 5), Err(ValuationError::ConstantPlace)));
        assert!(matches!(Place::parse("zero", 5), Err(ValuationError::UnknownPlace(_))));
        for s in ["inf", "x", "poly:x + 2"] {
            assert_eq!(Place::parse(&Place::parse(s, 7).unwrap().to_string(), 7).unwrap(),
                Place::parse(s, 7).unwrap());
        }
    }

    #[test]
    fn gauss_examples() {
        let p = 5;
        for w in [-3, 0, 4] {
            let gp = GaussPlace::new(Place::Infinity, w);
            assert_eq!(gp.val(&BiRat::y(p)), Valuation::Finite(w));
            let f = parse_birat("x*y^2 + x^3*y", p).unwrap();
            assert_eq!(gp.val(&f), Valuation::Finite((-1 + 2 * w).min(-3 + w)));
        }
        let gp0 = GaussPlace::new(Place::Infinity, 0);
        assert_eq!(gp0.val_strict(&parse_birat("y + x*y", p).unwrap()), (Valuation::Finite(-1), true));
        let gpm = GaussPlace::new(Place::Infinity, -1);
        assert_eq!(gpm.val_strict(&parse_birat("y + x", p).unwrap()), (Valuation::Finite(-1), false));
        assert_eq!(gp0.val_strict(&BiRat::zero(p)), (Valuation::Infinite, true));
    }

    #[test]
    fn valuation_serde_uses_inf_string() {
        let v = vec![Valuation::Finite(-2), Valuation::Infinite];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[-2,"inf"]"#);
        let back: Vec<Valuation> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
