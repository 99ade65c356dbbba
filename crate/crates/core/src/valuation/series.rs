use std::collections::BTreeMap;
use std::fmt;

use crate::funcfield::{Field, Poly, RatFunc};

use super::{Place, Valuation, ValuationError};

/// `Σ c_k π^k` over exponents `k < precision`, at a degree-1 place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    pub place: Place,
    pub p: u32,
    /// Exponent to nonzero coefficient in `F_p`.
    pub terms: BTreeMap<i64, u32>,
    /// Terms with exponent `>= precision` are unknown.
    pub precision: i64,
}

impl LaurentSeries {
    /// Exponent of the first nonzero term, if it lies below the precision.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, k: i64) -> u32 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// The finite sum of the known terms as a rational function.
    pub fn truncation(&self) -> RatFunc {
        let pi = self.place.uniformizer(self.p);
        self.terms.iter().fold(RatFunc::zero(self.p), |acc, (&k, &c)| {
            let term = pi.pow(k).expect("uniformiser is nonzero");
            acc.add(&term.mul(&RatFunc::constant(self.p, c as i64)))
        })
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match &self.place {
            Place::Infinity => "x".to_string(),
            Place::Irreducible(pi) if pi.coeff(0) == 0 => "x".to_string(),
            Place::Irreducible(pi) => format!("({pi})"),
        };
        let sign = if self.place == Place::Infinity { -1 } else { 1 };
        let mut first = true;
        for (&k, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = sign * k;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{base}")?,
                (1, e) => write!(f, "{base}^{e}")?,
                (c, 1) => write!(f, "{c}*{base}")?,
                (c, e) => write!(f, "{c}*{base}^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({base}^{})", sign * self.precision)
    }
}

/// Expansion of `f` in the uniformiser of a degree-1 place, keeping every
/// exponent below `precision`.
pub fn laurent_expand(f: &RatFunc, place: &Place, precision: i64) -> Result<LaurentSeries, ValuationError> {
    let p = f.num().p();
    let root = place.linear_root()?;
    let mut series = LaurentSeries { place: place.clone(), p, terms: BTreeMap::new(), precision };
    if f.is_zero() {
        return Ok(series);
    }
    // Rewrite f as t^shift · n(t)/d(t) with n(0), d(0) nonzero.
    let (n, d, shift) = match root {
        Some(a) => {
            let n = f.num().taylor_shift(a);
            let d = f.den().taylor_shift(a);
            let (n, vn) = strip_t(&n);
            let (d, vd) = strip_t(&d);
            (n, d, vn - vd)
        }
        None => {
            let dn = f.num().degree().unwrap() as i64;
            let dd = f.den().degree().unwrap() as i64;
            (f.num().reversed(), f.den().reversed(), dd - dn)
        }
    };
    let count = precision - shift;
    for (i, c) in power_series_div(&n, &d, count.max(0) as usize).into_iter().enumerate() {
        if c != 0 {
            series.terms.insert(shift + i as i64, c);
        }
    }
    Ok(series)
}

fn strip_t(f: &Poly) -> (Poly, i64) {
    let k = f.coeffs().iter().position(|&c| c != 0).unwrap();
    (Poly::from_coeffs(f.p(), &f.coeffs()[k..].iter().map(|&c| c as i64).collect::<Vec<_>>()), k as i64)
}

/// First `count` coefficients of `n/d` where `d(0) != 0`.
fn power_series_div(n: &Poly, d: &Poly, count: usize) -> Vec<u32> {
    let p = n.p() as u64;
    let d0_inv = RatFunc::constant(n.p(), d.coeff(0) as i64).inv().unwrap().num().coeff(0) as u64;
    let mut out: Vec<u32> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = n.coeff(k) as u64;
        for j in 1..=k.min(d.coeffs().len().saturating_sub(1)) {
            acc = (acc + p * p - (d.coeff(j) as u64 * out[k - j] as u64) % p) % p;
        }
        out.push(((acc * d0_inv) % p) as u32);
    }
    out
}

impl Place {
    /// Valuation through the series, for cross-checking the direct formula.
    pub fn val_by_series(&self, f: &RatFunc, precision: i64) -> Result<Valuation, ValuationError> {
        if f.is_zero() {
            return Ok(Valuation::Infinite);
        }
        Ok(laurent_expand(f, self, precision)?
            .valuation()
            .map(Valuation::Finite)
            .unwrap_or(Valuation::Infinite))
    }
}
