//! Exact arithmetic in `F_p`, `F_p[x]`, `F_p(x)`, Laurent polynomials in `y`
//! over `F_p(x)`, and `F_p(x, y)`.
//!
//! The prime is a runtime value carried by every element. Mixing elements of
//! different characteristic through the infallible operations panics; the
//! `try_*` variants report [`ArithError::ModulusMismatch`] instead.

mod birat;
mod fp;
mod laurent;
mod parse;
mod poly;
mod ratfunc;
pub mod residue;

use std::fmt;

use thiserror::Error;

pub use birat::BiRat;
pub use fp::{Fp, PrimeField};
pub use laurent::YLaurent;
pub use parse::{parse_birat, parse_ratfunc, ParseError};
pub use poly::Poly;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// A field whose characteristic is known at runtime.
///
/// Every element knows its modulus, so constants can be produced from any
/// element of the field via `zero_like`/`one_like`/`int_like`.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn modulus(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn check_modulus(&self, rhs: &Self) -> Result<(), ArithError> {
        if self.modulus() == rhs.modulus() {
            Ok(())
        } else {
            Err(ArithError::ModulusMismatch {
                left: self.modulus(),
                right: rhs.modulus(),
            })
        }
    }

    fn try_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_modulus(rhs)?;
        Ok(self.add(rhs))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_modulus(rhs)?;
        Ok(self.mul(rhs))
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_modulus(rhs)?;
        self.div(rhs)
    }
}

macro_rules! serialize_as_string {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
    )*};
}

serialize_as_string!(Poly, RatFunc, YLaurent, BiRat);

pub(crate) fn assert_same_modulus(a: u32, b: u32) {
    assert_eq!(a, b, "operands live over different prime fields");
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
