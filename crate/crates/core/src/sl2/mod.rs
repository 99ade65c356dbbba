//! 2×2 matrices over the field layers, trace classification, the
//! two-parameter commutator family and the diagonal conjugation `diag(1, y)`.

mod family;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcfield::{parse_birat, parse_ratfunc, ArithError, BiRat, Field, ParseError, RatFunc};
use crate::valuation::{Valuation, Valuer};

pub use family::{builtin_family, matfrm_pair, shalen_extend, FamilyFormulas, FamilyParams, MatfrmPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is not 1")]
    NotUnimodular,
    #[error("parameter {0} is zero")]
    ZeroParameter(&'static str),
    #[error("degenerate parameters: {0} vanishes")]
    DegenerateXY(&'static str),
    #[error("matrix syntax: {0}")]
    MatrixSyntax(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<F> {
    pub m11: F,
    pub m12: F,
    pub m21: F,
    pub m22: F,
}

impl<F: Field> Mat2<F> {
    pub fn new(m11: F, m12: F, m21: F, m22: F) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity_like(e: &F) -> Self {
        Self::diag(e.one_like(), e.one_like())
    }

    pub fn diag(a: F, b: F) -> Self {
        let z = a.zero_like();
        Self::new(a, z.clone(), z, b)
    }

    pub fn entries(&self) -> [&F; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn modulus(&self) -> u32 {
        self.m11.modulus()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.m11.mul(&o.m11).add(&self.m12.mul(&o.m21)),
            self.m11.mul(&o.m12).add(&self.m12.mul(&o.m22)),
            self.m21.mul(&o.m11).add(&self.m22.mul(&o.m21)),
            self.m21.mul(&o.m12).add(&self.m22.mul(&o.m22)),
        )
    }

    pub fn det(&self) -> F {
        self.m11.mul(&self.m22).sub(&self.m12.mul(&self.m21))
    }

    pub fn trace(&self) -> F {
        self.m11.add(&self.m22)
    }

    /// The adjugate, which is the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.m22.clone(), self.m12.neg(), self.m21.neg(), self.m11.clone())
    }

    pub fn inv(&self) -> Result<Self, Sl2Error> {
        let det = self.det();
        if det.is_one() {
            return Ok(self.adjugate());
        }
        let d = det.inv().map_err(|_| Sl2Error::Singular)?;
        let adj = self.adjugate();
        Ok(Self::new(adj.m11.mul(&d), adj.m12.mul(&d), adj.m21.mul(&d), adj.m22.mul(&d)))
    }

    pub fn pow(&self, n: i64) -> Result<Self, Sl2Error> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::identity_like(&self.m11);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m22.is_one() && self.m12.is_zero() && self.m21.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.m12.is_zero() && self.m21.is_zero()
    }

    pub fn is_sl2(&self) -> bool {
        self.det().is_one()
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self, Sl2Error> {
        Ok(g.mul(self).mul(&g.inv()?))
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat2<G> {
        Mat2 { m11: f(&self.m11), m12: f(&self.m12), m21: f(&self.m21), m22: f(&self.m22) }
    }

    /// Entries as display strings, row-major.
    pub fn entry_strings(&self) -> [[String; 2]; 2] {
        [[self.m11.to_string(), self.m12.to_string()], [self.m21.to_string(), self.m22.to_string()]]
    }
}

/// `a b a⁻¹ b⁻¹`.
pub fn commutator<F: Field>(a: &Mat2<F>, b: &Mat2<F>) -> Result<Mat2<F>, Sl2Error> {
    Ok(a.mul(b).mul(&a.inv()?).mul(&b.inv()?))
}

impl<F: Field> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

impl Mat2<RatFunc> {
    pub fn parse(text: &str, p: u32) -> Result<Self, Sl2Error> {
        parse_mat2(text, p, parse_ratfunc)
    }

    pub fn lift(&self) -> Mat2<BiRat> {
        self.map(|e| BiRat::from_ratfunc(e.clone()))
    }
}

impl Mat2<BiRat> {
    pub fn parse(text: &str, p: u32) -> Result<Self, Sl2Error> {
        parse_mat2(text, p, parse_birat)
    }

    pub fn substitute_y(&self, n: i32) -> Self {
        self.map(|e| e.substitute_y(n))
    }

    /// The matrix over `F_p(x)` when no entry involves `y`.
    pub fn as_ratfunc(&self) -> Option<Mat2<RatFunc>> {
        Some(Mat2::new(
            self.m11.as_ratfunc()?,
            self.m12.as_ratfunc()?,
            self.m21.as_ratfunc()?,
            self.m22.as_ratfunc()?,
        ))
    }
}

/// Parses `[[e11, e12], [e21, e22]]`.
fn parse_mat2<F>(
    text: &str,
    p: u32,
    entry: impl Fn(&str, u32) -> Result<F, ParseError>,
) -> Result<Mat2<F>, Sl2Error> {
    let bad = |msg: &str| Sl2Error::MatrixSyntax(format!("{msg} in {text:?}"));
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("expected outer brackets"))?;
    let rows = split_top_level(inner);
    if rows.len() != 2 {
        return Err(bad("expected two rows"));
    }
    let mut cells = Vec::with_capacity(4);
    for row in rows {
        let row = row
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected row brackets"))?;
        let parts = split_top_level(row);
        if parts.len() != 2 {
            return Err(bad("expected two entries per row"));
        }
        for part in parts {
            cells.push(entry(part.trim(), p)?);
        }
    }
    let mut it = cells.into_iter();
    let mut next = || it.next().unwrap();
    Ok(Mat2 { m11: next(), m12: next(), m21: next(), m22: next() })
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsometryKind {
    Elliptic,
    Loxodromic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: IsometryKind,
    /// Translation length, `-2·v(tr)` for loxodromic elements and 0 otherwise.
    pub length: u64,
    pub trace_valuation: Valuation,
}

impl Classification {
    pub fn from_trace_valuation(v: Valuation) -> Self {
        match v {
            Valuation::Finite(t) if t < 0 => {
                Self { kind: IsometryKind::Loxodromic, length: (-2 * t) as u64, trace_valuation: v }
            }
            _ => Self { kind: IsometryKind::Elliptic, length: 0, trace_valuation: v },
        }
    }

    pub fn is_loxodromic(&self) -> bool {
        self.kind == IsometryKind::Loxodromic
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IsometryKind::Elliptic => write!(f, "elliptic (v(tr) = {})", self.trace_valuation),
            IsometryKind::Loxodromic => {
                write!(f, "loxodromic, length {} (v(tr) = {})", self.length, self.trace_valuation)
            }
        }
    }
}

pub fn classify<F: Field, V: Valuer<F>>(m: &Mat2<F>, place: &V) -> Result<Classification, Sl2Error> {
    if !m.is_sl2() {
        return Err(Sl2Error::NotUnimodular);
    }
    Ok(Classification::from_trace_valuation(place.value(&m.trace())))
}
