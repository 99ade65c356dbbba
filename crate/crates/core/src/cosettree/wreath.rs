//! `F ≀ Z` and `F ≀ Z²`: finitely supported lamp configurations times a
//! shift, with `t x_j t⁻¹ = x_{j+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use super::group::FiniteGroup;
use super::CosetError;

/// Lamp positions, which double as shifts.
pub trait Position: Copy + Ord + Hash + fmt::Debug {
    const ZERO: Self;
    fn add(self, o: Self) -> Self;
    fn neg(self) -> Self;
    /// Coordinate along `axis`.
    fn coord(self, axis: usize) -> i64;
}

impl Position for i64 {
    const ZERO: Self = 0;
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn neg(self) -> Self {
        -self
    }
    fn coord(self, _axis: usize) -> i64 {
        self
    }
}

impl Position for (i64, i64) {
    const ZERO: Self = (0, 0);
    fn add(self, o: Self) -> Self {
        (self.0 + o.0, self.1 + o.1)
    }
    fn neg(self) -> Self {
        (-self.0, -self.1)
    }
    fn coord(self, axis: usize) -> i64 {
        if axis == 0 {
            self.0
        } else {
            self.1
        }
    }
}

/// `f · shift`, where `f` maps positions to non-identity labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElem<P: Position> {
    pub group: Arc<FiniteGroup>,
    pub support: BTreeMap<P, u8>,
    pub shift: P,
}

pub type LampElem = WreathElem<i64>;
pub type Lamp2Elem = WreathElem<(i64, i64)>;

impl<P: Position> WreathElem<P> {
    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        Self { group, support: BTreeMap::new(), shift: P::ZERO }
    }

    /// `x_pos` carrying `label`.
    pub fn lamp(group: Arc<FiniteGroup>, pos: P, label: u8) -> Self {
        let mut support = BTreeMap::new();
        if label != 0 {
            support.insert(pos, label);
        }
        Self { group, support, shift: P::ZERO }
    }

    pub fn shift_by(group: Arc<FiniteGroup>, shift: P) -> Self {
        Self { group, support: BTreeMap::new(), shift }
    }

    pub fn label(&self, pos: P) -> u8 {
        self.support.get(&pos).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty() && self.shift == P::ZERO
    }

    /// `(f, k)·(f', k') = (f · f'(· − k), k + k')`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut support = self.support.clone();
        for (&q, &l) in &o.support {
            let pos = q.add(self.shift);
            let v = self.group.mul(self.label(pos), l);
            if v == 0 {
                support.remove(&pos);
            } else {
                support.insert(pos, v);
            }
        }
        Self { group: self.group.clone(), support, shift: self.shift.add(o.shift) }
    }

    pub fn inverse(&self) -> Self {
        let support = self.support.iter().map(|(&q, &l)| (q.add(self.shift.neg()), self.group.inv(l))).collect();
        Self { group: self.group.clone(), support, shift: self.shift.neg() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(self.group.clone()), |acc, _| acc.mul(&base))
    }
}

fn fmt_lamps<P: Position>(
    f: &mut fmt::Formatter<'_>,
    e: &WreathElem<P>,
    pos: impl Fn(P) -> String,
    shift: &[(char, i64)],
) -> fmt::Result {
    let mut parts: Vec<String> =
        e.support.iter().map(|(&q, &l)| format!("x[{}]{}", pos(q), e.group.label_suffix(l))).collect();
    for &(name, k) in shift {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    if parts.is_empty() {
        write!(f, "1")
    } else {
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for LampElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lamps(f, self, |q| q.to_string(), &[('t', self.shift)])
    }
}

impl fmt::Display for Lamp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lamps(f, self, |(i, j)| format!("{i},{j}"), &[('s', self.shift.0), ('t', self.shift.1)])
    }
}

fn parse_exponent(tok: &str, base: &str) -> Option<i64> {
    let rest = tok.strip_prefix(base)?;
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.parse().ok()
}

/// Splits `x[<pos>]<suffix>` into position text and label suffix.
fn split_lamp(tok: &str) -> Option<(&str, &str)> {
    let rest = tok.strip_prefix("x[")?;
    let close = rest.find(']')?;
    Some((&rest[..close], &rest[close + 1..]))
}

fn lamp_label(group: &FiniteGroup, suffix: &str, tok: &str) -> Result<u8, CosetError> {
    group
        .label_from_suffix(suffix)
        .ok_or_else(|| CosetError::Parse(format!("bad label in {tok:?} for group {}", group.name())))
}

fn bad(tok: &str) -> CosetError {
    CosetError::Parse(format!("unexpected token {tok:?}"))
}

impl LampElem {
    /// A product of tokens `x[j]<label>`, `t`, `t^k`, or `1`.
    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self, CosetError> {
        let mut acc = Self::identity(group.clone());
        for tok in text.split_whitespace() {
            let factor = if tok == "1" {
                continue;
            } else if let Some((pos, suffix)) = split_lamp(tok) {
                let pos: i64 = pos.trim().parse().map_err(|_| bad(tok))?;
                Self::lamp(group.clone(), pos, lamp_label(&group, suffix, tok)?)
            } else if let Some(k) = parse_exponent(tok, "t") {
                Self::shift_by(group.clone(), k)
            } else {
                return Err(bad(tok));
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

impl Lamp2Elem {
    /// A product of tokens `x[i,j]<label>`, `s^m`, `t^n`, or `1`.
    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self, CosetError> {
        let mut acc = Self::identity(group.clone());
        for tok in text.split_whitespace() {
            let factor = if tok == "1" {
                continue;
            } else if let Some((pos, suffix)) = split_lamp(tok) {
                let (i, j) = pos.split_once(',').ok_or_else(|| bad(tok))?;
                let pos = (i.trim().parse().map_err(|_| bad(tok))?, j.trim().parse().map_err(|_| bad(tok))?);
                Self::lamp(group.clone(), pos, lamp_label(&group, suffix, tok)?)
            } else if let Some(m) = parse_exponent(tok, "s") {
                Self::shift_by(group.clone(), (m, 0))
            } else if let Some(n) = parse_exponent(tok, "t") {
                Self::shift_by(group.clone(), (0, n))
            } else {
                return Err(bad(tok));
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}
