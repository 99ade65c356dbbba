//! Houghton's group `H₂ = FSym(Z) ⋊ ⟨t⟩` with `t(k) = k − 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::CosetError;

/// The bijection `j ↦ σ(j − shift)` of `Z`, i.e. `σ·t^shift`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoughtonElem {
    /// Moved points of `σ` only.
    pub perm: BTreeMap<i64, i64>,
    pub shift: i64,
}

fn sigma(perm: &BTreeMap<i64, i64>, a: i64) -> i64 {
    perm.get(&a).copied().unwrap_or(a)
}

/// `t^k σ t^-k`, which sends `a − k` to `σ(a) − k`.
fn conj(perm: &BTreeMap<i64, i64>, k: i64) -> BTreeMap<i64, i64> {
    perm.iter().map(|(&a, &b)| (a - k, b - k)).collect()
}

fn compose(outer: &BTreeMap<i64, i64>, inner: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let pts: BTreeSet<i64> = outer.keys().chain(inner.keys()).copied().collect();
    pts.into_iter()
        .map(|a| (a, sigma(outer, sigma(inner, a))))
        .filter(|(a, b)| a != b)
        .collect()
}

impl HoughtonElem {
    pub fn identity() -> Self {
        Self { perm: BTreeMap::new(), shift: 0 }
    }

    pub fn t_pow(k: i64) -> Self {
        Self { perm: BTreeMap::new(), shift: k }
    }

    /// The cycle `c₀ → c₁ → … → c₀`.
    pub fn cycle(points: &[i64]) -> Result<Self, CosetError> {
        let distinct: BTreeSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(CosetError::Parse(format!("cycle {points:?} repeats a point")));
        }
        let perm = if points.len() < 2 {
            BTreeMap::new()
        } else {
            points.iter().zip(points.iter().cycle().skip(1)).map(|(&a, &b)| (a, b)).collect()
        };
        Ok(Self { perm, shift: 0 })
    }

    /// A finite-support permutation given by its moved points.
    pub fn from_perm(perm: BTreeMap<i64, i64>) -> Self {
        Self { perm: perm.into_iter().filter(|(a, b)| a != b).collect(), shift: 0 }
    }

    pub fn apply(&self, j: i64) -> i64 {
        sigma(&self.perm, j - self.shift)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_empty() && self.shift == 0
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.perm.keys().copied()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { perm: compose(&self.perm, &conj(&o.perm, self.shift)), shift: self.shift + o.shift }
    }

    pub fn inverse(&self) -> Self {
        let inv: BTreeMap<i64, i64> = self.perm.iter().map(|(&a, &b)| (b, a)).collect();
        Self { perm: conj(&inv, -self.shift), shift: -self.shift }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// Disjoint cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.perm.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cyc = vec![start];
            let mut a = self.perm[&start];
            while a != start {
                seen.insert(a);
                cyc.push(a);
                a = self.perm[&a];
            }
            out.push(cyc);
        }
        out
    }

    /// A product of cycles `(a b c)` and powers `t`, `t^k`.
    pub fn parse(text: &str) -> Result<Self, CosetError> {
        let mut acc = Self::identity();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let factor = if let Some(body) = rest.strip_prefix('(') {
                let close = body.find(')').ok_or_else(|| CosetError::Parse(format!("unclosed cycle in {text:?}")))?;
                let pts = body[..close]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<i64>().map_err(|_| CosetError::Parse(format!("bad point {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rest = &body[close + 1..];
                Self::cycle(&pts)?
            } else {
                let end = rest.find(|c: char| c.is_whitespace() || c == '(').unwrap_or(rest.len());
                let tok = &rest[..end];
                rest = &rest[end..];
                match tok {
                    "1" => Self::identity(),
                    "t" => Self::t_pow(1),
                    _ => {
                        let k = tok
                            .strip_prefix("t^")
                            .and_then(|k| k.parse().ok())
                            .ok_or_else(|| CosetError::Parse(format!("unexpected token {tok:?}")))?;
                        Self::t_pow(k)
                    }
                }
            };
            acc = acc.mul(&factor);
            rest = rest.trim_start();
        }
        Ok(acc)
    }
}

impl fmt::Display for HoughtonElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .cycles()
            .iter()
            .map(|c| format!("({})", c.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        match self.shift {
            0 => {}
            1 => parts.push("t".into()),
            k => parts.push(format!("t^{k}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HoughtonElem {
        HoughtonElem::parse(s).unwrap()
    }

    #[test]
    fn composition_matches_pointwise() {
        let samples = ["(0 1 2) t", "(-1 3) t^-2", "t^3", "(5 6)(1 2 3)"];
        for a in samples {
            for b in samples {
                let (ga, gb) = (h(a), h(b));
                let ab = ga.mul(&gb);
                for j in -10..10 {
                    assert_eq!(ab.apply(j), ga.apply(gb.apply(j)), "{a} * {b} at {j}");
                }
                assert!(ga.mul(&ga.inverse()).is_identity());
            }
        }
    }

    #[test]
    fn shift_and_display() {
        assert_eq!(h("t").apply(5), 4);
        assert_eq!(h("t (0 1) t^-1"), h("(-1 0)"));
        let g = h("(2 0 1) t^-1");
        assert_eq!(g.to_string(), "(0 1 2) t^-1");
        assert_eq!(h(&g.to_string()), g);
        assert_eq!(h("1").to_string(), "1");
        assert!(HoughtonElem::parse("(0 0)").is_err());
    }
}
