//! Words in the genus-2 surface group `⟨a, b, c, d | [a,b][c,d]⟩`.
//!
//! The group is the amalgam of `G₁ = ⟨a, b⟩` and `G₂ = ⟨c, d⟩` over the
//! cyclic subgroup generated by `h = abAB = dcDC`. Lowercase letters are
//! generators and uppercase letters their inverses.

mod normal;
mod rep;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use normal::{amalgam_normal_form, h_power, in_h, AmalgamNF, Syllable};
pub use rep::{evaluate, leading_data, LeadingData, Provenance, SurfaceRep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("bad letter {ch:?} at position {pos} (expected one of a b c d A B C D)")]
    BadLetter { pos: usize, ch: char },
    #[error("normal form is not alternating: {0}")]
    NotAlternating(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("leading term mismatch: expected degree {expected}, found {found}")]
    LeadingTermMismatch { expected: i64, found: i64 },
}

/// The two free factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `⟨a, b⟩`
    One,
    /// `⟨c, d⟩`
    Two,
}

impl Factor {
    pub fn other(self) -> Self {
        match self {
            Self::One => Self::Two,
            Self::Two => Self::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

/// A generator (`1..=4` for `a..d`) with a sign for its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i8);

impl Letter {
    pub const A: Letter = Letter(1);
    pub const B: Letter = Letter(2);
    pub const C: Letter = Letter(3);
    pub const D: Letter = Letter(4);

    /// All eight letters: `a b c d A B C D`.
    pub const ALL: [Letter; 8] =
        [Letter(1), Letter(2), Letter(3), Letter(4), Letter(-1), Letter(-2), Letter(-3), Letter(-4)];

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn factor(self) -> Factor {
        if self.generator() < 2 {
            Factor::One
        } else {
            Factor::Two
        }
    }

    /// Index in [`Letter::ALL`].
    pub fn index(self) -> usize {
        self.generator() + if self.is_inverse() { 4 } else { 0 }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        let g = match ch.to_ascii_lowercase() {
            'a' => 1,
            'b' => 2,
            'c' => 3,
            'd' => 4,
            _ => return None,
        };
        Some(Letter(if ch.is_ascii_uppercase() { -g } else { g }))
    }

    pub fn to_char(self) -> char {
        let ch = b"abcd"[self.generator()] as char;
        if self.is_inverse() {
            ch.to_ascii_uppercase()
        } else {
            ch
        }
    }
}

/// A sequence of letters; not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses letters, ignoring whitespace; `""` and `"1"` are the empty word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        if text.trim() == "1" {
            return Ok(Self::empty());
        }
        text.chars()
            .enumerate()
            .filter(|(_, ch)| !ch.is_whitespace())
            .map(|(pos, ch)| Letter::from_char(ch).ok_or(WordError::BadLetter { pos, ch }))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Self(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// The relator `abABcdCD`.
    pub fn relator() -> Self {
        Self::parse("abABcdCD").unwrap()
    }
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A reduced word in the free group on `g1, g2`, as signed generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(pub Vec<i8>);

impl FreeWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&g| if g > 0 { format!("g{g}") } else { format!("g{}^-1", -g) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The homomorphism onto the free group given by `a, d ↦ g1` and `b, c ↦ g2`.
pub fn free_image(w: &Word) -> FreeWord {
    let mut out: Vec<i8> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        let g = match l.generator() {
            0 | 3 => 1,
            _ => 2,
        };
        let g = if l.is_inverse() { -g } else { g };
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    FreeWord(out)
}

/// Every freely reduced word of length exactly `n`, in lexicographic order of
/// letter indices.
pub fn reduced_words(n: usize) -> impl Iterator<Item = Word> {
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    std::iter::from_fn(move || {
        while let Some(w) = stack.pop() {
            if w.len() == n {
                return Some(Word(w));
            }
            for &l in Letter::ALL.iter().rev() {
                if w.last() != Some(&l.inverse()) {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(free_reduce(&w("aAb")), w("b"));
        assert_eq!(free_reduce(&Word::empty()), Word::empty());
        assert_eq!(free_reduce(&w("abBAc")), w("c"));
        assert!(free_reduce(&w("abBAc")).is_reduced());
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("ab AB").to_string(), "abAB");
        assert_eq!(w("1"), Word::empty());
        assert_eq!(Word::parse("abx"), Err(WordError::BadLetter { pos: 2, ch: 'x' }));
        assert_eq!(w("abC").inverse(), w("cBA"));
    }

    #[test]
    fn free_image_examples() {
        assert!(free_image(&Word::relator()).is_empty());
        assert_eq!(free_image(&w("ab")), FreeWord(vec![1, 2]));
        assert_eq!(free_image(&w("ab")).to_string(), "g1 g2");
        assert!(free_image(&w("aD")).is_empty());
    }

    #[test]
    fn word_counts() {
        assert_eq!(reduced_words(0).count(), 1);
        assert_eq!(reduced_words(1).count(), 8);
        assert_eq!(reduced_words(3).count(), 8 * 49);
        assert!(reduced_words(3).all(|w| w.is_reduced()));
    }
}
