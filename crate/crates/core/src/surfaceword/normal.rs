use std::fmt;

use serde::Serialize;

use super::{free_reduce, Factor, Letter, Word};

/// A maximal run of letters from one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    pub factor: Factor,
    pub word: Word,
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}:{}⟩", self.factor.index(), self.word)
    }
}

/// Normal form in `G₁ *_H G₂`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmalgamNF {
    Identity,
    /// A single factor element; elements of `H` are kept in factor 1.
    InFactor { factor: Factor, word: Word },
    /// At least two syllables, alternating factors, none in `H`.
    Alternating { syllables: Vec<Syllable> },
}

impl AmalgamNF {
    pub fn is_identity(&self) -> bool {
        matches!(self, Self::Identity)
    }

    /// The represented element as a word.
    pub fn to_word(&self) -> Word {
        match self {
            Self::Identity => Word::empty(),
            Self::InFactor { word, .. } => word.clone(),
            Self::Alternating { syllables } => {
                Word(syllables.iter().flat_map(|s| s.word.0.iter().copied()).collect())
            }
        }
    }

    pub fn syllable_count(&self) -> usize {
        match self {
            Self::Identity => 0,
            Self::InFactor { .. } => 1,
            Self::Alternating { syllables } => syllables.len(),
        }
    }
}

impl fmt::Display for AmalgamNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => write!(f, "1"),
            Self::InFactor { factor, word } => write!(f, "⟨{}:{}⟩", factor.index(), word),
            Self::Alternating { syllables } => {
                for s in syllables {
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

/// `h^k` written in the letters of the given factor.
pub fn h_power(factor: Factor, k: i64) -> Word {
    let (x, y) = match factor {
        Factor::One => (Letter::A, Letter::B),
        Factor::Two => (Letter::D, Letter::C),
    };
    let block = if k >= 0 {
        [x, y, x.inverse(), y.inverse()]
    } else {
        [y, x, y.inverse(), x.inverse()]
    };
    Word(block.iter().copied().cycle().take(4 * k.unsigned_abs() as usize).collect())
}

/// The exponent `k` when a reduced factor word equals `h^k`.
pub fn in_h(factor: Factor, w: &Word) -> Option<i64> {
    if !w.len().is_multiple_of(4) {
        return None;
    }
    let k = (w.len() / 4) as i64;
    if *w == h_power(factor, k) {
        Some(k)
    } else if k > 0 && *w == h_power(factor, -k) {
        Some(-k)
    } else {
        None
    }
}

fn join(a: &Word, b: &Word) -> Word {
    free_reduce(&a.concat(b))
}

/// Pushes a syllable onto a stack of alternating syllables, merging equal
/// factors and absorbing elements of `H` into their neighbour.
fn push(stack: &mut Vec<Syllable>, mut s: Syllable) {
    loop {
        if s.word.is_empty() {
            return;
        }
        let Some(top) = stack.last() else {
            stack.push(s);
            return;
        };
        if top.factor == s.factor {
            let top = stack.pop().unwrap();
            s.word = join(&top.word, &s.word);
            continue;
        }
        if let Some(k) = in_h(s.factor, &s.word) {
            s = Syllable { factor: top.factor, word: h_power(top.factor, k) };
            continue;
        }
        if let Some(k) = in_h(top.factor, &top.word) {
            // only the bottom syllable can lie in H
            stack.pop();
            debug_assert!(stack.is_empty());
            s.word = join(&h_power(s.factor, k), &s.word);
            continue;
        }
        stack.push(s);
        return;
    }
}

pub fn amalgam_normal_form(w: &Word) -> AmalgamNF {
    let mut stack: Vec<Syllable> = Vec::new();
    let mut run: Vec<Letter> = Vec::new();
    let mut run_factor = Factor::One;
    for &l in w.letters() {
        if !run.is_empty() && l.factor() != run_factor {
            let word = free_reduce(&Word(std::mem::take(&mut run)));
            push(&mut stack, Syllable { factor: run_factor, word });
        }
        run_factor = l.factor();
        run.push(l);
    }
    if !run.is_empty() {
        push(&mut stack, Syllable { factor: run_factor, word: free_reduce(&Word(run)) });
    }
    match stack.len() {
        0 => AmalgamNF::Identity,
        1 => {
            let s = stack.pop().unwrap();
            match in_h(s.factor, &s.word) {
                Some(k) => AmalgamNF::InFactor { factor: Factor::One, word: h_power(Factor::One, k) },
                None => AmalgamNF::InFactor { factor: s.factor, word: s.word },
            }
        }
        _ => AmalgamNF::Alternating { syllables: stack },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn nf(s: &str) -> AmalgamNF {
        amalgam_normal_form(&w(s))
    }

    #[test]
    fn relator_is_trivial() {
        assert_eq!(nf("abABcdCD"), AmalgamNF::Identity);
        assert_eq!(nf("cdCDabAB"), AmalgamNF::Identity);
        assert_eq!(nf("dcDCbaBA"), AmalgamNF::Identity);
        assert_ne!(nf("DCdcBAba"), AmalgamNF::Identity);
        assert_eq!(nf(""), AmalgamNF::Identity);
    }

    #[test]
    fn alternating_example() {
        let expected = AmalgamNF::Alternating {
            syllables: vec![
                Syllable { factor: Factor::One, word: w("a") },
                Syllable { factor: Factor::Two, word: w("c") },
            ],
        };
        assert_eq!(nf("ac"), expected);
        assert_eq!(nf("ac").to_string(), "⟨1:a⟩⟨2:c⟩");
    }

    #[test]
    fn h_elements_are_kept_in_factor_one() {
        let h = AmalgamNF::InFactor { factor: Factor::One, word: w("abAB") };
        assert_eq!(nf("abAB"), h);
        assert_eq!(nf("dcDC"), h);
        assert_eq!(nf("cdCD"), AmalgamNF::InFactor { factor: Factor::One, word: w("baBA") });
    }

    #[test]
    fn h_syllables_are_absorbed() {
        // a · (dcDC) · b = a h b = a abAB b = aabA, a factor-1 element
        assert_eq!(nf("adcDCb"), AmalgamNF::InFactor { factor: Factor::One, word: w("aabA") });
        // c · abAB · d = c dcDC d
        assert_eq!(nf("cabABd"), AmalgamNF::InFactor { factor: Factor::Two, word: w("cdcDCd") });
        assert_eq!(nf("abABc").syllable_count(), 1);
        assert_eq!(nf("aca").syllable_count(), 3);
    }

    #[test]
    fn h_membership() {
        assert_eq!(in_h(Factor::One, &w("abABabAB")), Some(2));
        assert_eq!(in_h(Factor::One, &w("baBA")), Some(-1));
        assert_eq!(in_h(Factor::One, &Word::empty()), Some(0));
        assert_eq!(in_h(Factor::One, &w("abBA")), None);
        assert_eq!(in_h(Factor::Two, &w("dcDC")), Some(1));
    }
}
