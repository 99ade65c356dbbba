//! Exhaustive check that the normal form decides the word problem in the
//! same way as the matrix image, over every freely reduced word up to a
//! given length.
//!
//! Products are accumulated along a depth-first walk in a finite residue
//! field of `F_p(x)` with `y` sent to a fixed nonzero residue. That map is a
//! homomorphism on the entries involved, so a non-identity residue image
//! proves a non-identity exact image. Exact arithmetic is used whenever the
//! residue image is the identity, and for every word whose normal form is
//! trivial.

use serde::Serialize;

use crate::funcfield::residue::{Gf, ResidueField};
use crate::funcfield::Poly;

use super::{amalgam_normal_form, evaluate, Letter, SurfaceRep, Word};

/// Residue-field size used for the specialisation.
const RESIDUE_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub p: u32,
    pub word: Word,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub max_len: usize,
    pub primes: Vec<u32>,
    /// Freely reduced words visited, the empty word included.
    pub words: u64,
    /// Words whose normal form is the identity.
    pub trivial_words: u64,
    /// Exact evaluations performed, over all primes.
    pub exact_evaluations: u64,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type GfMat = [Gf; 4];

struct Specialised {
    field: ResidueField,
    images: [GfMat; 8],
    rep: SurfaceRep,
}

impl Specialised {
    fn new(p: u32) -> Self {
        let rep = SurfaceRep::builtin(p);
        let avoid: Vec<Poly> = [&rep.base_a, &rep.base_b]
            .iter()
            .flat_map(|m| m.entries().into_iter().map(|e| e.den().clone()).collect::<Vec<_>>())
            .filter(|d| !d.is_constant())
            .collect();
        let field = ResidueField::new(p, RESIDUE_SIZE, &avoid);
        let images = Letter::ALL.map(|l| {
            let m = rep.image(l);
            m.entries().map(|e| field.eval_birat(e).expect("denominators avoid the modulus"))
        });
        Self { field, images, rep }
    }

    fn mul(&self, a: &GfMat, b: &GfMat) -> GfMat {
        let f = &self.field;
        [
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
            f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
        ]
    }
}

const GF_IDENTITY: GfMat = [Gf::ONE, Gf::ZERO, Gf::ZERO, Gf::ONE];

/// Checks `normal form trivial ⇔ image trivial` for every freely reduced
/// word of length at most `max_len` under the builtin representation at
/// each prime.
pub fn faithfulness_sweep(max_len: usize, primes: &[u32]) -> SweepReport {
    let specs: Vec<Specialised> = primes.iter().map(|&p| Specialised::new(p)).collect();
    let mut report = SweepReport { max_len, primes: primes.to_vec(), ..Default::default() };
    let mut word: Vec<Letter> = Vec::with_capacity(max_len);
    // products[depth][prime]
    let mut products: Vec<Vec<GfMat>> = vec![vec![GF_IDENTITY; specs.len()]; max_len + 1];
    walk(&specs, &mut word, &mut products, max_len, &mut report);
    report
}

fn walk(
    specs: &[Specialised],
    word: &mut Vec<Letter>,
    products: &mut Vec<Vec<GfMat>>,
    max_len: usize,
    report: &mut SweepReport,
) {
    check_word(specs, word, &products[word.len()], report);
    if word.len() == max_len {
        return;
    }
    let depth = word.len();
    for l in Letter::ALL {
        if word.last() == Some(&l.inverse()) {
            continue;
        }
        for (i, spec) in specs.iter().enumerate() {
            products[depth + 1][i] = spec.mul(&products[depth][i], &spec.images[l.index()]);
        }
        word.push(l);
        walk(specs, word, products, max_len, report);
        word.pop();
    }
}

fn check_word(specs: &[Specialised], letters: &[Letter], images: &[GfMat], report: &mut SweepReport) {
    report.words += 1;
    let w = Word(letters.to_vec());
    let trivial = amalgam_normal_form(&w).is_identity();
    if trivial {
        report.trivial_words += 1;
    }
    for (spec, img) in specs.iter().zip(images) {
        let residue_identity = *img == GF_IDENTITY;
        if !trivial && !residue_identity {
            continue;
        }
        report.exact_evaluations += 1;
        let exact_identity = evaluate(&w, &spec.rep).is_identity();
        let reason = match (trivial, exact_identity) {
            (true, false) => "normal form is trivial but the image is not",
            (false, true) => "image is trivial but the normal form is not",
            _ => continue,
        };
        report.failures.push(SweepFailure { p: spec.field.p(), word: w.clone(), reason });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_sweep_passes() {
        let r = faithfulness_sweep(4, &[3]);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.words, 1 + 8 + 8 * 7 + 8 * 49 + 8 * 343);
        assert_eq!(r.trivial_words, 1);
    }

    #[test]
    fn relator_length_is_covered() {
        let r = faithfulness_sweep(8, &[]);
        // 8 rotations of the relator and 8 of its inverse, plus the empty word
        assert_eq!(r.trivial_words, 17);
    }
}
