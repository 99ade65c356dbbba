use serde::Serialize;

use crate::funcfield::{BiRat, Field, RatFunc};
use crate::sl2::{builtin_family, commutator, matfrm_pair, shalen_extend, Mat2};

use super::normal::{h_power, in_h};
use super::{free_reduce, AmalgamNF, Factor, Letter, Syllable, Word, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Builtin,
    Custom,
}

/// `a ↦ A`, `b ↦ B`, `c ↦ TBT⁻¹`, `d ↦ TAT⁻¹` with `T = diag(1, y)`.
#[derive(Debug, Clone)]
pub struct SurfaceRep {
    pub p: u32,
    pub provenance: Provenance,
    pub base_a: Mat2<RatFunc>,
    pub base_b: Mat2<RatFunc>,
    /// Indexed like [`Letter::ALL`].
    images: Vec<Mat2<BiRat>>,
    /// Images with `y` removed: `c ↦ B`, `d ↦ A`.
    yfree: Vec<Mat2<RatFunc>>,
}

impl SurfaceRep {
    pub fn builtin(p: u32) -> Self {
        let pair = matfrm_pair(&builtin_family(p));
        Self::from_pair(pair.a, pair.b, Provenance::Builtin).expect("builtin pair is valid")
    }

    /// Requires `A`, `B` unimodular with a diagonal commutator.
    pub fn from_pair(a: Mat2<RatFunc>, b: Mat2<RatFunc>, provenance: Provenance) -> Result<Self, WordError> {
        if !a.is_sl2() || !b.is_sl2() {
            return Err(WordError::InvalidRep("generators must have determinant 1".into()));
        }
        if !commutator(&a, &b).expect("unimodular").is_diagonal() {
            return Err(WordError::InvalidRep("commutator is not diagonal".into()));
        }
        let (c, d) = shalen_extend(&a, &b);
        let gens = [a.lift(), b.lift(), c, d];
        let images: Vec<Mat2<BiRat>> =
            gens.iter().cloned().chain(gens.iter().map(|m| m.adjugate())).collect();
        let ygens = [a.clone(), b.clone(), b.clone(), a.clone()];
        let yfree = ygens.iter().cloned().chain(ygens.iter().map(|m| m.adjugate())).collect();
        Ok(Self { p: a.modulus(), provenance, base_a: a, base_b: b, images, yfree })
    }

    pub fn image(&self, l: Letter) -> &Mat2<BiRat> {
        &self.images[l.index()]
    }

    pub fn yfree_image(&self, l: Letter) -> &Mat2<RatFunc> {
        &self.yfree[l.index()]
    }

    pub fn generators(&self) -> [&Mat2<BiRat>; 4] {
        [&self.images[0], &self.images[1], &self.images[2], &self.images[3]]
    }

    pub fn identity(&self) -> Mat2<BiRat> {
        Mat2::identity_like(&BiRat::one(self.p))
    }

    /// `ABA⁻¹B⁻¹ = DCD⁻¹C⁻¹`.
    pub fn relation_holds(&self) -> bool {
        let [a, b, c, d] = self.generators();
        commutator(a, b).ok() == commutator(d, c).ok()
    }

    fn yfree_eval(&self, w: &Word) -> Mat2<RatFunc> {
        w.letters()
            .iter()
            .fold(Mat2::identity_like(&RatFunc::one(self.p)), |acc, &l| acc.mul(self.yfree_image(l)))
    }
}

pub fn evaluate(w: &Word, rep: &SurfaceRep) -> Mat2<BiRat> {
    w.letters().iter().fold(rep.identity(), |acc, &l| acc.mul(rep.image(l)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingData {
    /// Number of syllable pairs.
    pub l: usize,
    /// Coefficient of `y^l` in the bottom-right entry.
    pub alpha: RatFunc,
    /// `g` with `shaped = g · w · g⁻¹`.
    pub conjugator: Word,
    /// Alternating syllables starting in factor 2.
    pub shaped: Vec<Syllable>,
}

/// Cyclically conjugates an alternating form into an even number of
/// syllables starting with factor 2.
fn shape(syllables: &[Syllable]) -> Result<(Vec<Syllable>, Word), WordError> {
    let mut v = syllables.to_vec();
    let mut g = Word::empty();
    loop {
        if v.len() < 2 {
            return Err(WordError::NotAlternating("element is conjugate into a factor".into()));
        }
        if v.len() % 2 == 1 {
            let last = v.pop().unwrap();
            let first = v.remove(0);
            g = free_reduce(&last.word.concat(&g));
            let merged = free_reduce(&last.word.concat(&first.word));
            match in_h(first.factor, &merged) {
                Some(k) => {
                    let next = &mut v[0];
                    next.word = free_reduce(&h_power(next.factor, k).concat(&next.word));
                }
                None => v.insert(0, Syllable { factor: first.factor, word: merged }),
            }
            continue;
        }
        if v[0].factor == Factor::One {
            let first = v.remove(0);
            g = free_reduce(&first.word.inverse().concat(&g));
            v.push(first);
        }
        return Ok((v, g));
    }
}

/// Degree and coefficient of `y^l` in the bottom-right entry, checked
/// against the product of corner entries.
pub fn leading_data(nf: &AmalgamNF, rep: &SurfaceRep) -> Result<LeadingData, WordError> {
    let AmalgamNF::Alternating { syllables } = nf else {
        return Err(WordError::NotAlternating(nf.to_string()));
    };
    let (shaped, conjugator) = shape(syllables)?;
    let l = shaped.len() / 2;
    let mut alpha = RatFunc::one(rep.p);
    for pair in shaped.chunks(2) {
        let gamma = rep.yfree_eval(&pair[0].word);
        let delta = rep.yfree_eval(&pair[1].word);
        alpha = alpha.mul(&gamma.m21).mul(&delta.m12);
    }
    let word = AmalgamNF::Alternating { syllables: shaped.clone() }.to_word();
    let m = evaluate(&word, rep);
    let br = m.m22.as_laurent().ok_or(WordError::LeadingTermMismatch { expected: l as i64, found: i64::MIN })?;
    let (deg, coeff) = br.leading().map(|(d, c)| (d as i64, c.clone())).unwrap_or((i64::MIN, RatFunc::zero(rep.p)));
    if deg != l as i64 || coeff != alpha {
        return Err(WordError::LeadingTermMismatch { expected: l as i64, found: deg });
    }
    Ok(LeadingData { l, alpha, conjugator, shaped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaceword::amalgam_normal_form;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn relator_evaluates_to_identity() {
        for p in [2, 3, 5] {
            let rep = SurfaceRep::builtin(p);
            assert!(evaluate(&Word::relator(), &rep).is_identity());
            assert!(rep.relation_holds());
            assert_eq!(evaluate(&w("a"), &rep), rep.base_a.lift());
        }
    }

    #[test]
    fn commutator_word_is_diagonal() {
        let p = 5;
        let rep = SurfaceRep::builtin(p);
        let pair = matfrm_pair(&builtin_family(p));
        let m = evaluate(&w("abAB"), &rep);
        let x = BiRat::from_ratfunc(pair.x.clone());
        let y = BiRat::from_ratfunc(pair.y.clone());
        assert_eq!(m, Mat2::diag(y.div(&x).unwrap(), x.div(&y).unwrap()));
        // both spellings of h agree
        assert_eq!(m, evaluate(&w("dcDC"), &rep));
    }

    #[test]
    fn leading_data_for_ac() {
        let p = 5;
        let rep = SurfaceRep::builtin(p);
        let nf = amalgam_normal_form(&w("ac"));
        let ld = leading_data(&nf, &rep).unwrap();
        assert_eq!(ld.l, 1);
        // shaped as c·a: bottom-left of B times top-right of A
        assert_eq!(ld.conjugator, w("A"));
        assert_eq!(ld.alpha, rep.base_b.m21.mul(&rep.base_a.m12));
        let tr = evaluate(&w("ac"), &rep).trace();
        let lead = tr.as_laurent().unwrap().leading().map(|(d, c)| (d, c.clone()));
        assert_eq!(lead, Some((1, ld.alpha.clone())));
    }

    #[test]
    fn odd_forms_are_cyclically_reduced() {
        let p = 3;
        let rep = SurfaceRep::builtin(p);
        for s in ["aca", "cac", "abcdab", "cabAd"] {
            let word = w(s);
            let nf = amalgam_normal_form(&word);
            let ld = leading_data(&nf, &rep).unwrap();
            let g = evaluate(&ld.conjugator, &rep);
            let lhs = g.mul(&evaluate(&word, &rep)).mul(&g.adjugate());
            let shaped = AmalgamNF::Alternating { syllables: ld.shaped.clone() }.to_word();
            assert_eq!(lhs, evaluate(&shaped, &rep), "{s}");
        }
        // a·c·A is conjugate into factor 2
        let nf = amalgam_normal_form(&w("acA"));
        assert!(matches!(leading_data(&nf, &rep), Err(WordError::NotAlternating(_))));
    }
}
