//! Certificates: freeness of a matrix pair through equal negative trace
//! valuations, end-to-end checks of the surface representations, and the
//! substitution `y ↦ y·xⁿ` that makes chosen words act loxodromically.

use serde::Serialize;
use thiserror::Error;

use crate::funcfield::{is_prime, BiRat, Field, RatFunc, YLaurent};
use crate::sl2::{builtin_family, commutator, matfrm_pair, Classification, FamilyFormulas, FamilyParams, Mat2};
use crate::surfaceword::{amalgam_normal_form, evaluate, SurfaceRep, Word};
use crate::valuation::{GaussPlace, Place, Valuation};

/// Default search bound for [`loxodromify`].
pub const DEFAULT_N_MAX: u32 = 64;

/// The criterion a [`FreeCert`] records.
pub const FREE_CRITERION: &str = "v(tr A) = v(tr B) = v(tr AB) < 0";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("generators must have determinant 1")]
    NotUnimodular,
    #[error("trace valuations (A, B, AB) = ({}, {}, {}) are not all negative", .0[0], .0[1], .0[2])]
    NotNegative([Valuation; 3]),
    #[error("trace valuations (A, B, AB) = ({}, {}, {}) are negative but unequal; not certified", .0[0], .0[1], .0[2])]
    NotEqual([Valuation; 3]),
    #[error("stage {stage}: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("word {0} is trivial in the surface group")]
    TrivialWord(Word),
    #[error("no n <= {n_max} makes every trace strictly negative")]
    NotFound { n_max: u32, diagnostics: Vec<WordValuation> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeCert {
    pub place: String,
    pub criterion: &'static str,
    /// The common trace valuation.
    pub s: i64,
    /// Translation lengths of `A`, `B`, `AB`.
    pub lengths: [u64; 3],
}

/// Certifies `⟨A, B⟩` free of rank 2 and discrete when the three trace
/// valuations are equal and negative.
pub fn free_discrete_certificate(a: &Mat2<RatFunc>, b: &Mat2<RatFunc>, place: &Place) -> Result<FreeCert, RepError> {
    if !a.is_sl2() || !b.is_sl2() {
        return Err(RepError::NotUnimodular);
    }
    let vals = [a.trace(), b.trace(), a.mul(b).trace()].map(|t| place.val(&t));
    if vals.iter().any(|v| !v.is_negative()) {
        return Err(RepError::NotNegative(vals));
    }
    if vals[0] != vals[1] || vals[1] != vals[2] {
        return Err(RepError::NotEqual(vals));
    }
    let s = vals[0].finite().unwrap();
    Ok(FreeCert { place: place.to_string(), criterion: FREE_CRITERION, s, lengths: [(-2 * s) as u64; 3] })
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceCert {
    pub p: u32,
    pub free: FreeCert,
    pub x: RatFunc,
    pub y: RatFunc,
    pub v_x: Valuation,
    pub v_y: Valuation,
    /// `ABA⁻¹B⁻¹ = diag(Y/X, X/Y)`.
    pub commutator_diagonal: bool,
    pub commutator: [[String; 2]; 2],
    /// `X² ≠ Y²`, so the commutator is not scalar.
    pub non_scalar: bool,
    /// `ABA⁻¹B⁻¹ = DCD⁻¹C⁻¹` with `C`, `D` the `diag(1, y)` conjugates.
    pub relation_holds: bool,
    pub matrices: Matrices,
}

#[derive(Debug, Clone, Serialize)]
pub struct Matrices {
    pub a: [[String; 2]; 2],
    pub b: [[String; 2]; 2],
    pub c: [[String; 2]; 2],
    pub d: [[String; 2]; 2],
}

fn stage(stage: &'static str, message: impl ToString) -> RepError {
    RepError::Stage { stage, message: message.to_string() }
}

/// Builds the builtin family at `p`, certifies `⟨A, B⟩` at infinity, checks
/// the diagonal non-scalar commutator and the relation for the extension.
pub fn surface_rep_certificate(p: u32) -> Result<(SurfaceCert, SurfaceRep), RepError> {
    if !is_prime(p as u64) {
        return Err(RepError::NotPrime(p));
    }
    let params = builtin_family(p);
    let pair = matfrm_pair(&params);
    let place = Place::Infinity;
    let free = free_discrete_certificate(&pair.a, &pair.b, &place)?;
    let comm = commutator(&pair.a, &pair.b).map_err(|e| stage("commutator", e))?;
    let expected = Mat2::diag(pair.y.div(&pair.x).unwrap(), pair.x.div(&pair.y).unwrap());
    let commutator_diagonal = comm == expected;
    let non_scalar = pair.x.mul(&pair.x) != pair.y.mul(&pair.y);
    if !commutator_diagonal {
        return Err(stage("commutator", "commutator is not diag(Y/X, X/Y)"));
    }
    if !non_scalar {
        return Err(stage("commutator", "X² = Y², commutator is scalar"));
    }
    let rep = SurfaceRep::from_pair(pair.a.clone(), pair.b.clone(), crate::surfaceword::Provenance::Builtin)
        .map_err(|e| stage("extension", e))?;
    let relation_holds = rep.relation_holds();
    if !relation_holds {
        return Err(stage("extension", "ABA⁻¹B⁻¹ ≠ DCD⁻¹C⁻¹"));
    }
    let [a, b, c, d] = rep.generators().map(|m| m.entry_strings());
    let cert = SurfaceCert {
        p,
        free,
        v_x: place.val(&pair.x),
        v_y: place.val(&pair.y),
        x: pair.x,
        y: pair.y,
        commutator_diagonal,
        commutator: comm.entry_strings(),
        non_scalar,
        relation_holds,
        matrices: Matrices { a, b, c, d },
    };
    Ok((cert, rep))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub p: u32,
    pub params: [String; 4],
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Multiplies out `A`, `B` and compares every closed form: determinants,
/// entries of `AB` and `BA`, the commutator and the three traces.
pub fn verify_matfrm_identities(params: &FamilyParams) -> IdentityReport {
    let f = FamilyFormulas::new(params);
    let mut checks = Vec::new();
    let mut check = |name: &str, holds: bool| checks.push(IdentityCheck { name: name.to_string(), holds });
    check("det A = 1", f.a.is_sl2());
    check("det B = 1", f.b.is_sl2());
    let ab = f.a.mul(&f.b);
    let ba = f.b.mul(&f.a);
    for (label, got, want) in [("AB", &ab, &f.ab), ("BA", &ba, &f.ba)] {
        for (i, (g, w)) in got.entries().into_iter().zip(want.entries()).enumerate() {
            check(&format!("{label}[{},{}]", i / 2 + 1, i % 2 + 1), g == w);
        }
    }
    let comm = if f.a.is_sl2() && f.b.is_sl2() { commutator(&f.a, &f.b).ok() } else { None };
    check("ABA⁻¹B⁻¹ = diag(Y/X, X/Y)", comm.as_ref() == Some(&f.commutator));
    check("tr A = d(X+Y)/X", f.a.trace() == f.tr_a);
    check("tr B = δ(X+Y)/Y", f.b.trace() == f.tr_b);
    check("tr AB = (dδ(1+h²)−h)(X+Y)/(XY)", ab.trace() == f.tr_ab);
    IdentityReport {
        p: params.p(),
        params: [&params.c, &params.h, &params.d, &params.delta].map(|v| v.to_string()),
        checks,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordValuation {
    pub word: Word,
    /// `v(tr)` under the Gauss valuation with `v(y) = -n`.
    pub valuation: Valuation,
    /// Minimum attained by a single term in numerator and denominator.
    pub unique: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneCheck {
    pub n: u32,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoxCert {
    pub place: String,
    pub n: u32,
    pub words: Vec<WordValuation>,
    pub monotone: Vec<MonotoneCheck>,
}

impl LoxCert {
    pub fn monotone(&self) -> bool {
        self.monotone.iter().all(|m| m.passed)
    }
}

fn strict_values(traces: &[(Word, BiRat)], place: &Place, n: u32) -> Vec<WordValuation> {
    let gp = GaussPlace::new(place.clone(), -(n as i64));
    traces
        .iter()
        .map(|(w, tr)| {
            let (valuation, unique) = gp.val_strict(tr);
            WordValuation {
                word: w.clone(),
                valuation,
                unique,
                classification: Classification::from_trace_valuation(valuation),
            }
        })
        .collect()
}

fn all_strict(vals: &[WordValuation]) -> bool {
    vals.iter().all(|v| v.unique && v.valuation.is_negative())
}

/// First `n` past which the top `y`-degree terms of `f` dominate uniquely.
fn dominance_threshold(f: &YLaurent, place: &Place) -> Option<(i64, i64)> {
    let terms: Vec<(i64, i64)> = f
        .terms()
        .map(|(l, c)| match place.val(c) {
            Valuation::Finite(v) => Some((l as i64, v)),
            Valuation::Infinite => None,
        })
        .collect::<Option<_>>()?;
    let &(top, v_top) = terms.iter().max_by_key(|(l, _)| *l)?;
    let n = terms
        .iter()
        .filter(|(l, _)| *l < top)
        .map(|(l, v)| (v_top - v).div_euclid(top - l) + 1)
        .max()
        .unwrap_or(0);
    Some((n.max(0), top))
}

/// Beyond this `n` the strict valuation of `tr` is linear in `n`; `None`
/// when it eventually increases, so no `n` stays negative.
fn stable_from(tr: &BiRat, place: &Place) -> Option<u32> {
    let (n_num, deg_num) = dominance_threshold(tr.num(), place)?;
    let (n_den, deg_den) = dominance_threshold(tr.den(), place)?;
    (deg_num >= deg_den).then(|| u32::try_from(n_num.max(n_den)).unwrap_or(u32::MAX))
}

/// Smallest `n <= n_max` such that after `y ↦ y·xⁿ` every trace has a
/// uniquely attained negative Gauss valuation, and keeps one for all larger
/// `n`. The strict check is repeated at `n + 1` and `n + 5`.
pub fn loxodromify(words: &[Word], rep: &SurfaceRep, place: &Place, n_max: u32) -> Result<LoxCert, RepError> {
    let mut traces = Vec::with_capacity(words.len());
    for w in words {
        if amalgam_normal_form(w).is_identity() {
            return Err(RepError::TrivialWord(w.clone()));
        }
        traces.push((w.clone(), evaluate(w, rep).trace()));
    }
    let not_found = || RepError::NotFound { n_max, diagnostics: strict_values(&traces, place, n_max) };
    let stable = traces.iter().map(|(_, tr)| stable_from(tr, place)).collect::<Option<Vec<_>>>();
    let Some(stable) = stable.map(|s| s.into_iter().max().unwrap_or(0)) else {
        return Err(not_found());
    };
    let top = stable.max(n_max);
    let passes: Vec<bool> = (0..=top).map(|m| all_strict(&strict_values(&traces, place, m))).collect();
    // passes[m] for m >= stable agrees with passes[stable]
    let mut first = None;
    for n in (0..=top).rev() {
        if !passes[n as usize] {
            break;
        }
        first = Some(n);
    }
    match first {
        Some(n) if n <= n_max => {
            let monotone = [n + 1, n + 5]
                .into_iter()
                .map(|m| MonotoneCheck { n: m, passed: all_strict(&strict_values(&traces, place, m)) })
                .collect();
            Ok(LoxCert { place: place.to_string(), n, words: strict_values(&traces, place, n), monotone })
        }
        _ => Err(not_found()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| Word::parse(s).unwrap()).collect()
    }

    #[test]
    fn builtin_certificates() {
        let (cert, _) = surface_rep_certificate(5).unwrap();
        assert_eq!(cert.free.s, -1);
        assert_eq!(cert.free.lengths, [2, 2, 2]);
        assert_eq!((cert.v_x, cert.v_y), (Valuation::Finite(1), Valuation::Finite(-2)));
        let (cert, _) = surface_rep_certificate(2).unwrap();
        assert_eq!(cert.free.s, -2);
        assert_eq!(cert.free.lengths, [4, 4, 4]);
        assert_eq!(surface_rep_certificate(4).unwrap_err(), RepError::NotPrime(4));
    }

    #[test]
    fn identity_pair_is_not_negative() {
        let id = Mat2::identity_like(&RatFunc::one(3));
        assert!(matches!(free_discrete_certificate(&id, &id, &Place::Infinity), Err(RepError::NotNegative(_))));
    }

    #[test]
    fn matfrm_identities_hold_for_builtin() {
        let report = verify_matfrm_identities(&builtin_family(7));
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.checks.len(), 2 + 8 + 1 + 3);
    }

    #[test]
    fn loxodromify_examples() {
        let rep = SurfaceRep::builtin(5);
        let c = loxodromify(&words(&["abAB"]), &rep, &Place::Infinity, DEFAULT_N_MAX).unwrap();
        assert_eq!(c.n, 0);
        assert_eq!(c.words[0].valuation, Valuation::Finite(-3));
        let c = loxodromify(&words(&["a"]), &rep, &Place::Infinity, DEFAULT_N_MAX).unwrap();
        assert_eq!((c.n, c.words[0].valuation), (0, Valuation::Finite(-1)));
        let c = loxodromify(&words(&["ac"]), &rep, &Place::Infinity, DEFAULT_N_MAX).unwrap();
        assert!(c.monotone());
        // passes at n = 0, ties at n = 1, dominated by the top term from n = 2
        let c = loxodromify(&words(&["bd"]), &rep, &Place::Infinity, DEFAULT_N_MAX).unwrap();
        assert_eq!(c.n, 2);
        assert!(c.monotone());
        assert_eq!(
            loxodromify(&words(&["abABcdCD"]), &rep, &Place::Infinity, DEFAULT_N_MAX),
            Err(RepError::TrivialWord(Word::relator()))
        );
    }
}
