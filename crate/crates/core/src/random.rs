//! Seeded generators for randomized checks.

use rand::Rng;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cosettree::{FiniteGroup, HoughtonElem, Lamp2Elem, LampElem};
use crate::funcfield::{BiRat, Field, Poly, RatFunc, YLaurent};
use crate::sl2::{FamilyParams, Mat2};
use crate::surfaceword::{in_h, Factor, Letter, Word};
use crate::valuation::Place;

pub fn poly<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..p as i64)).collect();
    Poly::from_coeffs(p, &coeffs)
}

pub fn nonzero_poly<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize) -> Poly {
    loop {
        let f = poly(rng, p, max_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn ratfunc<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize) -> RatFunc {
    RatFunc::new(poly(rng, p, max_degree), nonzero_poly(rng, p, max_degree))
        .expect("nonzero denominator")
}

pub fn nonzero_ratfunc<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize) -> RatFunc {
    loop {
        let f = ratfunc(rng, p, max_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn laurent<R: Rng + ?Sized>(rng: &mut R, p: u32, max_terms: usize, max_degree: usize) -> YLaurent {
    let n = rng.gen_range(0..=max_terms);
    YLaurent::from_terms(
        p,
        (0..n).map(|_| (rng.gen_range(-2..=3), ratfunc(rng, p, max_degree))),
    )
}

pub fn birat<R: Rng + ?Sized>(rng: &mut R, p: u32, max_terms: usize, max_degree: usize) -> BiRat {
    let num = laurent(rng, p, max_terms, max_degree);
    let den = loop {
        let d = laurent(rng, p, max_terms.max(1), max_degree);
        if !d.is_zero() {
            break d;
        }
    };
    BiRat::new(num, den).expect("nonzero denominator")
}

pub fn nonzero_birat<R: Rng + ?Sized>(rng: &mut R, p: u32, max_terms: usize, max_degree: usize) -> BiRat {
    loop {
        let f = birat(rng, p, max_terms, max_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random `(c, h, d, δ)` with `X` and `Y` nonzero.
pub fn family_params<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize) -> FamilyParams {
    loop {
        let [c, h, d, delta] = [0; 4].map(|_| nonzero_ratfunc(rng, p, max_degree));
        if let Ok(fp) = FamilyParams::new(c, h, d, delta) {
            return fp;
        }
    }
}

/// A random element of `SL(2, F_p(x))` as a short product of elementary and
/// diagonal matrices.
pub fn sl2_ratfunc<R: Rng + ?Sized>(rng: &mut R, p: u32, max_degree: usize, factors: usize) -> Mat2<RatFunc> {
    let one = RatFunc::one(p);
    let zero = RatFunc::zero(p);
    let mut acc = Mat2::identity_like(&one);
    for _ in 0..factors {
        let f = ratfunc(rng, p, max_degree);
        let m = match rng.gen_range(0..3) {
            0 => Mat2::new(one.clone(), f, zero.clone(), one.clone()),
            1 => Mat2::new(one.clone(), zero.clone(), f, one.clone()),
            _ => {
                let u = nonzero_ratfunc(rng, p, 1);
                let ui = u.inv().unwrap();
                Mat2::diag(u, ui)
            }
        };
        acc = acc.mul(&m);
    }
    acc
}

/// A random freely reduced word of the given length over `letters`.
pub fn reduced_word<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter], len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = letters[rng.gen_range(0..letters.len())];
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word(out)
}

pub fn factor_letters(factor: Factor) -> Vec<Letter> {
    Letter::ALL.into_iter().filter(|l| l.factor() == factor).collect()
}

/// A word whose normal form has `syllables` alternating syllables, each of
/// length at most `max_syllable`, starting in `first`.
pub fn alternating_word<R: Rng + ?Sized>(rng: &mut R, first: Factor, syllables: usize, max_syllable: usize) -> Word {
    let mut letters = Vec::new();
    let mut factor = first;
    for _ in 0..syllables {
        let pool = factor_letters(factor);
        let syl = loop {
            let len = rng.gen_range(1..=max_syllable);
            let w = reduced_word(rng, &pool, len);
            if in_h(factor, &w).is_none() {
                break w;
            }
        };
        letters.extend(syl.0);
        factor = factor.other();
    }
    Word(letters)
}

/// `Σ c_i π^i` over `i < terms`: an element of the valuation ring.
pub fn integral<R: Rng + ?Sized>(rng: &mut R, place: &Place, p: u32, terms: usize) -> RatFunc {
    let pi = place.uniformizer(p);
    let mut acc = RatFunc::zero(p);
    let mut power = RatFunc::one(p);
    for _ in 0..terms {
        acc = acc.add(&power.mul(&RatFunc::constant(p, rng.gen_range(0..p) as i64)));
        power = power.mul(&pi);
    }
    acc
}

/// An invertible basis with entries `π^e · u`, `|e| <= spread`, `u` integral.
pub fn lattice_basis<R: Rng + ?Sized>(rng: &mut R, place: &Place, p: u32, spread: i64) -> Mat2<RatFunc> {
    let pi = place.uniformizer(p);
    loop {
        let [a, b, c, d] = [0; 4].map(|_| {
            let e = rng.gen_range(-spread..=spread);
            integral(rng, place, p, 3).mul(&pi.pow(e).unwrap())
        });
        let m = Mat2::new(a, b, c, d);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Lamps at positions in `[-span, span]`, shift in `[-shift_bound, shift_bound]`.
pub fn lamp_elem<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, span: i64, shift_bound: i64) -> LampElem {
    let n = group.order() as u8;
    let support: BTreeMap<i64, u8> =
        (-span..=span).map(|j| (j, lamp_label(rng, n, 0.4))).filter(|&(_, l)| l != 0).collect();
    LampElem { group: group.clone(), support, shift: rng.gen_range(-shift_bound..=shift_bound) }
}

pub fn lamp2_elem<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, span: i64, shift_bound: i64) -> Lamp2Elem {
    let n = group.order() as u8;
    let mut support = BTreeMap::new();
    for i in -span..=span {
        for j in -span..=span {
            let l = lamp_label(rng, n, 0.2);
            if l != 0 {
                support.insert((i, j), l);
            }
        }
    }
    let shift = (rng.gen_range(-shift_bound..=shift_bound), rng.gen_range(-shift_bound..=shift_bound));
    Lamp2Elem { group: group.clone(), support, shift }
}

/// A product of a few transpositions in `[-span, span]` times a shift.
pub fn houghton_elem<R: Rng + ?Sized>(rng: &mut R, span: i64, shift_bound: i64) -> HoughtonElem {
    let mut g = HoughtonElem::t_pow(rng.gen_range(-shift_bound..=shift_bound));
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(-span..=span);
        let b = rng.gen_range(-span..=span);
        if a != b {
            g = HoughtonElem::cycle(&[a, b]).unwrap().mul(&g);
        }
    }
    g
}

fn lamp_label<R: Rng + ?Sized>(rng: &mut R, order: u8, density: f64) -> u8 {
    if order > 1 && rng.gen_bool(density) {
        rng.gen_range(1..order)
    } else {
        0
    }
}
