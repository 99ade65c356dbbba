use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treeact::funcfield::{BiRat, Field, RatFunc};
use treeact::random;
use treeact::sl2::{classify, matfrm_pair, shalen_extend, Mat2};
use treeact::valuation::{GaussPlace, Place, Valuation};

const PRIMES: [u32; 5] = [2, 3, 5, 7, 13];

#[test]
fn shalen_preserves_determinant_and_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in PRIMES {
        for _ in 0..20 {
            let pair = matfrm_pair(&random::family_params(&mut rng, p, 2));
            let (c, d) = shalen_extend(&pair.a, &pair.b);
            assert!(d.is_sl2() && c.is_sl2());
            assert_eq!(d.trace(), pair.a.lift().trace());
            assert_eq!(c.trace(), pair.b.lift().trace());
        }
    }
}

#[test]
fn classification_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for p in [2, 3, 5] {
        for place in [Place::Infinity, Place::at_zero(p)] {
            for _ in 0..40 {
                let m = random::sl2_ratfunc(&mut rng, p, 2, 3);
                let g = random::sl2_ratfunc(&mut rng, p, 2, 3);
                let conj = m.conjugate_by(&g).unwrap();
                assert_eq!(classify(&m, &place).unwrap(), classify(&conj, &place).unwrap());
            }
        }
    }
}

#[test]
fn gauss_classification_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let p = 3;
    let y = BiRat::y(p);
    for _ in 0..20 {
        let m = random::sl2_ratfunc(&mut rng, p, 2, 3).lift();
        let t = Mat2::diag(y.clone(), y.inv().unwrap());
        let g = random::sl2_ratfunc(&mut rng, p, 2, 2).lift().mul(&t);
        let gp = GaussPlace::new(Place::Infinity, rng.gen_range(-3..=3));
        let conj = m.conjugate_by(&g).unwrap();
        assert_eq!(classify(&m, &gp).unwrap(), classify(&conj, &gp).unwrap());
    }
}

#[test]
fn trace_valuation_scales_with_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut seen = 0;
    for p in PRIMES {
        for _ in 0..60 {
            let m = random::sl2_ratfunc(&mut rng, p, 2, 4);
            let v = Place::Infinity.val(&m.trace());
            let Valuation::Finite(t) = v else { continue };
            if t >= 0 {
                continue;
            }
            seen += 1;
            for n in 1..=3 {
                let tn = Place::Infinity.val(&m.pow(n).unwrap().trace());
                assert_eq!(tn, Valuation::Finite(n * t));
                let c = classify(&m.pow(n).unwrap(), &Place::Infinity).unwrap();
                assert_eq!(c.length as i64, -2 * n * t);
            }
        }
    }
    assert!(seen > 50);
}

#[test]
fn identity_is_elliptic_in_every_characteristic() {
    for p in PRIMES {
        let id = Mat2::identity_like(&RatFunc::one(p));
        assert!(!classify(&id, &Place::Infinity).unwrap().is_loxodromic());
    }
}
