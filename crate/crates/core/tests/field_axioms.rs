use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treeact::funcfield::{parse_birat, parse_ratfunc, BiRat, Field, Fp, RatFunc, YLaurent};
use treeact::random;

const PRIMES: [u32; 5] = [2, 3, 5, 7, 13];
const SAMPLES: usize = 200;

fn check_field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)), "additive associativity");
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)), "multiplicative associativity");
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)), "distributivity");
    assert!(a.add(&a.neg()).is_zero());
    assert_eq!(a.sub(b).add(b), *a);
    assert_eq!(a.mul(&a.one_like()), *a);
    if !a.is_zero() {
        assert!(a.mul(&a.inv().unwrap()).is_one());
    } else {
        assert!(a.inv().is_err());
    }
}

#[test]
fn prime_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in PRIMES {
        for _ in 0..SAMPLES {
            use rand::Rng;
            let [a, b, c] = [0; 3].map(|_| Fp::new(p, rng.gen_range(0..p as i64)));
            check_field_axioms(&a, &b, &c);
        }
    }
}

#[test]
fn ratfunc_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in PRIMES {
        for _ in 0..SAMPLES {
            let [a, b, c] = [0; 3].map(|_| random::ratfunc(&mut rng, p, 4));
            check_field_axioms(&a, &b, &c);
            assert_eq!(a.renormalized(), a, "canonical form is idempotent");
            assert!(a.den().is_monic());
        }
    }
}

#[test]
fn laurent_ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in PRIMES {
        for _ in 0..SAMPLES {
            let [a, b, c] = [0; 3].map(|_| random::laurent(&mut rng, p, 3, 2));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert!(a.sub(&a).is_zero());
            assert_eq!(a.mul(&YLaurent::one(p)), a);
        }
    }
}

#[test]
fn birat_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in PRIMES {
        for _ in 0..SAMPLES {
            let [a, b, c] = [0; 3].map(|_| random::birat(&mut rng, p, 2, 2));
            check_field_axioms(&a, &b, &c);
            assert_eq!(a.renormalized(), a);
        }
    }
}

#[test]
fn substitution_is_multiplicative_and_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in PRIMES {
        for n in [-2, 0, 1, 3] {
            for _ in 0..40 {
                let f = random::birat(&mut rng, p, 2, 2);
                let g = random::birat(&mut rng, p, 2, 2);
                assert_eq!(f.mul(&g).substitute_y(n), f.substitute_y(n).mul(&g.substitute_y(n)));
                assert_eq!(f.add(&g).substitute_y(n), f.substitute_y(n).add(&g.substitute_y(n)));
            }
        }
    }
}

#[test]
fn substitution_fixes_ratfuncs() {
    let f = BiRat::from_ratfunc(parse_ratfunc("(x^2+1)/(x+2)", 7).unwrap());
    assert_eq!(f.substitute_y(5), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_format_parse_round_trip(seed in any::<u64>(), pi in 0usize..5) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: RatFunc = random::ratfunc(&mut rng, p, 6);
        let back = parse_ratfunc(&f.to_string(), p).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn birat_format_parse_round_trip(seed in any::<u64>(), pi in 0usize..5) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: BiRat = random::birat(&mut rng, p, 3, 3);
        let back = parse_birat(&f.to_string(), p).unwrap();
        prop_assert_eq!(back, f);
    }
}
