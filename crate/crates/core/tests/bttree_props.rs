use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treeact::bttree::{
    bt_displacement, bt_distance, bt_find_fixed_vertex, bt_min_displacement, bt_neighbors, trace_length,
    LatticeVertex,
};
use treeact::funcfield::{Field, RatFunc};
use treeact::random;
use treeact::sl2::{classify, IsometryKind, Mat2};
use treeact::valuation::Place;

const PRIMES: [u32; 3] = [2, 3, 5];

fn places(p: u32) -> [Place; 2] {
    [Place::at_zero(p), Place::Infinity]
}

fn vertex(rng: &mut ChaCha8Rng, place: &Place, p: u32) -> LatticeVertex {
    LatticeVertex::new(random::lattice_basis(rng, place, p, 2), place.clone()).unwrap()
}

#[test]
fn metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for p in PRIMES {
        for i in 0..200 {
            let place = &places(p)[i % 2];
            let [u, v, w] = [0; 3].map(|_| vertex(&mut rng, place, p));
            let duv = bt_distance(&u, &v).unwrap();
            assert_eq!(duv, bt_distance(&v, &u).unwrap());
            assert_eq!(bt_distance(&u, &u), Ok(0));
            let dvw = bt_distance(&v, &w).unwrap();
            let duw = bt_distance(&u, &w).unwrap();
            assert!(duw <= duv + dvw);
            // distance 0 means the same lattice class up to homothety
            if duv == 0 {
                let q = v.basis.inv().unwrap().mul(&u.basis);
                let vals: Vec<_> = q.entries().iter().map(|e| place.val(e)).collect();
                let m = *vals.iter().min().unwrap();
                assert_eq!(place.val(&q.det()), m + m.finite().unwrap());
            }
            // the parity of distances is the parity of the determinant valuation
            let parity = |x: &LatticeVertex| place.val(&x.basis.det()).finite().unwrap().rem_euclid(2) as u64;
            assert_eq!(duv % 2, (parity(&u) + parity(&v)) % 2);
        }
    }
}

#[test]
fn action_is_isometric() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    for p in PRIMES {
        for i in 0..200 {
            let place = &places(p)[i % 2];
            let [u, v] = [0; 2].map(|_| vertex(&mut rng, place, p));
            let g = random::sl2_ratfunc(&mut rng, p, 2, 4);
            assert_eq!(bt_distance(&u.act(&g), &v.act(&g)), bt_distance(&u, &v));
            assert_eq!(bt_displacement(&g, &u), bt_distance(&u, &u.act(&g)));
        }
    }
}

#[test]
fn neighbors_are_exactly_the_unit_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for p in PRIMES {
        for place in places(p) {
            for _ in 0..10 {
                let v = vertex(&mut rng, &place, p);
                let ns = bt_neighbors(&v).unwrap();
                assert_eq!(ns.len(), p as usize + 1);
                for (i, n) in ns.iter().enumerate() {
                    assert_eq!(bt_distance(&v, n), Ok(1));
                    assert!(ns[..i].iter().all(|m| m != n));
                }
                let mut found = 0;
                for _ in 0..60 {
                    let k = Mat2::new(
                        random::integral(&mut rng, &place, p, 2),
                        random::integral(&mut rng, &place, p, 2),
                        random::integral(&mut rng, &place, p, 2),
                        random::integral(&mut rng, &place, p, 2),
                    );
                    if k.det().is_zero() {
                        continue;
                    }
                    let w = LatticeVertex::new(v.basis.mul(&k), place.clone()).unwrap();
                    if bt_distance(&v, &w) == Ok(1) {
                        found += 1;
                        assert!(ns.contains(&w));
                    }
                }
                assert!(found > 0);
            }
        }
    }
}

#[test]
fn translation_lengths_agree_with_traces() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    for p in PRIMES {
        for i in 0..30 {
            let place = &places(p)[i % 2];
            let factors = rng.gen_range(1..4);
            let g = random::sl2_ratfunc(&mut rng, p, 1, factors);
            let c = classify(&g, place).unwrap();
            match c.kind {
                IsometryKind::Loxodromic => {
                    assert_eq!(bt_min_displacement(&g, place, 4), Ok(trace_length(&g, place)), "{g}")
                }
                IsometryKind::Elliptic => {
                    let v = bt_find_fixed_vertex(&g, place).unwrap();
                    assert_eq!(bt_displacement(&g, &v), Ok(0));
                }
            }
        }
    }
    let id = Mat2::identity_like(&RatFunc::one(3));
    assert_eq!(bt_min_displacement(&id, &Place::Infinity, 1), Ok(0));
}
