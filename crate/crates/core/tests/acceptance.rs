//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails, except for criterion 2 whose only
//! mismatch is the known sign of the printed top-right entries of `A` and
//! `D`; that line still reads FAIL.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treeact::bttree::{
    bt_displacement, bt_distance, bt_find_fixed_vertex, bt_min_displacement, bt_neighbors, trace_length,
    LatticeVertex,
};
use treeact::cosettree::{
    ct_build_four_trees, ct_classify, ct_stabiliser_enum, CosetVertex, CtClass, FamilySpec, FiniteGroup, GroupElem,
};
use treeact::funcfield::{is_prime, BiRat, Field, RatFunc};
use treeact::random;
use treeact::repcheck::{free_discrete_certificate, loxodromify, verify_matfrm_identities, DEFAULT_N_MAX};
use treeact::sl2::{builtin_family, matfrm_pair, Mat2};
use treeact::surfaceword::sweep::faithfulness_sweep;
use treeact::surfaceword::{amalgam_normal_form, leading_data, Factor, SurfaceRep, Word};
use treeact::valuation::{Place, Valuation};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails only in the documented way.
    KnownFail(String),
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn mat(s: &str, p: u32) -> Mat2<RatFunc> {
    Mat2::<RatFunc>::parse(s, p).unwrap()
}

fn birat_mat(s: &str, p: u32) -> Mat2<BiRat> {
    Mat2::<BiRat>::parse(s, p).unwrap()
}

fn inf(f: &RatFunc) -> Valuation {
    Place::Infinity.val(f)
}

fn identity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();
    let mut count = 0;
    for p in [2, 3, 5, 7, 13] {
        let mut params = vec![builtin_family(p)];
        params.extend((0..100).map(|_| random::family_params(&mut rng, p, 2)));
        for fp in &params {
            count += 1;
            let report = verify_matfrm_identities(fp);
            if !report.all_hold() {
                failures.push(format!("p={p} {:?}", report.params));
            }
        }
    }
    check(failures.is_empty(), format!("{count} parameter sets, {} failing {:?}", failures.len(), failures))
}

const ODD_A: &str = "[[(1-2*x^2-2*x^3)/(x*(x-1)), (-1+2*x^2+x^3+x^4)/(x^3*(x-1))], [1, 1/x^2]]";
const ODD_B: &str =
    "[[(x^2-1)/(x-2*x^3-2*x^4), (1+2*x-x^2-3*x^3-2*x^4)/(x^2*(2*x^3+2*x^2-1))], [x, 1+x]]";
const ODD_D: &str = "[[(1-2*x^2-2*x^3)/(x*(x-1)), (-1+2*x^2+x^3+x^4)/(y*x^3*(x-1))], [y, 1/x^2]]";
const ODD_C: &str =
    "[[(x^2-1)/(x-2*x^3-2*x^4), (1+2*x-x^2-3*x^3-2*x^4)/(y*x^2*(2*x^3+2*x^2-1))], [y*x, 1+x]]";

fn odd_reproduction() -> Outcome {
    let mut problems = Vec::new();
    let mut mismatches: BTreeSet<String> = BTreeSet::new();
    let mut known_shape = true;
    let primes: Vec<u32> = (3..=97).filter(|&n| is_prime(n as u64)).collect();
    for &p in &primes {
        let rep = SurfaceRep::builtin(p);
        let [a, b, c, d] = rep.generators();
        let displayed = [("A", ODD_A), ("B", ODD_B), ("C", ODD_C), ("D", ODD_D)].map(|(n, s)| (n, birat_mat(s, p)));
        for ((name, shown), got) in displayed.iter().zip([a, b, c, d]) {
            for (i, (g, s)) in got.entries().into_iter().zip(shown.entries()).enumerate() {
                if g != s {
                    let entry = format!("{name}[{},{}]", i / 2 + 1, i % 2 + 1);
                    // the documented discrepancy: opposite sign
                    known_shape &= (entry == "A[1,2]" || entry == "D[1,2]") && *g == s.neg();
                    mismatches.insert(entry);
                }
            }
        }
        let shown_a = mat(ODD_A, p);
        known_shape &= !shown_a.det().is_one();
        let pair = matfrm_pair(&builtin_family(p));
        for (what, tr) in [("A", pair.a.trace()), ("B", pair.b.trace()), ("AB", pair.a.mul(&pair.b).trace())] {
            if inf(&tr) != Valuation::Finite(-1) {
                problems.push(format!("p={p} v(tr {what}) = {}", inf(&tr)));
            }
        }
        if inf(&pair.x) != Valuation::Finite(1) || inf(&pair.y) != Valuation::Finite(-2) {
            problems.push(format!("p={p} v(X), v(Y) = {}, {}", inf(&pair.x), inf(&pair.y)));
        }
    }
    let detail = format!(
        "{} primes; trace and X, Y valuations {}; entries differing from the printed matrices: {:?}",
        primes.len(),
        if problems.is_empty() { "match".to_string() } else { format!("fail {problems:?}") },
        mismatches
    );
    if !problems.is_empty() {
        return Outcome::Fail(detail);
    }
    if mismatches.is_empty() {
        return Outcome::Pass(detail);
    }
    if known_shape {
        Outcome::KnownFail(format!(
            "{detail}; computed entries are the negatives of the printed ones, and the printed A has determinant ≠ 1"
        ))
    } else {
        Outcome::Fail(detail)
    }
}

const TWO_A: &str = "[[(x^8+x^7+x^5+x^4+x^3)/(x^6+x^5+1), \
    (x^13+x^11+x^2+x+1)/((x^6+x^5+1)*(x^5+1)*(x^2+x+1))], [1, x^3/((x^5+1)*(x^2+x+1))]]";
const TWO_B: &str = "[[(x^8+x^7+x^2)/((x^7+x^2+1)*(x^5+1)), \
    (x^12+x^10+x^9+x^5+x^4+x^2+1)/((x^7+x^2+1)*(x^5+1)*(x^2+x+1))], [x^2+x+1, x^2]]";

fn char_two_reproduction() -> Outcome {
    let p = 2;
    let fp = builtin_family(p);
    let pair = matfrm_pair(&fp);
    let mut problems = Vec::new();
    if pair.a != mat(TWO_A, p) {
        problems.push(format!("A = {}", pair.a));
    }
    if pair.b != mat(TWO_B, p) {
        problems.push(format!("B = {}", pair.b));
    }
    let dh1 = fp.d.mul(&fp.delta).mul(&fp.h).add(&RatFunc::one(p));
    let vals = [
        ("d", inf(&fp.d), 4),
        ("δ", inf(&fp.delta), -2),
        ("h", inf(&fp.h), -2),
        ("dδh+1", inf(&dh1), 5),
        ("X", inf(&pair.x), 4),
        ("Y", inf(&pair.y), -2),
        ("tr A", inf(&pair.a.trace()), -2),
        ("tr B", inf(&pair.b.trace()), -2),
        ("tr AB", inf(&pair.a.mul(&pair.b).trace()), -2),
    ];
    for (name, got, want) in vals {
        if got != Valuation::Finite(want) {
            problems.push(format!("v({name}) = {got}, expected {want}"));
        }
    }
    check(problems.is_empty(), format!("A, B and nine valuations; problems {problems:?}"))
}

fn faithfulness() -> Outcome {
    let report = faithfulness_sweep(8, &[2, 3, 5]);
    check(
        report.passed(),
        format!(
            "{} words per prime, {} trivial, {} exact evaluations, failures {:?}",
            report.words,
            report.trivial_words,
            report.exact_evaluations,
            report.failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn leading_term_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    let mut checked = 0;
    for p in [2, 5] {
        let rep = SurfaceRep::builtin(p);
        for _ in 0..200 {
            let first = if rng.gen_bool(0.5) { Factor::One } else { Factor::Two };
            let l = rng.gen_range(1..=6);
            let w = random::alternating_word(&mut rng, first, 2 * l, 3);
            let nf = amalgam_normal_form(&w);
            if nf.syllable_count() != 2 * l {
                problems.push(format!("p={p} {w}: normal form has {} syllables", nf.syllable_count()));
                continue;
            }
            match leading_data(&nf, &rep) {
                Ok(ld) if ld.l == l && !ld.alpha.is_zero() => checked += 1,
                Ok(ld) => problems.push(format!("p={p} {w}: l = {}, alpha = {}", ld.l, ld.alpha)),
                Err(e) => problems.push(format!("p={p} {w}: {e}")),
            }
        }
    }
    check(problems.is_empty(), format!("{checked} forms checked, problems {problems:?}"))
}

fn tree_algebra_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let place = Place::Infinity;
    let mut problems = Vec::new();
    let (mut lox, mut ell) = (0, 0);
    for p in [2, 3, 5] {
        let pair = matfrm_pair(&builtin_family(p));
        if let Ok(cert) = free_discrete_certificate(&pair.a, &pair.b, &place) {
            let ab = pair.a.mul(&pair.b);
            for (m, len) in [&pair.a, &pair.b, &ab].into_iter().zip(cert.lengths) {
                if bt_min_displacement(m, &place, 4) != Ok(len) {
                    problems.push(format!("p={p}: certified length {len} not realised"));
                }
            }
        } else {
            problems.push(format!("p={p}: no certificate"));
        }
        let gens = [pair.a.clone(), pair.b.clone(), pair.a.inv().unwrap(), pair.b.inv().unwrap()];
        let mut samples: Vec<Mat2<RatFunc>> = gens.to_vec();
        for _ in 0..50 {
            let len = rng.gen_range(2..=4);
            let w = random::reduced_word(&mut rng, &[0, 1, 4, 5].map(|i| treeact::surfaceword::Letter::ALL[i]), len);
            let m = w.letters().iter().fold(Mat2::identity_like(&RatFunc::one(p)), |acc, l| acc.mul(&gens[index(l)]));
            samples.push(m);
        }
        // the group is free and discrete, so elliptic samples come from
        // conjugating a rotation by the products above
        let rotation = Mat2::<RatFunc>::parse("[[0,1],[-1,0]]", p).unwrap();
        let conjugated: Vec<_> =
            samples[4..14].iter().map(|w| w.mul(&rotation).mul(&w.inv().unwrap())).collect();
        samples.extend(conjugated);
        for m in &samples {
            let tl = trace_length(m, &place);
            if tl > 0 {
                lox += 1;
                let d = bt_min_displacement(m, &place, 4);
                if d != Ok(tl) {
                    problems.push(format!("p={p}: -2v(tr) = {tl} but min displacement {d:?}"));
                }
            } else {
                ell += 1;
                match bt_find_fixed_vertex(m, &place) {
                    Ok(v) if bt_displacement(m, &v) == Ok(0) => {}
                    other => problems.push(format!("p={p}: descent gave {other:?}")),
                }
            }
        }
    }
    check(problems.is_empty(), format!("{lox} loxodromic, {ell} elliptic samples; problems {problems:?}"))
}

fn index(l: &treeact::surfaceword::Letter) -> usize {
    l.generator() + if l.is_inverse() { 2 } else { 0 }
}

fn tree_metric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    for p in [2, 3, 5] {
        for i in 0..200 {
            let place = if i % 2 == 0 { Place::at_zero(p) } else { Place::Infinity };
            let [u, v, w] =
                [0; 3].map(|_| LatticeVertex::new(random::lattice_basis(&mut rng, &place, p, 2), place.clone()).unwrap());
            let (duv, dvu) = (bt_distance(&u, &v).unwrap(), bt_distance(&v, &u).unwrap());
            let (dvw, duw) = (bt_distance(&v, &w).unwrap(), bt_distance(&u, &w).unwrap());
            if duv != dvu || duw > duv + dvw || bt_distance(&u, &u) != Ok(0) {
                problems.push(format!("p={p}: metric axiom fails"));
            }
            let g = random::sl2_ratfunc(&mut rng, p, 2, 4);
            if bt_distance(&u.act(&g), &v.act(&g)) != Ok(duv) {
                problems.push(format!("p={p}: action not isometric"));
            }
            let ns = bt_neighbors(&u).unwrap();
            let distinct = ns.iter().enumerate().all(|(k, a)| ns[..k].iter().all(|b| a != b));
            if ns.len() != p as usize + 1 || !distinct || ns.iter().any(|n| bt_distance(&u, n) != Ok(1)) {
                problems.push(format!("p={p}: neighbours wrong"));
            }
        }
    }
    check(problems.is_empty(), format!("600 samples; problems {problems:?}"))
}

fn lamplighter() -> Outcome {
    let mut problems = Vec::new();
    let mut orders = Vec::new();
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
        let order = g.order();
        let spec = FamilySpec::Lamp(Arc::new(g));
        let vs = [CosetVertex::base(spec.tree(1).unwrap(), 0), CosetVertex::base(spec.tree(2).unwrap(), 0)];
        let st = ct_stabiliser_enum(&spec, &vs, (-5, 5), 5).unwrap();
        orders.push(st.len());
        if st.len() != order || st.iter().any(|e| !matches!(e, GroupElem::Lamp(l) if l.shift == 0 && l.support.keys().all(|&j| j == 0))) {
            problems.push(format!("{}: stabiliser {:?}", spec.lamp_group().unwrap(), st.iter().map(|e| e.to_string()).collect::<Vec<_>>()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = FamilySpec::Lamp(Arc::new(FiniteGroup::cyclic(2)));
    let mut sampled = 0;
    while sampled < 200 {
        let e = random::lamp_elem(&mut rng, spec.lamp_group().unwrap(), 4, 4);
        if e.shift == 0 {
            continue;
        }
        sampled += 1;
        let g = GroupElem::Lamp(e.clone());
        let ok = spec
            .trees()
            .into_iter()
            .any(|t| ct_classify(&g, t) == Ok(CtClass::Loxodromic { length: e.shift.unsigned_abs() }));
        if !ok {
            problems.push(format!("{g} is not loxodromic"));
        }
    }
    check(problems.is_empty(), format!("stabiliser orders {orders:?}, 200 infinite-order samples; problems {problems:?}"))
}

fn houghton() -> Outcome {
    let spec = FamilySpec::Houghton;
    let vs = [CosetVertex::base(spec.tree(1).unwrap(), 2), CosetVertex::base(spec.tree(2).unwrap(), -1)];
    let small = ct_stabiliser_enum(&spec, &vs, (-4, 5), 4).unwrap();
    let large = ct_stabiliser_enum(&spec, &vs, (-6, 7), 6).unwrap();
    check(
        small.len() == 24 && small == large,
        format!("{} elements in [-4,5], {} in [-6,7]", small.len(), large.len()),
    )
}

fn four_trees() -> Outcome {
    let spec = FamilySpec::Lamp2(Arc::new(FiniteGroup::cyclic(2)));
    let trees = ct_build_four_trees();
    let vs: Vec<_> = trees.iter().map(|t| CosetVertex::base(t.tree, 0)).collect();
    let st: Vec<String> = ct_stabiliser_enum(&spec, &vs, (-3, 3), 3).unwrap().iter().map(|e| e.to_string()).collect();
    let lox_count = |g: &str| {
        let g = spec.parse_elem(g).unwrap();
        trees.iter().filter(|t| ct_classify(&g, t.tree).unwrap().is_loxodromic()).count()
    };
    let (s, t) = (lox_count("s"), lox_count("t"));
    check(
        st == ["1", "x[0,0]"] && s == 2 && t == 2,
        format!("stabiliser {st:?}; s loxodromic on {s} trees, t on {t}"),
    )
}

fn loxodromify_sets() -> Outcome {
    let sets: [&[&str]; 4] = [&["abAB"], &["a"], &["ac"], &["ac", "bd", "abcd"]];
    let mut found = Vec::new();
    let mut problems = Vec::new();
    for p in [2, 5] {
        let rep = SurfaceRep::builtin(p);
        for set in sets {
            let words: Vec<Word> = set.iter().map(|s| Word::parse(s).unwrap()).collect();
            match loxodromify(&words, &rep, &Place::Infinity, DEFAULT_N_MAX) {
                Ok(c) if c.monotone() => found.push(format!("p={p} {set:?}: n={}", c.n)),
                Ok(c) => problems.push(format!("p={p} {set:?}: n={} not monotone", c.n)),
                Err(e) => problems.push(format!("p={p} {set:?}: {e}")),
            }
        }
    }
    check(problems.is_empty(), format!("{found:?}; problems {problems:?}"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "commutator-family identities", budget: Duration::from_secs(10), run: identity_suite },
        Criterion { id: 2, name: "odd-characteristic matrices and valuations", budget: Duration::from_secs(5), run: odd_reproduction },
        Criterion { id: 3, name: "characteristic-two matrices and valuations", budget: Duration::from_secs(5), run: char_two_reproduction },
        Criterion { id: 4, name: "word problem over all words of length <= 8", budget: Duration::from_secs(600), run: faithfulness },
        Criterion { id: 5, name: "leading-term law", budget: Duration::from_secs(60), run: leading_term_law },
        Criterion { id: 6, name: "tree displacement equals -2 v(tr)", budget: Duration::from_secs(120), run: tree_algebra_agreement },
        Criterion { id: 7, name: "tree metric, isometry and valence", budget: Duration::from_secs(60), run: tree_metric },
        Criterion { id: 8, name: "lamplighter stabilisers and loxodromics", budget: Duration::from_secs(30), run: lamplighter },
        Criterion { id: 9, name: "Houghton stabiliser", budget: Duration::from_secs(60), run: houghton },
        Criterion { id: 10, name: "four trees for F wr Z^2", budget: Duration::from_secs(60), run: four_trees },
        Criterion { id: 11, name: "loxodromic substitution", budget: Duration::from_secs(60), run: loxodromify_sets },
    ];
    let mut unexpected = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = elapsed > c.budget;
        let (status, detail, counts) = match outcome {
            Outcome::Pass(d) if !over => ("PASS", d, false),
            Outcome::Pass(d) => ("FAIL", format!("over budget; {d}"), true),
            Outcome::Fail(d) => ("FAIL", d, true),
            Outcome::KnownFail(d) => ("FAIL", format!("known: {d}"), over),
        };
        if counts {
            unexpected += 1;
        }
        println!(
            "{status} criterion {:>2} {} ({:.2} s of {} s): {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
