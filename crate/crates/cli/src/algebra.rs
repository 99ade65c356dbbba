use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use treeact::funcfield::{is_prime, parse_ratfunc};
use treeact::random;
use treeact::repcheck::{loxodromify, surface_rep_certificate, verify_matfrm_identities, IdentityReport, RepError};
use treeact::sl2::{builtin_family, FamilyParams};
use treeact::surfaceword::{amalgam_normal_form, evaluate, SurfaceRep, Word};
use treeact::valuation::Place;

use crate::report::{lines, matrix, to_value, Report, Status};
use crate::{PrimeArg, VerifyArgs, WordArgs};

fn require_prime(command: &'static str, p: u32) -> Result<(), Report> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Report::error(command, format!("{p} is not a prime")))
    }
}

fn parse_params(text: &str, p: u32) -> Result<FamilyParams, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [c, h, d, delta] = parts.as_slice() else {
        return Err(format!("--params needs four values c,h,d,δ, got {}", parts.len()));
    };
    let f = |s: &str| parse_ratfunc(s, p).map_err(|e| format!("{s:?}: {e}"));
    FamilyParams::new(f(c)?, f(h)?, f(d)?, f(delta)?).map_err(|e| e.to_string())
}

fn identity_lines(r: &IdentityReport) -> String {
    let mut out = format!("p = {}: c = {}, h = {}, d = {}, δ = {}\n", r.p, r.params[0], r.params[1], r.params[2], r.params[3]);
    for c in &r.checks {
        out.push_str(&format!("  {}  {}\n", if c.holds { "ok  " } else { "FAIL" }, c.name));
    }
    out
}

pub fn verify_matfrm(args: &VerifyArgs, seed: u64) -> Report {
    const CMD: &str = "verify-matfrm";
    if let Err(r) = require_prime(CMD, args.p) {
        return r;
    }
    let first = match &args.params {
        Some(text) => match parse_params(text, args.p) {
            Ok(fp) => fp,
            Err(e) => return Report::error(CMD, e),
        },
        None => builtin_family(args.p),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = vec![first];
    params.extend((0..args.random).map(|_| random::family_params(&mut rng, args.p, 2)));
    let reports: Vec<IdentityReport> = params.iter().map(verify_matfrm_identities).collect();
    let ok = reports.iter().all(IdentityReport::all_hold);
    // full detail for the first set and for any failing set
    let mut human: String = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if i == 0 || !r.all_hold() {
                identity_lines(r)
            } else {
                format!("p = {}: random set {i}: {} identities hold\n", r.p, r.checks.len())
            }
        })
        .collect();
    human.push_str(&format!(
        "{} parameter set(s): {}\n",
        reports.len(),
        if ok { "all identities hold" } else { "some identities fail" }
    ));
    let json = json!({ "p": args.p, "seed": seed, "all_hold": ok, "reports": reports.iter().map(to_value).collect::<Vec<_>>() });
    Report::new(CMD, Status::from_bool(ok), json, human)
}

pub fn certify_surface(args: &PrimeArg) -> Report {
    const CMD: &str = "certify-surface";
    match surface_rep_certificate(args.p) {
        Ok((cert, _)) => {
            let m = &cert.matrices;
            let human = lines(&[
                ("p", cert.p.to_string()),
                ("place", cert.free.place.clone()),
                ("criterion", cert.free.criterion.to_string()),
                ("s", cert.free.s.to_string()),
                ("lengths A, B, AB", format!("{:?}", cert.free.lengths)),
                ("X", cert.x.to_string()),
                ("Y", cert.y.to_string()),
                ("v(X), v(Y)", format!("{}, {}", cert.v_x, cert.v_y)),
                ("commutator", matrix(&cert.commutator)),
                ("relation holds", cert.relation_holds.to_string()),
                ("A", matrix(&m.a)),
                ("B", matrix(&m.b)),
                ("C", matrix(&m.c)),
                ("D", matrix(&m.d)),
                ("result", "faithful representation certified".into()),
            ]);
            Report::new(CMD, Status::Verified, json!({ "certificate": to_value(&cert) }), human)
        }
        Err(e @ RepError::NotPrime(_)) => Report::error(CMD, e),
        Err(e) => Report::new(CMD, Status::Failed, json!({ "p": args.p, "failure": e.to_string() }), format!("not certified: {e}\n")),
    }
}

fn parse_word(text: &str) -> Result<Word, String> {
    Word::parse(text.trim()).map_err(|e| format!("{text:?}: {e}"))
}

pub fn word(args: &WordArgs) -> Report {
    const CMD: &str = "word";
    if let Err(r) = require_prime(CMD, args.p) {
        return r;
    }
    let rep = SurfaceRep::builtin(args.p);
    if let Some(text) = &args.op.eval {
        let w = match parse_word(text) {
            Ok(w) => w,
            Err(e) => return Report::error(CMD, e),
        };
        let m = evaluate(&w, &rep);
        let entries = m.entry_strings();
        let nf = amalgam_normal_form(&w);
        let human = lines(&[
            ("word", w.to_string()),
            ("normal form", nf.to_string()),
            ("m11", entries[0][0].clone()),
            ("m12", entries[0][1].clone()),
            ("m21", entries[1][0].clone()),
            ("m22", entries[1][1].clone()),
            ("trace", m.trace().to_string()),
            ("identity", m.is_identity().to_string()),
        ]);
        let json = json!({
            "p": args.p,
            "word": w.to_string(),
            "matrix": entries,
            "trace": m.trace().to_string(),
            "identity": m.is_identity(),
            "normal_form_identity": nf.is_identity(),
        });
        // the word problem: normal form and image must agree
        let status = Status::from_bool(m.is_identity() == nf.is_identity());
        return Report::new(CMD, status, json, human);
    }
    if let Some(text) = &args.op.nf {
        let w = match parse_word(text) {
            Ok(w) => w,
            Err(e) => return Report::error(CMD, e),
        };
        let nf = amalgam_normal_form(&w);
        let kind = if nf.is_identity() { "Identity".to_string() } else { format!("{} syllable(s)", nf.syllable_count()) };
        let human = lines(&[("word", w.to_string()), ("normal form", nf.to_string()), ("kind", kind)]);
        let json = json!({ "word": w.to_string(), "identity": nf.is_identity(), "normal_form": to_value(&nf), "text": nf.to_string() });
        return Report::new(CMD, Status::Verified, json, human);
    }
    let text = args.op.loxodromify.as_deref().unwrap_or_default();
    let words = match text.split(',').map(parse_word).collect::<Result<Vec<_>, _>>() {
        Ok(ws) => ws,
        Err(e) => return Report::error(CMD, e),
    };
    match loxodromify(&words, &rep, &Place::Infinity, args.n_max) {
        Ok(cert) => {
            let mut human = format!("n = {} (y -> y·x^{} at {})\n", cert.n, cert.n, cert.place);
            for wv in &cert.words {
                human.push_str(&format!("  {:<12} {}\n", wv.word.to_string(), wv.classification));
            }
            for m in &cert.monotone {
                human.push_str(&format!("  recheck at n = {}: {}\n", m.n, if m.passed { "pass" } else { "FAIL" }));
            }
            let ok = cert.monotone();
            Report::new(CMD, Status::from_bool(ok), json!({ "p": args.p, "certificate": to_value(&cert) }), human)
        }
        Err(e @ RepError::TrivialWord(_)) => Report::error(CMD, e),
        Err(RepError::NotFound { n_max, diagnostics }) => {
            let mut human = format!("no n <= {n_max} found\n");
            for wv in &diagnostics {
                human.push_str(&format!("  {:<12} v(tr) = {} unique = {}\n", wv.word.to_string(), wv.valuation, wv.unique));
            }
            Report::new(CMD, Status::Failed, json!({ "p": args.p, "n_max": n_max, "diagnostics": to_value(&diagnostics) }), human)
        }
        Err(e) => Report::new(CMD, Status::Failed, json!({ "failure": e.to_string() }), format!("{e}\n")),
    }
}
