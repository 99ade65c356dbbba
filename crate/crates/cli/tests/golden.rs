use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_treeact")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, stdout, stderr) = run(&all);
    let v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}\n{stderr}"));
    assert_eq!(v["schema"], 1, "{args:?}");
    assert_eq!(v["exit_code"], code, "{args:?}");
    (code, v)
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify-matfrm", "--p", "7"], 0),
        (&["verify-matfrm", "--p", "2"], 0),
        (&["verify-matfrm", "--p", "5", "--params", "1,x,x,x"], 0),
        (&["verify-matfrm", "--p", "3", "--params", "1,1,1,2"], 2),
        (&["verify-matfrm", "--p", "3", "--params", "1,x"], 2),
        (&["verify-matfrm", "--p", "6"], 2),
        (&["certify-surface", "--p", "3"], 0),
        (&["certify-surface", "--p", "2"], 0),
        (&["certify-surface", "--p", "4"], 2),
        (&["word", "--p", "5", "--nf", "abABcdCD"], 0),
        (&["word", "--p", "5", "--eval", "abAB"], 0),
        (&["word", "--p", "5", "--eval", "abq"], 2),
        (&["word", "--p", "5", "--loxodromify", "ac,bd"], 0),
        (&["word", "--p", "5", "--loxodromify", "abABcdCD"], 2),
        (&["bt", "--p", "5", "--place", "x", "--classify", "[[x,0],[0,1/x]]"], 0),
        (&["bt", "--p", "2", "--neighbors", "base"], 0),
        (&["bt", "--p", "3", "--dist", "base", "[[x,0],[0,1]]@x"], 2),
        (&["bt", "--p", "3", "--fixed", "[[x,0],[0,1/x]]"], 2),
        (&["bt", "--p", "3", "--place", "moon", "--neighbors", "base"], 2),
        (&["coset", "--family", "lamp", "--stabiliser", "default-vertices"], 0),
        (&["coset", "--family", "houghton", "--stabiliser", "i=2 j=-1"], 0),
        (&["coset", "--family", "lamp2", "--stabiliser", "base4"], 0),
        (&["coset", "--family", "lamp", "--stabiliser", "base4"], 2),
        (&["coset", "--family", "tower", "--stabiliser", "default-vertices"], 2),
        (&["coset", "--family", "lamp", "--classify", "x[0] t^3"], 0),
        (&["bt", "--p", "3"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, *want, "{args:?}: {stderr}");
    }
}

#[test]
fn verify_matfrm_reports_every_identity() {
    let (code, v) = json(&["verify-matfrm", "--p", "7"]);
    assert_eq!(code, 0);
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    assert!(checks.iter().all(|c| c["holds"] == true));
    let (_, v) = json(&["verify-matfrm", "--p", "3", "--random", "4", "--seed", "11"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 5);
    assert_eq!(v["seed"], 11);
}

#[test]
fn randomized_runs_are_deterministic() {
    let a = run(&["verify-matfrm", "--p", "5", "--random", "3", "--seed", "4", "--format", "json"]);
    let b = run(&["verify-matfrm", "--p", "5", "--random", "3", "--seed", "4", "--format", "json"]);
    assert_eq!(a, b);
    let c = run(&["verify-matfrm", "--p", "5", "--random", "3", "--seed", "5", "--format", "json"]);
    assert_ne!(a.1, c.1);
}

#[test]
fn certify_surface_valuations() {
    let (_, v) = json(&["certify-surface", "--p", "3"]);
    let cert = &v["certificate"];
    assert_eq!(cert["free"]["s"], -1);
    assert_eq!((cert["v_x"].clone(), cert["v_y"].clone()), (Value::from(1), Value::from(-2)));
    let (_, v) = json(&["certify-surface", "--p", "2"]);
    assert_eq!(v["certificate"]["free"]["s"], -2);
    assert_eq!(v["certificate"]["free"]["lengths"], serde_json::json!([4, 4, 4]));
    let (code, v) = json(&["certify-surface", "--p", "4"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("not a prime"));
}

#[test]
fn word_commands() {
    let (_, v) = json(&["word", "--p", "5", "--nf", "abABcdCD"]);
    assert_eq!(v["identity"], true);
    let (_, stdout, _) = run(&["word", "--p", "5", "--nf", "abABcdCD"]);
    assert!(stdout.contains("Identity"));
    let (_, v) = json(&["word", "--p", "5", "--eval", "abAB"]);
    assert_eq!(v["matrix"][0][1], "0");
    assert_eq!(v["matrix"][1][0], "0");
    let (_, v) = json(&["word", "--p", "5", "--loxodromify", "ac,bd"]);
    let cert = &v["certificate"];
    assert_eq!(cert["n"], 2);
    assert!(cert["words"].as_array().unwrap().iter().all(|w| w["unique"] == true && w["valuation"].as_i64().unwrap() < 0));
}

#[test]
fn bt_commands() {
    let (_, v) = json(&["bt", "--p", "5", "--place", "x", "--classify", "[[x,0],[0,1/x]]"]);
    assert_eq!(v["classification"]["kind"], "loxodromic");
    assert_eq!(v["classification"]["length"], 2);
    assert_eq!(v["tree"]["min_displacement"], 2);
    let (_, v) = json(&["bt", "--p", "2", "--neighbors", "base"]);
    assert_eq!(v["count"], 3);
    let (_, v) = json(&["bt", "--p", "3", "--dist", "base", "[[x^2,0],[0,1]]"]);
    assert_eq!(v["distance"], 2);
    let (code, _) = json(&["bt", "--p", "3", "--dist", "base", "[[x,0],[0,1]]@x"]);
    assert_eq!(code, 2);
}

#[test]
fn coset_commands() {
    let (_, v) = json(&["coset", "--family", "lamp", "--stabiliser", "default-vertices"]);
    assert_eq!(v["elements"], serde_json::json!(["1", "x[0]"]));
    let (_, v) = json(&["coset", "--family", "lamp", "--stabiliser", "default-vertices", "--group", "s3"]);
    assert_eq!(v["order"], 6);
    let (_, v) = json(&["coset", "--family", "houghton", "--stabiliser", "i=2 j=-1"]);
    assert_eq!(v["order"], 24);
    let (_, v) = json(&["coset", "--family", "houghton", "--stabiliser", "i=2 j=-1", "--window", "-6,7", "--shift-bound", "6"]);
    assert_eq!(v["order"], 24);
    let (_, v) = json(&["coset", "--family", "lamp2", "--stabiliser", "base4"]);
    assert_eq!(v["elements"], serde_json::json!(["1", "x[0,0]"]));
    let (_, v) = json(&["coset", "--family", "lamp2", "--classify", "s"]);
    let lox: Vec<bool> = v["trees"].as_array().unwrap().iter().map(|t| t["class"]["kind"] == "loxodromic").collect();
    assert_eq!(lox, [true, true, false, false]);
}

#[test]
fn env_overrides_bounds() {
    let out = Command::new(env!("CARGO_BIN_EXE_treeact"))
        .args(["coset", "--family", "houghton", "--stabiliser", "i=2 j=-1", "--format", "json"])
        .env("TREEACT_WINDOW", "-6,7")
        .env("TREEACT_SHIFT_BOUND", "6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["window"], serde_json::json!([-6, 7]));
    assert_eq!(v["order"], 24);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("treeact-golden-{}.json", std::process::id()));
    let (code, stdout, _) = run(&["bt", "--p", "3", "--neighbors", "base", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    let _ = std::fs::remove_file(path);
}
