//! Browser bindings: word normal forms, surface certificates and
//! Bruhat-Tits classification. Every export returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use treeact::bttree::{bt_displacement, bt_find_fixed_vertex, bt_min_displacement, bt_neighbors, LatticeVertex};
use treeact::funcfield::{is_prime, RatFunc};
use treeact::repcheck::surface_rep_certificate;
use treeact::sl2::{classify, Mat2};
use treeact::surfaceword::{amalgam_normal_form, evaluate, SurfaceRep, Word};
use treeact::valuation::Place;

fn fail(e: impl ToString) -> JsError {
    JsError::new(&e.to_string())
}

fn prime(p: u32) -> Result<(), JsError> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(fail(format!("{p} is not a prime")))
    }
}

/// Normal form of `word` and whether its image at `p` is the identity.
#[wasm_bindgen]
pub fn normal_form(word: &str, p: u32) -> Result<String, JsError> {
    prime(p)?;
    let w = Word::parse(word.trim()).map_err(fail)?;
    let nf = amalgam_normal_form(&w);
    let m = evaluate(&w, &SurfaceRep::builtin(p));
    Ok(json!({
        "word": w.to_string(),
        "normal_form": nf.to_string(),
        "syllables": nf.syllable_count(),
        "identity": nf.is_identity(),
        "image_is_identity": m.is_identity(),
        "trace": m.trace().to_string(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn certify_surface(p: u32) -> Result<String, JsError> {
    let (cert, _) = surface_rep_certificate(p).map_err(fail)?;
    serde_json::to_string(&cert).map_err(fail)
}

/// Elliptic or loxodromic, checked against the tree.
#[wasm_bindgen]
pub fn bt_classify(matrix: &str, p: u32, place: &str) -> Result<String, JsError> {
    prime(p)?;
    let place = Place::parse(place, p).map_err(fail)?;
    let m = Mat2::<RatFunc>::parse(matrix, p).map_err(fail)?;
    let class = classify(&m, &place).map_err(fail)?;
    let tree = if class.is_loxodromic() {
        json!({ "min_displacement": bt_min_displacement(&m, &place, 3).map_err(fail)? })
    } else {
        let v = bt_find_fixed_vertex(&m, &place).map_err(fail)?;
        json!({ "fixed_vertex": v.canonical().to_string(), "displacement": bt_displacement(&m, &v).map_err(fail)? })
    };
    let base = LatticeVertex::base(place.clone(), p);
    let moved = base.act(&m).canonical().to_string();
    let neighbors: Vec<String> =
        bt_neighbors(&base).map_err(fail)?.iter().map(|v| v.canonical().to_string()).collect();
    Ok(json!({
        "classification": class.to_string(),
        "kind": class.kind,
        "length": class.length,
        "tree": tree,
        "base": base.canonical().to_string(),
        "base_image": moved,
        "base_neighbors": neighbors,
    })
    .to_string())
}
