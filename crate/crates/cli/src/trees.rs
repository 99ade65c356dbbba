use std::sync::Arc;

use serde_json::json;

use treeact::bttree::{
    bt_displacement, bt_distance, bt_find_fixed_vertex, bt_min_displacement, bt_neighbors, BtError, LatticeVertex,
};
use treeact::cosettree::{ct_classify, ct_stabiliser_enum, CosetVertex, Family, FamilySpec, FiniteGroup};
use treeact::funcfield::{is_prime, RatFunc};
use treeact::sl2::{classify, Mat2};
use treeact::valuation::Place;

use crate::report::{lines, to_value, Report, Status};
use crate::{BtArgs, CosetArgs};

/// `base` or a basis matrix, optionally followed by `@<place>`.
fn parse_vertex(text: &str, default: &Place, p: u32) -> Result<LatticeVertex, String> {
    let (body, place) = match text.rsplit_once('@') {
        Some((body, place)) => (body, Place::parse(place, p).map_err(|e| e.to_string())?),
        None => (text, default.clone()),
    };
    if body.trim() == "base" {
        return Ok(LatticeVertex::base(place, p));
    }
    let basis = parse_matrix(body, p)?;
    LatticeVertex::new(basis, place).map_err(|e| e.to_string())
}

fn parse_matrix(text: &str, p: u32) -> Result<Mat2<RatFunc>, String> {
    Mat2::<RatFunc>::parse(text, p).map_err(|e| format!("{text:?}: {e}"))
}

pub fn bt(args: &BtArgs) -> Report {
    const CMD: &str = "bt";
    match bt_inner(args) {
        Ok(r) => r,
        Err(e) => Report::error(CMD, e),
    }
}

fn bt_inner(args: &BtArgs) -> Result<Report, String> {
    const CMD: &str = "bt";
    let p = args.p;
    if !is_prime(p as u64) {
        return Err(format!("{p} is not a prime"));
    }
    let place = Place::parse(&args.place, p).map_err(|e| e.to_string())?;
    let err = |e: BtError| e.to_string();
    if let Some(pair) = &args.op.dist {
        let u = parse_vertex(&pair[0], &place, p)?;
        let v = parse_vertex(&pair[1], &place, p)?;
        let d = bt_distance(&u, &v).map_err(err)?;
        let (cu, cv) = (u.canonical(), v.canonical());
        let human = lines(&[("u", cu.to_string()), ("v", cv.to_string()), ("distance", d.to_string())]);
        let json = json!({ "p": p, "place": place.to_string(), "u": to_value(&cu), "v": to_value(&cv), "distance": d });
        return Ok(Report::new(CMD, Status::Verified, json, human));
    }
    if let Some(text) = &args.op.classify {
        let m = parse_matrix(text, p)?;
        let class = classify(&m, &place).map_err(|e| e.to_string())?;
        // the tree must agree with the trace
        let (tree, agrees) = if class.is_loxodromic() {
            let d = bt_min_displacement(&m, &place, args.radius).map_err(err)?;
            (json!({ "min_displacement": d, "radius": args.radius }), d == class.length)
        } else {
            let v = bt_find_fixed_vertex(&m, &place).map_err(err)?;
            let d = bt_displacement(&m, &v).map_err(err)?;
            (json!({ "fixed_vertex": to_value(&v.canonical()) }), d == 0)
        };
        let mut rows = vec![("matrix", m.to_string()), ("place", place.to_string()), ("classification", class.to_string())];
        rows.push(match &tree["min_displacement"] {
            serde_json::Value::Null => ("fixed vertex", v_str(&tree["fixed_vertex"])),
            d => ("min displacement", format!("{d} (radius {})", args.radius)),
        });
        rows.push(("tree agrees", agrees.to_string()));
        let json = json!({ "p": p, "place": place.to_string(), "classification": to_value(&class), "tree": tree, "tree_agrees": agrees });
        return Ok(Report::new(CMD, Status::from_bool(agrees), json, lines(&rows)));
    }
    if let Some(text) = &args.op.fixed {
        let m = parse_matrix(text, p)?;
        let v = bt_find_fixed_vertex(&m, &place).map_err(err)?;
        let d = bt_displacement(&m, &v).map_err(err)?;
        let c = v.canonical();
        let human = lines(&[("matrix", m.to_string()), ("fixed vertex", c.to_string()), ("displacement", d.to_string())]);
        let json = json!({ "p": p, "place": place.to_string(), "vertex": to_value(&c), "displacement": d });
        return Ok(Report::new(CMD, Status::from_bool(d == 0), json, human));
    }
    let text = args.op.neighbors.as_deref().unwrap_or("base");
    let v = parse_vertex(text, &place, p)?;
    let ns = bt_neighbors(&v).map_err(err)?;
    let ok = ns.len() == p as usize + 1 && ns.iter().all(|n| bt_distance(&v, n) == Ok(1));
    let canon: Vec<_> = ns.iter().map(LatticeVertex::canonical).collect();
    let mut human = format!("{} neighbours of {}:\n", canon.len(), v.canonical());
    for c in &canon {
        human.push_str(&format!("  {c}\n"));
    }
    let json = json!({ "p": p, "place": v.place.to_string(), "vertex": to_value(&v.canonical()), "count": canon.len(), "neighbors": to_value(&canon) });
    Ok(Report::new(CMD, Status::from_bool(ok), json, human))
}

fn v_str(v: &serde_json::Value) -> String {
    v.as_str().map(String::from).unwrap_or_else(|| v.to_string())
}

fn family_defaults(family: Family) -> ((i64, i64), i64) {
    match family {
        Family::Lamp => ((-5, 5), 5),
        Family::Lamp2 => ((-3, 3), 3),
        Family::Houghton => ((-4, 5), 4),
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), String> {
    let bad = || format!("window {text:?} should be \"lo,hi\" with lo <= hi");
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Vertices named by `--stabiliser`.
fn stabiliser_vertices(spec: &FamilySpec, text: &str) -> Result<Vec<CosetVertex>, String> {
    let text = text.trim();
    let base = |levels: &[(u8, i64)]| -> Result<Vec<CosetVertex>, String> {
        levels.iter().map(|&(i, l)| Ok(CosetVertex::base(spec.tree(i).map_err(|e| e.to_string())?, l))).collect()
    };
    match text {
        "default-vertices" => base(&spec.trees().iter().map(|t| (t.index, 0)).collect::<Vec<_>>()),
        "base4" if spec.family() == Family::Lamp2 => base(&[(1, 0), (2, 0), (3, 0), (4, 0)]),
        "base4" => Err("base4 names the four trees of lamp2".into()),
        _ => {
            let mut levels = Vec::new();
            for part in text.split_whitespace() {
                let (name, level) = part.split_once('=').ok_or_else(|| format!("bad vertex spec {part:?}"))?;
                let index = match name {
                    "i" => 1,
                    "j" => 2,
                    "k" => 3,
                    "l" => 4,
                    _ => return Err(format!("bad tree name {name:?}; use i, j, k, l")),
                };
                let level: i64 = level.parse().map_err(|_| format!("bad level in {part:?}"))?;
                levels.push((index, level));
            }
            if levels.is_empty() {
                return Err("no vertices given".into());
            }
            base(&levels)
        }
    }
}

pub fn coset(args: &CosetArgs) -> Report {
    match coset_inner(args) {
        Ok(r) => r,
        Err(e) => Report::error("coset", e),
    }
}

fn coset_inner(args: &CosetArgs) -> Result<Report, String> {
    const CMD: &str = "coset";
    let family = Family::parse(&args.family).map_err(|e| e.to_string())?;
    let spec = match family {
        Family::Houghton => FamilySpec::Houghton,
        _ => {
            let g = Arc::new(FiniteGroup::parse(&args.group).map_err(|e| e.to_string())?);
            if family == Family::Lamp {
                FamilySpec::Lamp(g)
            } else {
                FamilySpec::Lamp2(g)
            }
        }
    };
    let group_name = spec.lamp_group().map(|g| g.name().to_string());
    if let Some(text) = &args.op.classify {
        let g = spec.parse_elem(text).map_err(|e| e.to_string())?;
        let mut human = format!("{g} in {family}\n");
        let mut rows = Vec::new();
        for t in spec.trees() {
            let c = ct_classify(&g, t).map_err(|e| e.to_string())?;
            let line = match &c {
                treeact::cosettree::CtClass::Elliptic { fixed } => format!("elliptic, fixes {fixed}"),
                treeact::cosettree::CtClass::Loxodromic { length } => format!("loxodromic, length {length}"),
            };
            human.push_str(&format!("  tree {}: {line}\n", t.index));
            rows.push(json!({ "tree": t.index, "class": to_value(&c) }));
        }
        let json = json!({ "family": family.to_string(), "group": group_name, "element": g.to_string(), "torsion": g.is_torsion(), "trees": rows });
        return Ok(Report::new(CMD, Status::Verified, json, human));
    }
    let text = args.op.stabiliser.as_deref().unwrap_or("default-vertices");
    let vertices = stabiliser_vertices(&spec, text)?;
    let (default_window, default_bound) = family_defaults(family);
    let window = args.window.as_deref().map(parse_window).transpose()?.unwrap_or(default_window);
    let shift_bound = args.shift_bound.unwrap_or(default_bound);
    if shift_bound < 0 {
        return Err("--shift-bound must be nonnegative".into());
    }
    let elems = ct_stabiliser_enum(&spec, &vertices, window, shift_bound).map_err(|e| e.to_string())?;
    let names: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    let mut human = String::new();
    for v in &vertices {
        human.push_str(&format!("vertex {v}\n"));
    }
    human.push_str(&format!(
        "window [{}, {}], shift bound {}: {} element(s)\n",
        window.0,
        window.1,
        shift_bound,
        names.len()
    ));
    for n in &names {
        human.push_str(&format!("  {n}\n"));
    }
    let json = json!({
        "family": family.to_string(),
        "group": group_name,
        "vertices": to_value(&vertices),
        "window": [window.0, window.1],
        "shift_bound": shift_bound,
        "order": names.len(),
        "elements": names,
    });
    Ok(Report::new(CMD, Status::Verified, json, human))
}
