//! Trees built from ascending chains of subgroups, for `F ≀ Z` (two trees),
//! `F ≀ Z²` (four trees) and Houghton's `H₂` (two trees).
//!
//! A vertex at level `i` is a coset of the `i`-th subgroup of a chain and is
//! joined to the coset of the next larger subgroup containing it. Cosets are
//! stored through canonical keys: the part of a representative that the
//! subgroup cannot change.
//!
//! | family | tree | subgroup at level `i` | key |
//! |---|---|---|---|
//! | `lamp` | 1 | lamps at `j ≤ i` | lamps at `j > i` |
//! | `lamp` | 2 | lamps at `j ≥ i` | lamps at `j < i` |
//! | `lamp2` | 1, 2 | `t` and lamps in columns `≤ i` (`≥ i`) | lamps in columns `> i` (`< i`) |
//! | `lamp2` | 3, 4 | `s` and lamps in rows `≤ i` (`≥ i`) | lamps in rows `> i` (`< i`) |
//! | `houghton` | 1 | `FSym(j ≤ i)` | the element on `j > i` |
//! | `houghton` | 2 | `FSym(j ≥ i)` | the element on `j < i` |
//!
//! Shifts act by conjugation: `t` raises lamplighter levels by one and
//! lowers Houghton levels by one.

mod group;
mod houghton;
mod wreath;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use group::FiniteGroup;
pub use houghton::HoughtonElem;
pub use wreath::{Lamp2Elem, LampElem, Position, WreathElem};

/// Largest number of candidates [`ct_stabiliser_enum`] will list.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("element of family {element} cannot act on a vertex of family {vertex}")]
    FamilyMismatch { element: Family, vertex: Family },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tree {index} does not exist for family {family}")]
    InvalidTree { family: Family, index: u8 },
    #[error("representative {0} does not lie at that level's coset space")]
    InvalidRep(String),
    #[error("no vertices to stabilise")]
    NoVertices,
    #[error("{0} candidates exceed the enumeration limit")]
    TooLarge(u128),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lamp,
    Lamp2,
    Houghton,
}

impl Family {
    pub fn tree_count(self) -> u8 {
        match self {
            Self::Lamp2 => 4,
            _ => 2,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CosetError> {
        match text.trim() {
            "lamp" => Ok(Self::Lamp),
            "lamp2" => Ok(Self::Lamp2),
            "houghton" => Ok(Self::Houghton),
            other => Err(CosetError::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Lamp => "lamp",
            Self::Lamp2 => "lamp2",
            Self::Houghton => "houghton",
        };
        write!(f, "{s}")
    }
}

/// The group a tree belongs to, with its lamp group where there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Lamp(Arc<FiniteGroup>),
    Lamp2(Arc<FiniteGroup>),
    Houghton,
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        match self {
            Self::Lamp(_) => Family::Lamp,
            Self::Lamp2(_) => Family::Lamp2,
            Self::Houghton => Family::Houghton,
        }
    }

    pub fn lamp_group(&self) -> Option<&Arc<FiniteGroup>> {
        match self {
            Self::Lamp(g) | Self::Lamp2(g) => Some(g),
            Self::Houghton => None,
        }
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            Self::Lamp(g) => GroupElem::Lamp(LampElem::identity(g.clone())),
            Self::Lamp2(g) => GroupElem::Lamp2(Lamp2Elem::identity(g.clone())),
            Self::Houghton => GroupElem::Houghton(HoughtonElem::identity()),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<GroupElem, CosetError> {
        Ok(match self {
            Self::Lamp(g) => GroupElem::Lamp(LampElem::parse(text, g.clone())?),
            Self::Lamp2(g) => GroupElem::Lamp2(Lamp2Elem::parse(text, g.clone())?),
            Self::Houghton => GroupElem::Houghton(HoughtonElem::parse(text)?),
        })
    }

    pub fn tree(&self, index: u8) -> Result<TreeId, CosetError> {
        TreeId::new(self.family(), index)
    }

    pub fn trees(&self) -> Vec<TreeId> {
        (1..=self.family().tree_count()).map(|i| TreeId { family: self.family(), index: i }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeId {
    pub family: Family,
    pub index: u8,
}

impl TreeId {
    pub fn new(family: Family, index: u8) -> Result<Self, CosetError> {
        if index == 0 || index > family.tree_count() {
            return Err(CosetError::InvalidTree { family, index });
        }
        Ok(Self { family, index })
    }

    /// Coordinate the level refers to.
    fn axis(self) -> usize {
        usize::from(self.index > 2)
    }

    /// Whether keys live above the level.
    fn upper(self) -> bool {
        self.index % 2 == 1
    }

    fn in_region(self, level: i64, coord: i64) -> bool {
        if self.upper() {
            coord > level
        } else {
            coord < level
        }
    }

    /// Level of the next larger subgroup.
    fn parent_level(self, level: i64) -> i64 {
        if self.upper() {
            level + 1
        } else {
            level - 1
        }
    }
}

impl fmt::Display for TreeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} tree {}", self.family, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetKey {
    Lamp(BTreeMap<i64, u8>),
    Lamp2(BTreeMap<(i64, i64), u8>),
    /// `j ↦ exceptions[j]`, otherwise `j ↦ j − shift`, on the key region.
    Houghton { shift: i64, exceptions: BTreeMap<i64, i64> },
}

impl CosetKey {
    fn empty(family: Family) -> Self {
        match family {
            Family::Lamp => Self::Lamp(BTreeMap::new()),
            Family::Lamp2 => Self::Lamp2(BTreeMap::new()),
            Family::Houghton => Self::Houghton { shift: 0, exceptions: BTreeMap::new() },
        }
    }

    fn family(&self) -> Family {
        match self {
            Self::Lamp(_) => Family::Lamp,
            Self::Lamp2(_) => Family::Lamp2,
            Self::Houghton { .. } => Family::Houghton,
        }
    }
}

impl fmt::Display for CosetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            Self::Lamp(m) => m.iter().map(|(j, l)| format!("{j}:{l}")).collect(),
            Self::Lamp2(m) => m.iter().map(|((i, j), l)| format!("({i},{j}):{l}")).collect(),
            Self::Houghton { shift, exceptions } => {
                write!(f, "shift {shift} ")?;
                exceptions.iter().map(|(j, v)| format!("{j}->{v}")).collect()
            }
        };
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A coset at a level of one tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetVertex {
    pub tree: TreeId,
    pub level: i64,
    pub key: CosetKey,
}

impl CosetVertex {
    /// The coset of the level subgroup itself.
    pub fn base(tree: TreeId, level: i64) -> Self {
        Self { tree, level, key: CosetKey::empty(tree.family) }
    }

    /// The coset `g·G_level`. Lamplighter representatives must not shift
    /// along the tree's axis.
    pub fn from_rep(tree: TreeId, level: i64, g: &GroupElem) -> Result<Self, CosetError> {
        check_family(g, tree)?;
        let key = match g {
            GroupElem::Lamp(e) => {
                if e.shift != 0 {
                    return Err(CosetError::InvalidRep(e.to_string()));
                }
                CosetKey::Lamp(restrict(&e.support, tree, level))
            }
            GroupElem::Lamp2(e) => {
                if e.shift.coord(tree.axis()) != 0 {
                    return Err(CosetError::InvalidRep(e.to_string()));
                }
                CosetKey::Lamp2(restrict(&e.support, tree, level))
            }
            GroupElem::Houghton(e) => {
                let exceptions = e
                    .support()
                    .map(|a| a + e.shift)
                    .filter(|&j| tree.in_region(level, j))
                    .map(|j| (j, e.apply(j)))
                    .filter(|&(j, v)| v != j - e.shift)
                    .collect();
                CosetKey::Houghton { shift: e.shift, exceptions }
            }
        };
        Ok(Self { tree, level, key })
    }

    /// The neighbour one level towards the larger subgroups.
    pub fn parent(&self) -> Self {
        let level = self.tree.parent_level(self.level);
        let key = match &self.key {
            CosetKey::Lamp(m) => CosetKey::Lamp(restrict(m, self.tree, level)),
            CosetKey::Lamp2(m) => CosetKey::Lamp2(restrict(m, self.tree, level)),
            CosetKey::Houghton { shift, exceptions } => CosetKey::Houghton {
                shift: *shift,
                exceptions: exceptions.iter().filter(|(&j, _)| self.tree.in_region(level, j)).map(|(&j, &v)| (j, v)).collect(),
            },
        };
        Self { tree: self.tree, level, key }
    }
}

impl fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.tree.index, self.level, self.key)
    }
}

impl Serialize for CosetVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            family: Family,
            tree: u8,
            level: i64,
            key: String,
        }
        Repr { family: self.tree.family, tree: self.tree.index, level: self.level, key: self.key.to_string() }
            .serialize(s)
    }
}

fn restrict<P: Position>(m: &BTreeMap<P, u8>, tree: TreeId, level: i64) -> BTreeMap<P, u8> {
    m.iter().filter(|(q, _)| tree.in_region(level, q.coord(tree.axis()))).map(|(&q, &l)| (q, l)).collect()
}

/// Two vertices of one tree are adjacent when one is the other's parent.
pub fn ct_adjacent(u: &CosetVertex, v: &CosetVertex) -> bool {
    u.tree == v.tree && (u.parent() == *v || v.parent() == *u)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElem {
    Lamp(LampElem),
    Lamp2(Lamp2Elem),
    Houghton(HoughtonElem),
}

impl GroupElem {
    pub fn family(&self) -> Family {
        match self {
            Self::Lamp(_) => Family::Lamp,
            Self::Lamp2(_) => Family::Lamp2,
            Self::Houghton(_) => Family::Houghton,
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CosetError> {
        match (self, o) {
            (Self::Lamp(a), Self::Lamp(b)) if a.group == b.group => Ok(Self::Lamp(a.mul(b))),
            (Self::Lamp2(a), Self::Lamp2(b)) if a.group == b.group => Ok(Self::Lamp2(a.mul(b))),
            (Self::Houghton(a), Self::Houghton(b)) => Ok(Self::Houghton(a.mul(b))),
            _ => Err(CosetError::FamilyMismatch { element: o.family(), vertex: self.family() }),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Lamp(a) => Self::Lamp(a.inverse()),
            Self::Lamp2(a) => Self::Lamp2(a.inverse()),
            Self::Houghton(a) => Self::Houghton(a.inverse()),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        match self {
            Self::Lamp(a) => Self::Lamp(a.pow(n)),
            Self::Lamp2(a) => Self::Lamp2(a.pow(n)),
            Self::Houghton(a) => Self::Houghton(a.pow(n)),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Self::Lamp(a) => a.is_identity(),
            Self::Lamp2(a) => a.is_identity(),
            Self::Houghton(a) => a.is_identity(),
        }
    }

    /// Whether some positive power is trivial.
    pub fn is_torsion(&self) -> bool {
        match self {
            Self::Lamp(a) => a.shift == 0,
            Self::Lamp2(a) => a.shift == (0, 0),
            Self::Houghton(a) => a.shift == 0,
        }
    }

    /// Level change on the given tree.
    pub fn level_change(&self, tree: TreeId) -> Result<i64, CosetError> {
        check_family(self, tree)?;
        Ok(match self {
            Self::Lamp(a) => a.shift,
            Self::Lamp2(a) => a.shift.coord(tree.axis()),
            Self::Houghton(a) => -a.shift,
        })
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lamp(a) => write!(f, "{a}"),
            Self::Lamp2(a) => write!(f, "{a}"),
            Self::Houghton(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for GroupElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_family(g: &GroupElem, tree: TreeId) -> Result<(), CosetError> {
    if g.family() != tree.family {
        return Err(CosetError::FamilyMismatch { element: g.family(), vertex: tree.family });
    }
    Ok(())
}

fn wreath_act<P: Position>(g: &WreathElem<P>, tree: TreeId, level: i64, key: &BTreeMap<P, u8>) -> (i64, BTreeMap<P, u8>) {
    let level = level + g.shift.coord(tree.axis());
    let rep = WreathElem { group: g.group.clone(), support: key.clone(), shift: P::ZERO };
    (level, restrict(&g.mul(&rep).support, tree, level))
}

fn houghton_key_map(shift: i64, exceptions: &BTreeMap<i64, i64>, j: i64) -> i64 {
    exceptions.get(&j).copied().unwrap_or(j - shift)
}

/// `g` sends `h·G_i` to `g h t^-m·G_{i-m}` where `m` is the shift of `g`.
fn houghton_act(g: &HoughtonElem, tree: TreeId, level: i64, shift: i64, exceptions: &BTreeMap<i64, i64>) -> (i64, CosetKey) {
    let m = g.shift;
    let level = level - m;
    let candidates: BTreeSet<i64> = exceptions.keys().map(|&e| e - m).chain(g.support().map(|a| a + shift)).collect();
    let exceptions = candidates
        .into_iter()
        .filter(|&j| tree.in_region(level, j))
        .map(|j| (j, g.apply(houghton_key_map(shift, exceptions, j + m))))
        .filter(|&(j, v)| v != j - shift)
        .collect();
    (level, CosetKey::Houghton { shift, exceptions })
}

/// The image of a vertex under a group element.
pub fn ct_act(g: &GroupElem, v: &CosetVertex) -> Result<CosetVertex, CosetError> {
    check_family(g, v.tree)?;
    let (level, key) = match (g, &v.key) {
        (GroupElem::Lamp(e), CosetKey::Lamp(k)) => {
            let (l, k) = wreath_act(e, v.tree, v.level, k);
            (l, CosetKey::Lamp(k))
        }
        (GroupElem::Lamp2(e), CosetKey::Lamp2(k)) => {
            let (l, k) = wreath_act(e, v.tree, v.level, k);
            (l, CosetKey::Lamp2(k))
        }
        (GroupElem::Houghton(e), CosetKey::Houghton { shift, exceptions }) => {
            houghton_act(e, v.tree, v.level, *shift, exceptions)
        }
        _ => return Err(CosetError::FamilyMismatch { element: g.family(), vertex: v.key.family() }),
    };
    Ok(CosetVertex { tree: v.tree, level, key })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CtClass {
    Elliptic { fixed: CosetVertex },
    Loxodromic { length: u64 },
}

impl CtClass {
    pub fn is_loxodromic(&self) -> bool {
        matches!(self, Self::Loxodromic { .. })
    }
}

/// Loxodromic exactly when the level changes; otherwise the coset of a
/// level subgroup containing `g` is fixed.
pub fn ct_classify(g: &GroupElem, tree: TreeId) -> Result<CtClass, CosetError> {
    let delta = g.level_change(tree)?;
    if delta != 0 {
        return Ok(CtClass::Loxodromic { length: delta.unsigned_abs() });
    }
    let coords: Vec<i64> = match g {
        GroupElem::Lamp(e) => e.support.keys().copied().collect(),
        GroupElem::Lamp2(e) => e.support.keys().map(|q| q.coord(tree.axis())).collect(),
        GroupElem::Houghton(e) => e.support().collect(),
    };
    let level = if tree.upper() {
        coords.into_iter().max().unwrap_or(0).max(0)
    } else {
        coords.into_iter().min().unwrap_or(0).min(0)
    };
    let fixed = CosetVertex::base(tree, level);
    debug_assert_eq!(ct_act(g, &fixed).as_ref(), Ok(&fixed));
    Ok(CtClass::Elliptic { fixed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valence {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Valence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(n) => s.serialize_u64(*n),
            Self::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// One edge up plus one per coset of the level subgroup in the next one.
pub fn ct_valence(v: &CosetVertex, spec: &FamilySpec) -> Result<Valence, CosetError> {
    if v.tree.family != spec.family() {
        return Err(CosetError::FamilyMismatch { element: spec.family(), vertex: v.tree.family });
    }
    Ok(match spec {
        FamilySpec::Lamp(g) => Valence::Finite(g.order() as u64 + 1),
        FamilySpec::Lamp2(_) | FamilySpec::Houghton => Valence::Infinite,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeInfo {
    pub tree: TreeId,
    pub direction: &'static str,
    pub chain: &'static str,
}

/// The trees of `F ≀ Z²` along `+s`, `−s`, `+t`, `−t`.
pub fn ct_build_four_trees() -> [TreeInfo; 4] {
    let t = |index| TreeId { family: Family::Lamp2, index };
    [
        TreeInfo { tree: t(1), direction: "+s", chain: "<t, x[i,j] : i <= k>" },
        TreeInfo { tree: t(2), direction: "-s", chain: "<t, x[i,j] : i >= k>" },
        TreeInfo { tree: t(3), direction: "+t", chain: "<s, x[i,j] : j <= k>" },
        TreeInfo { tree: t(4), direction: "-t", chain: "<s, x[i,j] : j >= k>" },
    ]
}

fn wreath_stabiliser<P: Position>(
    group: &Arc<FiniteGroup>,
    vertices: &[(TreeId, i64, &BTreeMap<P, u8>)],
    window: &[P],
    shifts: &[P],
) -> Result<Vec<WreathElem<P>>, CosetError> {
    let mut out = Vec::new();
    let in_window: BTreeSet<P> = window.iter().copied().collect();
    for &shift in shifts {
        if vertices.iter().any(|(tree, _, _)| shift.coord(tree.axis()) != 0) {
            continue;
        }
        // f(j) = a(j)·a(j − shift)⁻¹ wherever a vertex's key region covers j
        let required = |tree: TreeId, level: i64, a: &BTreeMap<P, u8>, j: P| -> Option<u8> {
            tree.in_region(level, j.coord(tree.axis())).then(|| {
                let prev = a.get(&j.add(shift.neg())).copied().unwrap_or(0);
                group.mul(a.get(&j).copied().unwrap_or(0), group.inv(prev))
            })
        };
        let outside_ok = vertices.iter().all(|&(tree, level, a)| {
            a.keys()
                .flat_map(|&q| [q, q.add(shift)])
                .filter(|q| !in_window.contains(q))
                .all(|q| required(tree, level, a, q).unwrap_or(0) == 0)
        });
        if !outside_ok {
            continue;
        }
        let mut allowed: Vec<Vec<u8>> = Vec::with_capacity(window.len());
        for &j in window {
            let mut labels: Vec<u8> = (0..group.order() as u8).collect();
            for &(tree, level, a) in vertices {
                if let Some(r) = required(tree, level, a, j) {
                    labels.retain(|&l| l == r);
                }
            }
            allowed.push(labels);
        }
        let count = allowed.iter().fold(1u128, |acc, a| acc.saturating_mul(a.len() as u128));
        if count > ENUMERATION_LIMIT {
            return Err(CosetError::TooLarge(count));
        }
        let mut choice = vec![0usize; window.len()];
        if count == 0 {
            continue;
        }
        loop {
            let support = window
                .iter()
                .zip(&choice)
                .enumerate()
                .map(|(i, (&q, &c))| (q, allowed[i][c]))
                .filter(|&(_, l)| l != 0)
                .collect();
            out.push(WreathElem { group: group.clone(), support, shift });
            // odometer over the allowed labels
            let mut i = window.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < allowed[i].len() {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(out)
}

fn houghton_image_contains(tree: TreeId, level: i64, shift: i64, exceptions: &BTreeMap<i64, i64>, w: i64) -> bool {
    exceptions.values().any(|&v| v == w) || {
        let j = w + shift;
        tree.in_region(level, j) && !exceptions.contains_key(&j)
    }
}

fn permutations(points: &[i64]) -> Vec<BTreeMap<i64, i64>> {
    let mut images = points.to_vec();
    let mut out = Vec::new();
    loop {
        out.push(points.iter().copied().zip(images.iter().copied()).filter(|(a, b)| a != b).collect());
        // next permutation in lexicographic order
        let Some(i) = (1..images.len()).rev().find(|&i| images[i - 1] < images[i]) else {
            break;
        };
        let j = (i..images.len()).rev().find(|&j| images[j] > images[i - 1]).unwrap();
        images.swap(i - 1, j);
        images[i..].reverse();
    }
    out
}

/// Every element with support in `window` (a range, squared for `lamp2`)
/// and shift coordinates bounded by `shift_bound` that fixes all vertices.
/// Sorted by shift, then support.
pub fn ct_stabiliser_enum(
    spec: &FamilySpec,
    vertices: &[CosetVertex],
    window: (i64, i64),
    shift_bound: i64,
) -> Result<Vec<GroupElem>, CosetError> {
    if vertices.is_empty() {
        return Err(CosetError::NoVertices);
    }
    for v in vertices {
        if v.tree.family != spec.family() || v.key.family() != spec.family() {
            return Err(CosetError::FamilyMismatch { element: spec.family(), vertex: v.tree.family });
        }
    }
    let (lo, hi) = window;
    let range: Vec<i64> = (-shift_bound..=shift_bound).collect();
    let mut out: Vec<GroupElem> = match spec {
        FamilySpec::Lamp(g) => {
            let vs: Vec<_> = vertices
                .iter()
                .map(|v| match &v.key {
                    CosetKey::Lamp(k) => (v.tree, v.level, k),
                    _ => unreachable!(),
                })
                .collect();
            let window: Vec<i64> = (lo..=hi).collect();
            let mut els = wreath_stabiliser(g, &vs, &window, &range)?;
            els.sort_by(|a, b| (a.shift, &a.support).cmp(&(b.shift, &b.support)));
            els.into_iter().map(GroupElem::Lamp).collect()
        }
        FamilySpec::Lamp2(g) => {
            let vs: Vec<_> = vertices
                .iter()
                .map(|v| match &v.key {
                    CosetKey::Lamp2(k) => (v.tree, v.level, k),
                    _ => unreachable!(),
                })
                .collect();
            let window: Vec<(i64, i64)> = (lo..=hi).flat_map(|i| (lo..=hi).map(move |j| (i, j))).collect();
            let shifts: Vec<(i64, i64)> = range.iter().flat_map(|&m| range.iter().map(move |&n| (m, n))).collect();
            let mut els = wreath_stabiliser(g, &vs, &window, &shifts)?;
            els.sort_by(|a, b| (a.shift, &a.support).cmp(&(b.shift, &b.support)));
            els.into_iter().map(GroupElem::Lamp2).collect()
        }
        FamilySpec::Houghton => {
            // every tree moves levels by the shift, so only shift 0 survives
            let free: Vec<i64> = (lo..=hi)
                .filter(|&w| {
                    vertices.iter().all(|v| match &v.key {
                        CosetKey::Houghton { shift, exceptions } => {
                            !houghton_image_contains(v.tree, v.level, *shift, exceptions, w)
                        }
                        _ => unreachable!(),
                    })
                })
                .collect();
            let count: u128 = (1..=free.len() as u128).product();
            if count > ENUMERATION_LIMIT {
                return Err(CosetError::TooLarge(count));
            }
            permutations(&free).into_iter().map(|p| GroupElem::Houghton(HoughtonElem::from_perm(p))).collect()
        }
    };
    out.retain(|g| vertices.iter().all(|v| ct_act(g, v).as_ref() == Ok(v)));
    Ok(out)
}
