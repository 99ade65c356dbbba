//! The Bruhat–Tits tree of `SL(2, F_p(x))` at a place.
//!
//! A vertex is the homothety class of a lattice `M·O²`, where the columns
//! of `M` span the lattice and `O` is the valuation ring. Distances come
//! from elementary divisors, so no canonical basis is needed except for
//! display and hashing.

mod path;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::funcfield::{Field, RatFunc};
use crate::sl2::{classify, IsometryKind, Mat2};
use crate::valuation::{laurent_expand, LaurentSeries, Place, Valuation, ValuationError};

pub use path::{bt_axis_segment, bt_geodesic, TreePath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BtError {
    #[error("vertices live at different places ({0} and {1})")]
    PlaceMismatch(String, String),
    #[error("basis matrix is singular")]
    Singular,
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error(transparent)]
    Place(#[from] ValuationError),
    #[error("element is loxodromic with translation length {0}")]
    NotElliptic(u64),
    #[error("descent stopped at displacement {0} without an improving neighbour")]
    DescentStuck(u64),
}

/// The class of the lattice spanned by the columns of `basis`.
#[derive(Debug, Clone)]
pub struct LatticeVertex {
    pub basis: Mat2<RatFunc>,
    pub place: Place,
}

impl LatticeVertex {
    pub fn new(basis: Mat2<RatFunc>, place: Place) -> Result<Self, BtError> {
        if basis.det().is_zero() {
            return Err(BtError::Singular);
        }
        Ok(Self { basis, place })
    }

    /// The standard lattice `O²`.
    pub fn base(place: Place, p: u32) -> Self {
        Self { basis: Mat2::identity_like(&RatFunc::one(p)), place }
    }

    pub fn p(&self) -> u32 {
        self.basis.modulus()
    }

    /// `g·v`.
    pub fn act(&self, g: &Mat2<RatFunc>) -> Self {
        Self { basis: g.mul(&self.basis), place: self.place.clone() }
    }

    /// The Hermite form `[[π^a, β], [0, 1]]` with `β` known modulo `π^a`.
    pub fn canonical(&self) -> CanonicalVertex {
        let m = &self.basis;
        let place = &self.place;
        let (top, bottom) = if place.val(&m.m21) < place.val(&m.m22) {
            (&m.m11, &m.m21)
        } else {
            (&m.m12, &m.m22)
        };
        let b = place.val(bottom).finite().expect("bottom row is nonzero");
        let exponent = place.val(&m.det()).finite().expect("basis is invertible") - 2 * b;
        let beta = top.div(bottom).expect("bottom entry is nonzero");
        let beta = laurent_expand(&beta, place, exponent).expect("canonical form needs a degree-1 place");
        CanonicalVertex { exponent, beta }
    }
}

impl PartialEq for LatticeVertex {
    fn eq(&self, other: &Self) -> bool {
        bt_distance(self, other) == Ok(0)
    }
}

/// Display and hashing key of a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalVertex {
    pub exponent: i64,
    pub beta: LaurentSeries,
}

impl CanonicalVertex {
    pub fn key(&self) -> (i64, Vec<(i64, u32)>) {
        (self.exponent, self.beta.terms.iter().map(|(&k, &c)| (k, c)).collect())
    }

    fn beta_string(&self) -> String {
        let s = self.beta.to_string();
        match s.rsplit_once(" + O(") {
            Some((head, _)) => head.to_string(),
            None => "0".to_string(),
        }
    }
}

impl fmt::Display for CanonicalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[π^{}, {}], [0, 1]]", self.exponent, self.beta_string())
    }
}

impl Serialize for CanonicalVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            exponent: i64,
            beta: String,
            terms: &'a BTreeMap<i64, u32>,
            display: String,
        }
        Repr { exponent: self.exponent, beta: self.beta_string(), terms: &self.beta.terms, display: self.to_string() }
            .serialize(s)
    }
}

fn entry_min(m: &Mat2<RatFunc>, place: &Place) -> i64 {
    m.entries().iter().map(|e| place.val(e)).min().unwrap().finite().expect("matrix is nonzero")
}

/// Number of edges between two lattice classes.
pub fn bt_distance(u: &LatticeVertex, v: &LatticeVertex) -> Result<u64, BtError> {
    if u.place != v.place {
        return Err(BtError::PlaceMismatch(u.place.to_string(), v.place.to_string()));
    }
    let q = v.basis.inv().map_err(|_| BtError::Singular)?.mul(&u.basis);
    let e1 = entry_min(&q, &u.place);
    let e2 = u.place.val(&q.det()).finite().ok_or(BtError::Singular)? - e1;
    Ok((e2 - e1) as u64)
}

/// Right factors `[[π, u], [0, 1]]` for `u` in `F_p`, then `[[1, 0], [0, π]]`.
pub fn neighbor_steps(place: &Place, p: u32) -> Result<Vec<Mat2<RatFunc>>, BtError> {
    if place.degree() != 1 {
        return Err(ValuationError::UnsupportedPlaceDegree(place.degree()).into());
    }
    let pi = place.uniformizer(p);
    let one = RatFunc::one(p);
    let zero = RatFunc::zero(p);
    let mut steps: Vec<Mat2<RatFunc>> = (0..p)
        .map(|u| Mat2::new(pi.clone(), RatFunc::constant(p, u as i64), zero.clone(), one.clone()))
        .collect();
    steps.push(Mat2::new(one.clone(), zero.clone(), zero, pi));
    Ok(steps)
}

/// The `p + 1` vertices adjacent to `v`.
pub fn bt_neighbors(v: &LatticeVertex) -> Result<Vec<LatticeVertex>, BtError> {
    let steps = neighbor_steps(&v.place, v.p())?;
    Ok(apply_steps(v, &steps))
}

fn apply_steps(v: &LatticeVertex, steps: &[Mat2<RatFunc>]) -> Vec<LatticeVertex> {
    steps.iter().map(|s| LatticeVertex { basis: v.basis.mul(s), place: v.place.clone() }).collect()
}

fn require_sl2(g: &Mat2<RatFunc>) -> Result<(), BtError> {
    if g.is_sl2() {
        Ok(())
    } else {
        Err(BtError::NotUnimodular)
    }
}

/// `d(v, g·v)`.
pub fn bt_displacement(g: &Mat2<RatFunc>, v: &LatticeVertex) -> Result<u64, BtError> {
    require_sl2(g)?;
    Ok(displacement(g, v))
}

fn displacement(g: &Mat2<RatFunc>, v: &LatticeVertex) -> u64 {
    // d(v, gv) only depends on B⁻¹gB
    let b = &v.basis;
    let q = b.inv().expect("vertex basis is invertible").mul(g).mul(b);
    let e1 = entry_min(&q, &v.place);
    (-2 * e1).max(0) as u64
}

/// A vertex fixed by an elliptic `g`, reached from the base by moving to the
/// first neighbour that lowers the displacement.
pub fn bt_find_fixed_vertex(g: &Mat2<RatFunc>, place: &Place) -> Result<LatticeVertex, BtError> {
    require_sl2(g)?;
    let c = classify(g, place).map_err(|_| BtError::NotUnimodular)?;
    if c.kind == IsometryKind::Loxodromic {
        return Err(BtError::NotElliptic(c.length));
    }
    let steps = neighbor_steps(place, g.modulus())?;
    let mut v = LatticeVertex::base(place.clone(), g.modulus());
    let mut d = displacement(g, &v);
    while d > 0 {
        let next = apply_steps(&v, &steps)
            .into_iter()
            .map(|n| (displacement(g, &n), n))
            .find(|(dn, _)| *dn < d);
        match next {
            Some((dn, n)) => (d, v) = (dn, n),
            None => return Err(BtError::DescentStuck(d)),
        }
    }
    Ok(v)
}

/// Every vertex within `radius` of the base, by distance from the base.
pub fn bt_ball(place: &Place, p: u32, radius: u32) -> Result<Vec<Vec<LatticeVertex>>, BtError> {
    let steps = neighbor_steps(place, p)?;
    let base = LatticeVertex::base(place.clone(), p);
    let mut shells = vec![vec![base.clone()]];
    for r in 1..=radius as u64 {
        let prev = shells.last().unwrap();
        let shell = prev
            .iter()
            .flat_map(|v| apply_steps(v, &steps))
            .filter(|n| bt_distance(n, &base) == Ok(r))
            .collect();
        shells.push(shell);
    }
    Ok(shells)
}

/// Smallest displacement over the ball of the given radius around the base.
pub fn bt_min_displacement(g: &Mat2<RatFunc>, place: &Place, radius: u32) -> Result<u64, BtError> {
    Ok(bt_min_displacement_vertex(g, place, radius)?.0)
}

/// Like [`bt_min_displacement`], also returning a vertex attaining it.
pub fn bt_min_displacement_vertex(
    g: &Mat2<RatFunc>,
    place: &Place,
    radius: u32,
) -> Result<(u64, LatticeVertex), BtError> {
    require_sl2(g)?;
    let ball = bt_ball(place, g.modulus(), radius)?;
    let best = ball
        .into_iter()
        .flatten()
        .map(|v| (displacement(g, &v), v))
        .min_by_key(|(d, _)| *d)
        .expect("ball contains the base");
    Ok(best)
}

/// Translation length read off the trace, `-2·v(tr g)` or 0.
pub fn trace_length(g: &Mat2<RatFunc>, place: &Place) -> u64 {
    match place.val(&g.trace()) {
        Valuation::Finite(v) if v < 0 => (-2 * v) as u64,
        _ => 0,
    }
}
