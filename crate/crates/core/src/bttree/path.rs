use serde::Serialize;

use crate::funcfield::RatFunc;
use crate::sl2::Mat2;
use crate::valuation::Place;

use super::{bt_distance, bt_min_displacement_vertex, neighbor_steps, apply_steps, BtError, LatticeVertex};

/// Consecutive vertices at distance 1.
#[derive(Debug, Clone)]
pub struct TreePath {
    pub vertices: Vec<LatticeVertex>,
}

impl TreePath {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pairwise distances equal index gaps.
    pub fn is_geodesic(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, u)| {
            self.vertices[i + 1..]
                .iter()
                .enumerate()
                .all(|(j, v)| bt_distance(u, v) == Ok(j as u64 + 1))
        })
    }

    pub fn canonical_strings(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.canonical().to_string()).collect()
    }
}

impl Serialize for TreePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.canonical_strings().serialize(s)
    }
}

/// The unique geodesic from `u` to `v`.
pub fn bt_geodesic(u: &LatticeVertex, v: &LatticeVertex) -> Result<TreePath, BtError> {
    let steps = neighbor_steps(&u.place, u.p())?;
    let mut d = bt_distance(u, v)?;
    let mut vertices = vec![u.clone()];
    while d > 0 {
        let next = apply_steps(vertices.last().unwrap(), &steps)
            .into_iter()
            .find(|n| bt_distance(n, v) == Ok(d - 1))
            .expect("some neighbour is closer");
        vertices.push(next);
        d -= 1;
    }
    Ok(TreePath { vertices })
}

/// A fundamental segment `v, …, g·v` of the axis of a loxodromic `g`, with
/// `v` the first minimiser found in the ball of the given radius.
pub fn bt_axis_segment(g: &Mat2<RatFunc>, place: &Place, radius: u32) -> Result<TreePath, BtError> {
    let (d, v) = bt_min_displacement_vertex(g, place, radius)?;
    if d == 0 {
        return Ok(TreePath { vertices: vec![v] });
    }
    bt_geodesic(&v, &v.act(g))
}
