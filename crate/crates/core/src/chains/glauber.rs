use rand::Rng;

use super::Draw;
use crate::instances::{ColouringState, Hypergraph, OccupancyState};
use crate::rng::RandomSource;

/// Vertex and insert/remove coin for step `step`.
pub fn indset_draw(n: usize, r: &RandomSource, step: u64) -> (usize, bool) {
    let mut g = r.at(step, 0);
    let v = g.gen_range(0..n);
    (v, g.gen_bool(0.5))
}

/// Vertex and proposed colour for step `step`.
pub fn tricol_draw(n: usize, q: u32, r: &RandomSource, step: u64) -> (usize, u32) {
    let mut g = r.at(step, 0);
    let v = g.gen_range(0..n);
    (v, g.gen_range(0..q))
}

/// Applies a Glauber move in place: remove `v` on a remove coin, insert it on
/// an insert coin when that keeps the set independent, otherwise hold.
pub fn apply_indset(h: &Hypergraph, s: &mut OccupancyState, v: usize, insert: bool) {
    if !insert {
        s.set(v, false);
    } else if !s.contains(v) && s.can_insert(h, v) {
        s.set(v, true);
    }
}

/// Recolours `v` to `c` in place when the result is proper.
pub fn apply_tricol(h: &Hypergraph, s: &mut ColouringState, v: usize, c: u32) {
    if s.colour(v) != c && s.hypergraph_allows(h, v, c) {
        s.set(v, c);
    }
}

pub fn glauber_indset_step(h: &Hypergraph, s: &OccupancyState, r: &RandomSource, step: u64) -> (OccupancyState, Draw) {
    let (vertex, insert) = indset_draw(h.vertex_count(), r, step);
    let mut next = s.clone();
    apply_indset(h, &mut next, vertex, insert);
    (next, Draw::Site { vertex, insert })
}

pub fn glauber_tricol_step(h: &Hypergraph, s: &ColouringState, r: &RandomSource, step: u64) -> (ColouringState, Draw) {
    let (vertex, colour) = tricol_draw(h.vertex_count(), s.palette(), r, step);
    let mut next = s.clone();
    apply_tricol(h, &mut next, vertex, colour);
    (next, Draw::Recolour { vertex, colour })
}
