use rand::Rng;

use super::Draw;
use crate::instances::{BipartiteGraph, ColouringState, Side};
use crate::rng::RandomSource;

/// Slot holding the side coin; vertex `v` reads slot `v + 1`.
pub const MULTICOLOUR_SIDE_SLOT: u64 = 0;

/// Colours absent from the neighbourhood of `v`, ascending.
pub fn available_colours(g: &BipartiteGraph, s: &ColouringState, v: usize) -> Vec<u32> {
    s.available(g, v)
}

/// Index into a list of `len` options from the first draw of a vertex slot.
pub fn uniform_pick(r: &RandomSource, step: u64, v: usize, len: usize) -> usize {
    r.at(step, v as u64 + 1).gen_range(0..len)
}

/// The side Multicolour recolours first at `step`.
pub fn side_for_step(r: &RandomSource, step: u64) -> Side {
    if r.at(step, MULTICOLOUR_SIDE_SLOT).gen_bool(0.5) {
        Side::First
    } else {
        Side::Second
    }
}

/// Heat-bath recolouring of every vertex of `side`, ascending ids.
pub fn recolour_side(
    g: &BipartiteGraph,
    s: &mut ColouringState,
    side: Side,
    r: &RandomSource,
    step: u64,
    record: &mut Vec<(usize, u32)>,
) {
    for v in g.vertices(side) {
        let avail = s.available(g, v);
        let c = avail[uniform_pick(r, step, v, avail.len())];
        s.set(v, c);
        record.push((v, c));
    }
}

fn sweep(g: &BipartiteGraph, s: &mut ColouringState, first: Side, r: &RandomSource, step: u64) -> Draw {
    assert!(s.palette() as usize > g.max_degree(), "palette must exceed the maximum degree");
    let mut colours = Vec::with_capacity(g.vertex_count());
    recolour_side(g, s, first, r, step, &mut colours);
    recolour_side(g, s, first.other(), r, step, &mut colours);
    Draw::Sweep { first, colours }
}

/// One Multicolour step in place.
pub fn multicolour_update(g: &BipartiteGraph, s: &mut ColouringState, r: &RandomSource, step: u64) -> Draw {
    let first = side_for_step(r, step);
    sweep(g, s, first, r, step)
}

pub fn multicolour_step(g: &BipartiteGraph, s: &ColouringState, r: &RandomSource, step: u64) -> (ColouringState, Draw) {
    let mut next = s.clone();
    let d = multicolour_update(g, &mut next, r, step);
    (next, d)
}

/// One Scan step: recolour `first` then the other side.
pub fn scan_step(
    g: &BipartiteGraph,
    s: &ColouringState,
    r: &RandomSource,
    step: u64,
    first: Side,
) -> (ColouringState, Draw) {
    let mut next = s.clone();
    let d = sweep(g, &mut next, first, r, step);
    (next, d)
}
