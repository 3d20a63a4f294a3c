//! Coupled transitions. The Glauber chains use the identity coupling; the
//! bipartite chains couple each vertex update maximally.

use rand::Rng;

use super::CouplingError;
use crate::chains::{apply_indset, apply_tricol, indset_draw, side_for_step, tricol_draw};
use crate::instances::{BipartiteGraph, ColouringState, Hypergraph, OccupancyState, Side};
use crate::rng::RandomSource;

/// Both copies make the same site move.
pub fn coupled_indset_step(
    h: &Hypergraph,
    x: &OccupancyState,
    y: &OccupancyState,
    r: &RandomSource,
    step: u64,
) -> (OccupancyState, OccupancyState) {
    let (v, insert) = indset_draw(h.vertex_count(), r, step);
    let (mut a, mut b) = (x.clone(), y.clone());
    apply_indset(h, &mut a, v, insert);
    apply_indset(h, &mut b, v, insert);
    (a, b)
}

/// Both copies propose the same vertex and colour.
pub fn coupled_tricol_step(
    h: &Hypergraph,
    x: &ColouringState,
    y: &ColouringState,
    r: &RandomSource,
    step: u64,
) -> (ColouringState, ColouringState) {
    let (v, c) = tricol_draw(h.vertex_count(), x.palette(), r, step);
    let (mut a, mut b) = (x.clone(), y.clone());
    apply_tricol(h, &mut a, v, c);
    apply_tricol(h, &mut b, v, c);
    (a, b)
}

/// Maximal coupling of uniform draws from `ax` and `ay` (both ascending,
/// non-empty) using the stream of vertex `v`.
///
/// The larger list leads (ties go to `ax`) and its pick is the same draw the
/// single chain would make. A pick in the common part is copied; otherwise
/// the other copy draws from its own list with common colours weighted
/// `a - b` and its private colours weighted `a`, which leaves it uniform.
pub fn coupled_choice(ax: &[u32], ay: &[u32], r: &RandomSource, step: u64, v: usize) -> (u32, u32) {
    let swap = ay.len() > ax.len();
    let (lead, other) = if swap { (ay, ax) } else { (ax, ay) };
    let (a, b) = (lead.len() as u64, other.len() as u64);
    let mut g = r.at(step, v as u64 + 1);
    let first = lead[g.gen_range(0..a as usize)];
    let common = |c: &u32| lead.binary_search(c).is_ok();
    let second = if other.binary_search(&first).is_ok() {
        first
    } else {
        let shared = other.iter().filter(|c| common(c)).count() as u64;
        let mut u = g.gen_range(0..b * (a - shared));
        let mut pick = *other.last().expect("empty colour list");
        for c in other {
            let wgt = if common(c) { a - b } else { a };
            if u < wgt {
                pick = *c;
                break;
            }
            u -= wgt;
        }
        pick
    };
    if swap {
        (second, first)
    } else {
        (first, second)
    }
}

fn coupled_side(
    g: &BipartiteGraph,
    x: &mut ColouringState,
    y: &mut ColouringState,
    side: Side,
    r: &RandomSource,
    step: u64,
) {
    for v in g.vertices(side) {
        let ax = x.available(g, v);
        let ay = y.available(g, v);
        let (cx, cy) = coupled_choice(&ax, &ay, r, step, v);
        x.set(v, cx);
        y.set(v, cy);
    }
}

/// A coupled sweep recolouring `first` then the other side.
pub fn coupled_scan_step(
    g: &BipartiteGraph,
    x: &ColouringState,
    y: &ColouringState,
    r: &RandomSource,
    step: u64,
    first: Side,
) -> (ColouringState, ColouringState) {
    let (mut a, mut b) = (x.clone(), y.clone());
    coupled_side(g, &mut a, &mut b, first, r, step);
    coupled_side(g, &mut a, &mut b, first.other(), r, step);
    (a, b)
}

/// A coupled Multicolour step for any pair of colourings.
pub fn coupled_multicolour_general(
    g: &BipartiteGraph,
    x: &ColouringState,
    y: &ColouringState,
    r: &RandomSource,
    step: u64,
) -> (ColouringState, ColouringState) {
    coupled_scan_step(g, x, y, r, step, side_for_step(r, step))
}

/// A coupled Multicolour step for colourings differing in at most one vertex.
pub fn coupled_multicolour_step(
    g: &BipartiteGraph,
    x: &ColouringState,
    y: &ColouringState,
    r: &RandomSource,
    step: u64,
) -> Result<(ColouringState, ColouringState), CouplingError> {
    match x.hamming(y) {
        0 | 1 => Ok(coupled_multicolour_general(g, x, y, r, step)),
        k => Err(CouplingError::NotAdjacent(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::multicolour_step;

    #[test]
    fn marginals_are_uniform() {
        let ax = [0, 1, 2, 5];
        let ay = [1, 3];
        let mut cx = [0u32; 6];
        let mut cy = [0u32; 6];
        let r = RandomSource::new(11);
        let trials = 40_000;
        for t in 0..trials {
            let (a, b) = coupled_choice(&ax, &ay, &r, t, 0);
            cx[a as usize] += 1;
            cy[b as usize] += 1;
        }
        for c in ax {
            assert!((cx[c as usize] as f64 / trials as f64 - 0.25).abs() < 0.01);
        }
        for c in ay {
            assert!((cy[c as usize] as f64 / trials as f64 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn identical_lists_always_agree() {
        let r = RandomSource::new(2);
        for t in 0..200 {
            let (a, b) = coupled_choice(&[0, 2, 4], &[0, 2, 4], &r, t, 3);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn equal_states_stay_equal_and_follow_chain() {
        let g = crate::instances::gen_bipartite(5, 5, 3, 4).unwrap();
        let s = ColouringState::new(vec![0; 10], 5).unwrap();
        let r = RandomSource::new(6);
        for t in 0..30 {
            let (a, b) = coupled_multicolour_step(&g, &s, &s, &r, t).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, multicolour_step(&g, &s, &r, t).0);
        }
    }

    #[test]
    fn lead_copy_follows_single_chain() {
        let g = crate::instances::gen_bipartite(5, 5, 3, 4).unwrap();
        let x = ColouringState::new(vec![0; 10], 6).unwrap();
        let mut y = x.clone();
        y.set(0, 3);
        let r = RandomSource::new(8);
        let (a, _) = coupled_multicolour_step(&g, &x, &y, &r, 0).unwrap();
        assert!(a.is_proper_graph(&g));
        let far = ColouringState::new(vec![1; 10], 6).unwrap();
        assert!(coupled_multicolour_step(&g, &x, &far, &r, 0).is_err());
    }
}
