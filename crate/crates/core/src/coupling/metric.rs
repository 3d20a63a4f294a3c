//! Path metrics. Adjacent pairs get the weighted edge-profile distance; other
//! pairs are joined by a canonical path of single-vertex moves and the
//! adjacent distances along it are summed.
//!
//! Independent sets: the path goes from `X` down to `X ∩ Y` and back up to
//! `Y`, each half built by inserting vertices in ascending id order from the
//! intersection, so every intermediate set is independent and the value is
//! symmetric.
//!
//! Colourings: from one end, repeatedly recolour the lowest-id differing
//! vertex whose target colour keeps the colouring valid. The distance is the
//! smaller of the two directions.
//!
//! The canonical paths are not always shortest, so the canonical values are
//! upper bounds on the true path metric and need not satisfy the triangle
//! inequality. The `*_path_metric` functions compute the shortest-path
//! distance exactly by search over the state graph, for small instances.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;

use num_traits::Zero;

use super::{change_vertex, CouplingError};
use crate::analysis::{IndSetWeights, TriColWeights};
use crate::instances::{BipartiteGraph, ColouringState, Hypergraph, OccupancyState};
use crate::rational::int;
use crate::Rational;

/// Counts of edges through the change vertex, by class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum EdgeProfile {
    /// `counts[i]` edges with `i` occupied vertices (edges longer than the
    /// weight vector are classed by their unoccupied count).
    Indset(Vec<usize>),
    /// `counts[k]` edges in class `E_{k+1}`.
    Tricol([usize; 4]),
}

impl EdgeProfile {
    pub fn total(&self) -> usize {
        match self {
            EdgeProfile::Indset(c) => c.iter().sum(),
            EdgeProfile::Tricol(c) => c.iter().sum(),
        }
    }
}

/// Class index of edge `e` for the pair `(σ, σ ∪ {w})` with edge size
/// parameter `m`: `max(0, m - 1 - u)` with `u` the unoccupied vertices of `e`
/// other than `w`.
fn indset_class(h: &Hypergraph, sigma: &OccupancyState, w: usize, e: usize, m: usize) -> Result<usize, CouplingError> {
    let u = h.edge(e).iter().filter(|&&v| v != w && !sigma.contains(v)).count();
    if u == 0 {
        return Err(CouplingError::InvalidState(format!("adding vertex {} fills edge {}", w + 1, e + 1)));
    }
    Ok((m - 1).saturating_sub(u))
}

/// Profile of `(σ, σ ∪ {w})` for edge size parameter `m`.
pub fn edge_profile(h: &Hypergraph, sigma: &OccupancyState, w: usize, m: usize) -> Result<EdgeProfile, CouplingError> {
    if sigma.contains(w) {
        return Err(CouplingError::InvalidState(format!("vertex {} already occupied", w + 1)));
    }
    let mut counts = vec![0usize; m.saturating_sub(1).max(1)];
    for &e in h.incident(w) {
        counts[indset_class(h, sigma, w, e, m)?] += 1;
    }
    Ok(EdgeProfile::Indset(counts))
}

/// `Σ c_i |E_i|` for `(σ, σ ∪ {w})`.
pub fn indset_adjacent(
    h: &Hypergraph,
    sigma: &OccupancyState,
    w: usize,
    weights: &IndSetWeights,
) -> Result<Rational, CouplingError> {
    let mut d = Rational::zero();
    for &e in h.incident(w) {
        d += &weights.c[indset_class(h, sigma, w, e, weights.m)?];
    }
    Ok(d)
}

/// Canonical-path distance between two independent sets.
pub fn indset_metric(
    h: &Hypergraph,
    x: &OccupancyState,
    y: &OccupancyState,
    weights: &IndSetWeights,
) -> Result<Rational, CouplingError> {
    for s in [x, y] {
        if !s.is_independent(h) {
            return Err(CouplingError::InvalidState("set is not independent".into()));
        }
    }
    let base = OccupancyState::from_indicator(x.indicator().iter().zip(y.indicator()).map(|(&a, &b)| a && b).collect());
    let mut total = Rational::zero();
    for target in [x, y] {
        let mut cur = base.clone();
        for v in target.differences(&base).collect::<Vec<_>>() {
            total += indset_adjacent(h, &cur, v, weights)?;
            cur.set(v, true);
        }
    }
    Ok(total)
}

/// Class (1..=4) of an edge through `w` with the two other colours `a`, `b`.
fn tricol_class(x: u32, y: u32, a: u32, b: u32) -> Option<usize> {
    let hit = |c: u32| c == x || c == y;
    if a == b {
        if hit(a) {
            None
        } else {
            Some(3)
        }
    } else if (a == x && b == y) || (a == y && b == x) {
        Some(1)
    } else if hit(a) || hit(b) {
        Some(2)
    } else {
        Some(4)
    }
}

fn classify_at(h: &Hypergraph, x: &ColouringState, w: usize, yw: u32) -> Result<[usize; 4], CouplingError> {
    let xw = x.colour(w);
    let mut counts = [0usize; 4];
    for &e in h.incident(w) {
        let others: Vec<u32> = h.edge(e).iter().filter(|&&v| v != w).map(|&v| x.colour(v)).collect();
        if others.len() != 2 {
            return Err(CouplingError::InvalidState(format!("edge {} is not of size 3", e + 1)));
        }
        let k = tricol_class(xw, yw, others[0], others[1])
            .ok_or_else(|| CouplingError::InvalidState(format!("edge {} is monochromatic", e + 1)))?;
        counts[k - 1] += 1;
    }
    Ok(counts)
}

/// Classifies the edges through the single vertex where `x` and `y` differ.
pub fn tricol_classify(h: &Hypergraph, x: &ColouringState, y: &ColouringState) -> Result<EdgeProfile, CouplingError> {
    let w = change_vertex(x.colours(), y.colours())?;
    Ok(EdgeProfile::Tricol(classify_at(h, x, w, y.colour(w))?))
}

/// `Σ c_k |E_k|` for colourings that differ only at `w`, where `w` would be
/// recoloured from `x.colour(w)` to `yw`.
pub fn tricol_adjacent(
    h: &Hypergraph,
    x: &ColouringState,
    w: usize,
    yw: u32,
    weights: &TriColWeights,
) -> Result<Rational, CouplingError> {
    let counts = classify_at(h, x, w, yw)?;
    let mut d = Rational::zero();
    for (k, &c) in counts.iter().enumerate() {
        d += weights.class_weight(k + 1) * int(c as i64);
    }
    Ok(d)
}

fn tricol_path(
    h: &Hypergraph,
    from: &ColouringState,
    to: &ColouringState,
    weights: &TriColWeights,
) -> Result<Rational, CouplingError> {
    let mut cur = from.clone();
    let mut diff: Vec<usize> = from.differences(to).collect();
    let mut total = Rational::zero();
    while !diff.is_empty() {
        let pos =
            diff.iter().position(|&v| cur.hypergraph_allows(h, v, to.colour(v))).ok_or(CouplingError::PathStuck)?;
        let v = diff.remove(pos);
        total += tricol_adjacent(h, &cur, v, to.colour(v), weights)?;
        cur.set(v, to.colour(v));
    }
    Ok(total)
}

/// Canonical-path distance between two proper colourings of a 3-uniform
/// hypergraph.
pub fn tricol_metric(
    h: &Hypergraph,
    x: &ColouringState,
    y: &ColouringState,
    weights: &TriColWeights,
) -> Result<Rational, CouplingError> {
    for s in [x, y] {
        if !s.is_proper_hypergraph(h) {
            return Err(CouplingError::InvalidState("colouring is not proper".into()));
        }
    }
    match (tricol_path(h, x, y, weights), tricol_path(h, y, x, weights)) {
        (Ok(a), Ok(b)) => Ok(if a <= b { a } else { b }),
        (Ok(a), Err(_)) | (Err(_), Ok(a)) => Ok(a),
        (Err(e), Err(_)) => Err(e),
    }
}

fn distinct_colours(g: &BipartiteGraph, s: &ColouringState, w: usize, seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|b| *b = false);
    let mut count = 0;
    for &z in g.neighbours(w) {
        let c = s.colour(z) as usize;
        if !seen[c] {
            seen[c] = true;
            count += 1;
        }
    }
    count
}

/// The denominators `q - c_{X,Y}(w)` for each neighbour `w` of `v`, where
/// `x` and `y` agree except possibly at `v` and `y` has colour `yv` there.
pub fn bipartite_adjacent_terms(g: &BipartiteGraph, x: &ColouringState, v: usize, yv: u32) -> Vec<u64> {
    let q = x.palette() as usize;
    let mut seen = vec![false; q];
    let mut y = x.clone();
    y.set(v, yv);
    g.neighbours(v)
        .iter()
        .map(|&w| {
            let cx = distinct_colours(g, x, w, &mut seen);
            let cy = distinct_colours(g, &y, w, &mut seen);
            (q - cx.min(cy)) as u64
        })
        .collect()
}

fn bipartite_path(g: &BipartiteGraph, from: &ColouringState, to: &ColouringState, mut add: impl FnMut(&[u64])) {
    let mut cur = from.clone();
    for v in from.differences(to).collect::<Vec<_>>() {
        add(&bipartite_adjacent_terms(g, &cur, v, to.colour(v)));
        cur.set(v, to.colour(v));
    }
}

/// Canonical-path distance for arbitrary colourings of a bipartite graph,
/// in floating point.
pub fn bipartite_metric(g: &BipartiteGraph, x: &ColouringState, y: &ColouringState) -> f64 {
    let mut best = f64::INFINITY;
    for (a, b) in [(x, y), (y, x)] {
        let mut total = 0.0;
        bipartite_path(g, a, b, |terms| total += terms.iter().map(|&t| 1.0 / t as f64).sum::<f64>());
        best = best.min(total);
    }
    best
}

/// As [`bipartite_metric`], exactly.
pub fn bipartite_metric_exact(g: &BipartiteGraph, x: &ColouringState, y: &ColouringState) -> Rational {
    let mut best: Option<Rational> = None;
    for (a, b) in [(x, y), (y, x)] {
        let mut total = Rational::zero();
        bipartite_path(g, a, b, |terms| {
            for &t in terms {
                total += Rational::new(1.into(), t.into());
            }
        });
        best = Some(match best {
            Some(v) if v <= total => v,
            _ => total,
        });
    }
    best.unwrap_or_else(Rational::zero)
}

/// Most states a shortest-path search may discover.
pub const MAX_PATH_STATES: usize = 1 << 16;

fn shortest_path<S, F>(x: &S, y: &S, mut moves: F) -> Result<Rational, CouplingError>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, &mut Vec<(S, Rational)>) -> Result<(), CouplingError>,
{
    let mut states = vec![x.clone()];
    let mut index = HashMap::from([(x.clone(), 0usize)]);
    let mut best: Vec<Option<Rational>> = vec![Some(Rational::zero())];
    let mut settled = vec![false];
    let mut heap = BinaryHeap::from([Reverse((Rational::zero(), 0usize))]);
    let mut out = Vec::new();
    while let Some(Reverse((d, i))) = heap.pop() {
        if settled[i] {
            continue;
        }
        settled[i] = true;
        if states[i] == *y {
            return Ok(d);
        }
        out.clear();
        moves(&states[i], &mut out)?;
        for (t, w) in out.drain(..) {
            let j = match index.get(&t) {
                Some(&j) => j,
                None => {
                    if states.len() >= MAX_PATH_STATES {
                        return Err(CouplingError::TooManyStates(MAX_PATH_STATES));
                    }
                    index.insert(t.clone(), states.len());
                    states.push(t);
                    best.push(None);
                    settled.push(false);
                    states.len() - 1
                }
            };
            let nd = &d + w;
            if !settled[j] && best[j].as_ref().is_none_or(|b| nd < *b) {
                best[j] = Some(nd.clone());
                heap.push(Reverse((nd, j)));
            }
        }
    }
    Err(CouplingError::PathStuck)
}

/// Shortest-path distance between two independent sets, where each step
/// inserts or deletes one vertex.
pub fn indset_path_metric(
    h: &Hypergraph,
    x: &OccupancyState,
    y: &OccupancyState,
    weights: &IndSetWeights,
) -> Result<Rational, CouplingError> {
    for s in [x, y] {
        if !s.is_independent(h) {
            return Err(CouplingError::InvalidState("set is not independent".into()));
        }
    }
    shortest_path(x, y, |s, out| {
        for v in 0..h.vertex_count() {
            let mut t = s.clone();
            if s.contains(v) {
                t.set(v, false);
                let w = indset_adjacent(h, &t, v, weights)?;
                out.push((t, w));
            } else if s.can_insert(h, v) {
                t.set(v, true);
                out.push((t, indset_adjacent(h, s, v, weights)?));
            }
        }
        Ok(())
    })
}

/// Shortest-path distance between two proper colourings through proper
/// colourings, each step recolouring one vertex.
pub fn tricol_path_metric(
    h: &Hypergraph,
    x: &ColouringState,
    y: &ColouringState,
    weights: &TriColWeights,
) -> Result<Rational, CouplingError> {
    for s in [x, y] {
        if !s.is_proper_hypergraph(h) {
            return Err(CouplingError::InvalidState("colouring is not proper".into()));
        }
    }
    shortest_path(x, y, |s, out| {
        for v in 0..h.vertex_count() {
            for c in 0..s.palette() {
                if c != s.colour(v) && s.hypergraph_allows(h, v, c) {
                    let w = tricol_adjacent(h, s, v, c, weights)?;
                    let mut t = s.clone();
                    t.set(v, c);
                    out.push((t, w));
                }
            }
        }
        Ok(())
    })
}

/// Shortest-path distance between two colourings of a bipartite graph over
/// all colourings, proper or not.
pub fn bipartite_path_metric(
    g: &BipartiteGraph,
    x: &ColouringState,
    y: &ColouringState,
) -> Result<Rational, CouplingError> {
    shortest_path(x, y, |s, out| {
        for v in 0..g.vertex_count() {
            for c in 0..s.palette() {
                if c != s.colour(v) {
                    let w = bipartite_adjacent_terms(g, s, v, c)
                        .into_iter()
                        .fold(Rational::zero(), |a, t| a + Rational::new(1.into(), t.into()));
                    let mut t = s.clone();
                    t.set(v, c);
                    out.push((t, w));
                }
            }
        }
        Ok(())
    })
}
