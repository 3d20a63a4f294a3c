//! Seeded random instances.
//!
//! Each attempt builds a candidate edge set in two passes from one ChaCha
//! stream: a covering pass that gives every isolated vertex an edge, then a
//! random number of filling draws. Draws that would exceed the degree cap or
//! repeat an edge are rejected; an attempt that cannot cover every vertex is
//! discarded and the next attempt continues the same stream. Output is a pure
//! function of the arguments.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{BipartiteGraph, Hypergraph, InstanceError};
use crate::rng::RandomSource;

const MAX_ATTEMPTS: usize = 1000;
const HYPERGRAPH_STREAM: u64 = 0x6879_7065;
const BIPARTITE_STREAM: u64 = 0x6269_7061;

fn binomial_at_least(n: usize, m: usize, k: usize) -> bool {
    // C(n, m) >= k without overflow
    let mut c: u128 = 1;
    for i in 0..m {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c >= k as u128 {
            return true;
        }
    }
    c >= k as u128
}

/// An `m`-uniform hypergraph on `n` vertices with every degree in `1..=Δ`.
pub fn gen_hypergraph(n: usize, m: usize, max_degree: usize, seed: u64) -> Result<Hypergraph, InstanceError> {
    if m < 2 || n < m || max_degree == 0 {
        return Err(InstanceError::Infeasible(format!(
            "need n >= m >= 2 and degree >= 1, got n={n} m={m} degree={max_degree}"
        )));
    }
    let fewest = n.div_ceil(m);
    let most = n * max_degree / m;
    if fewest > most || !binomial_at_least(n, m, fewest) {
        return Err(InstanceError::Infeasible(format!(
            "no {m}-uniform edge set covers {n} vertices with degree at most {max_degree}"
        )));
    }
    let mut rng = RandomSource::new(seed).child(HYPERGRAPH_STREAM).sequential();
    for _ in 0..MAX_ATTEMPTS {
        if let Some(edges) = hypergraph_attempt(&mut rng, n, m, max_degree) {
            return Hypergraph::new(n, edges);
        }
    }
    Err(InstanceError::Infeasible(format!("no valid instance found in {MAX_ATTEMPTS} attempts")))
}

fn hypergraph_attempt(rng: &mut ChaCha8Rng, n: usize, m: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    let mut degree = vec![0usize; n];
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut add = |edge: Vec<usize>, degree: &mut Vec<usize>| -> bool {
        if !seen.insert(edge.clone()) {
            return false;
        }
        for &v in &edge {
            degree[v] += 1;
        }
        edges.push(edge);
        true
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        if degree[v] > 0 {
            continue;
        }
        // prefer other uncovered vertices so tight instances still close
        let isolated: Vec<usize> = (0..n).filter(|&w| w != v && degree[w] == 0).collect();
        let open: Vec<usize> = (0..n).filter(|&w| w != v && degree[w] < cap).collect();
        let pool = if isolated.len() >= m - 1 && (cap == 1 || rng.gen_bool(0.5)) { isolated } else { open };
        if pool.len() < m - 1 {
            return None;
        }
        let mut edge: Vec<usize> = pool.choose_multiple(rng, m - 1).copied().collect();
        edge.push(v);
        edge.sort_unstable();
        if !add(edge, &mut degree) {
            return None;
        }
    }

    let fills = rng.gen_range(0..=n * cap / m);
    for _ in 0..fills {
        let open: Vec<usize> = (0..n).filter(|&w| degree[w] < cap).collect();
        if open.len() < m {
            break;
        }
        let mut edge: Vec<usize> = open.choose_multiple(rng, m).copied().collect();
        edge.sort_unstable();
        add(edge, &mut degree);
    }
    Some(edges)
}

/// A bipartite graph on `n1 + n2` vertices with every degree in `1..=Δ`.
pub fn gen_bipartite(n1: usize, n2: usize, max_degree: usize, seed: u64) -> Result<BipartiteGraph, InstanceError> {
    if n1 == 0 || n2 == 0 || max_degree == 0 {
        return Err(InstanceError::Infeasible(format!(
            "need positive part sizes and degree, got {n1}, {n2}, {max_degree}"
        )));
    }
    if n1 * max_degree < n2 || n2 * max_degree < n1 {
        return Err(InstanceError::Infeasible(format!(
            "parts of sizes {n1} and {n2} cannot be covered with degree at most {max_degree}"
        )));
    }
    let mut rng = RandomSource::new(seed).child(BIPARTITE_STREAM).sequential();
    for _ in 0..MAX_ATTEMPTS {
        if let Some(edges) = bipartite_attempt(&mut rng, n1, n2, max_degree) {
            return BipartiteGraph::new(n1, n2, edges);
        }
    }
    Err(InstanceError::Infeasible(format!("no valid instance found in {MAX_ATTEMPTS} attempts")))
}

fn bipartite_attempt(rng: &mut ChaCha8Rng, n1: usize, n2: usize, cap: usize) -> Option<Vec<(usize, usize)>> {
    let n = n1 + n2;
    let mut degree = vec![0usize; n];
    let mut seen = HashSet::new();
    let mut edges = Vec::new();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        if degree[v] > 0 {
            continue;
        }
        let other = if v < n1 { n1..n } else { 0..n1 };
        let open: Vec<usize> = other.filter(|&w| degree[w] < cap).collect();
        let isolated: Vec<usize> = open.iter().copied().filter(|&w| degree[w] == 0).collect();
        let pool = if !isolated.is_empty() && rng.gen_bool(0.5) { isolated } else { open };
        let &w = pool.choose(rng)?;
        let e = if v < n1 { (v, w - n1) } else { (w, v - n1) };
        // v is isolated so the edge is new
        seen.insert(e);
        degree[v] += 1;
        degree[w] += 1;
        edges.push(e);
    }

    let fills = rng.gen_range(0..=n.min(n1 * n2) * cap / 2);
    for _ in 0..fills {
        let left: Vec<usize> = (0..n1).filter(|&u| degree[u] < cap).collect();
        let right: Vec<usize> = (n1..n).filter(|&w| degree[w] < cap).collect();
        let (Some(&u), Some(&w)) = (left.choose(rng), right.choose(rng)) else {
            break;
        };
        if seen.insert((u, w - n1)) {
            degree[u] += 1;
            degree[w] += 1;
            edges.push((u, w - n1));
        }
    }
    Some(edges)
}
