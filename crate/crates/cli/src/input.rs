use std::path::Path;

use rand::Rng;

use pathcoupling::chains::{glauber_indset_step, glauber_tricol_step, multicolour_step};
use pathcoupling::instances::{
    parse_bipartite, parse_dimacs, parse_hypergraph, BipartiteGraph, ColouringState, Hypergraph, MonotoneCnf,
    OccupancyState,
};
use pathcoupling::RandomSource;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    parse_hypergraph(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

pub fn bipartite(path: &Path) -> Result<BipartiteGraph, Failure> {
    parse_bipartite(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

pub enum CountInput {
    Hypergraph(Hypergraph),
    Cnf(MonotoneCnf),
}

/// DIMACS if the extension is `.cnf` or the first content line is a
/// `p cnf` header, otherwise the hypergraph format.
pub fn count_input(path: &Path) -> Result<CountInput, Failure> {
    let text = read(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with(['c', '%', '#']));
    let dimacs = path.extension().is_some_and(|e| e == "cnf") || first.is_some_and(|l| l.starts_with('p'));
    let ctx = |e: pathcoupling::instances::InstanceError| Failure::invalid(format!("{}: {e}", path.display()));
    if dimacs {
        Ok(CountInput::Cnf(parse_dimacs(&text).map_err(ctx)?))
    } else {
        Ok(CountInput::Hypergraph(parse_hypergraph(&text).map_err(ctx)?))
    }
}

pub fn palette(q: Option<u32>) -> Result<u32, Failure> {
    q.ok_or_else(|| Failure::invalid("this chain needs a palette size (-q)"))
}

/// `(σ, σ ∪ {w})` with `deg(w) ≥ 1` after a burnt-in run.
pub fn indset_pair(h: &Hypergraph, r: &RandomSource) -> Option<(OccupancyState, OccupancyState)> {
    let mut s = OccupancyState::empty(h.vertex_count());
    for t in 0..20 * h.vertex_count() as u64 {
        s = glauber_indset_step(h, &s, r, t).0;
    }
    let cands: Vec<usize> =
        (0..h.vertex_count()).filter(|&v| !s.contains(v) && h.degree(v) > 0 && s.can_insert(h, v)).collect();
    if cands.is_empty() {
        return None;
    }
    let w = cands[r.child(1).sequential().gen_range(0..cands.len())];
    let mut y = s.clone();
    y.set(w, true);
    Some((s, y))
}

pub fn tricol_pair(h: &Hypergraph, q: u32, r: &RandomSource) -> Option<(ColouringState, ColouringState)> {
    let mut x = ColouringState::greedy_hypergraph(h, q)?;
    for t in 0..20 * h.vertex_count() as u64 * u64::from(q) {
        x = glauber_tricol_step(h, &x, r, t).0;
    }
    let mut g = r.child(1).sequential();
    for _ in 0..1000 {
        let w = g.gen_range(0..h.vertex_count());
        let c = g.gen_range(0..q);
        if h.degree(w) > 0 && c != x.colour(w) && x.hypergraph_allows(h, w, c) {
            let mut y = x.clone();
            y.set(w, c);
            return Some((x, y));
        }
    }
    None
}

pub fn bipartite_pair(g: &BipartiteGraph, q: u32, r: &RandomSource) -> Option<(ColouringState, ColouringState)> {
    let mut x = ColouringState::greedy_graph(g, q)?;
    for t in 0..50 {
        x = multicolour_step(g, &x, r, t).0;
    }
    let mut rng = r.child(1).sequential();
    for _ in 0..1000 {
        let v = rng.gen_range(0..g.vertex_count());
        let avail: Vec<u32> = x.available(g, v).into_iter().filter(|&c| c != x.colour(v)).collect();
        if g.degree(v) > 0 && !avail.is_empty() {
            let mut y = x.clone();
            y.set(v, avail[rng.gen_range(0..avail.len())]);
            return Some((x, y));
        }
    }
    None
}
