use super::{BipartiteGraph, Hypergraph, InstanceError};

/// Membership indicator over the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OccupancyState {
    occupied: Vec<bool>,
}

impl OccupancyState {
    pub fn empty(n: usize) -> Self {
        Self { occupied: vec![false; n] }
    }

    pub fn from_indicator(occupied: Vec<bool>) -> Self {
        Self { occupied }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.occupied[v] = true;
        }
        s
    }

    /// Decodes the low `n` bits of `mask` (bit v set means v occupied).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self { occupied: (0..n).map(|v| mask >> v & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.occupied[v]
    }

    pub fn set(&mut self, v: usize, occupied: bool) {
        self.occupied[v] = occupied;
    }

    pub fn indicator(&self) -> &[bool] {
        &self.occupied
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied.iter().enumerate().filter_map(|(v, &o)| o.then_some(v))
    }

    pub fn size(&self) -> usize {
        self.occupied.iter().filter(|&&o| o).count()
    }

    /// Vertices where the two states disagree.
    pub fn differences<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = usize> + 'a {
        self.occupied.iter().zip(&other.occupied).enumerate().filter_map(|(v, (a, b))| (a != b).then_some(v))
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.differences(other).count()
    }

    pub fn is_independent(&self, h: &Hypergraph) -> bool {
        h.edges().iter().all(|e| e.iter().any(|&v| !self.occupied[v]))
    }

    /// Whether `v` could be occupied without filling an edge.
    pub fn can_insert(&self, h: &Hypergraph, v: usize) -> bool {
        h.incident(v).iter().all(|&e| h.edge(e).iter().any(|&w| w != v && !self.occupied[w]))
    }
}

/// Colour per vertex, colours `0..q` in memory (`1..=q` in text).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouringState {
    colours: Vec<u32>,
    palette: u32,
}

impl ColouringState {
    pub fn new(colours: Vec<u32>, palette: u32) -> Result<Self, InstanceError> {
        if palette == 0 {
            return Err(InstanceError::Infeasible("palette must be nonempty".into()));
        }
        if let Some(c) = colours.iter().find(|&&c| c >= palette) {
            return Err(InstanceError::Infeasible(format!("colour {} outside palette of size {palette}", c + 1)));
        }
        Ok(Self { colours, palette })
    }

    /// Decodes `index` as a base-`q` number, vertex 0 least significant.
    pub fn from_index(n: usize, palette: u32, mut index: u64) -> Self {
        let q = u64::from(palette);
        let colours = (0..n)
            .map(|_| {
                let c = (index % q) as u32;
                index /= q;
                c
            })
            .collect();
        Self { colours, palette }
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn set(&mut self, v: usize, c: u32) {
        debug_assert!(c < self.palette);
        self.colours[v] = c;
    }

    pub fn differences<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = usize> + 'a {
        self.colours.iter().zip(&other.colours).enumerate().filter_map(|(v, (a, b))| (a != b).then_some(v))
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.differences(other).count()
    }

    /// No edge monochromatic.
    pub fn is_proper_hypergraph(&self, h: &Hypergraph) -> bool {
        h.edges().iter().all(|e| !self.is_monochromatic(e))
    }

    pub(crate) fn is_monochromatic(&self, edge: &[usize]) -> bool {
        let c = self.colours[edge[0]];
        edge.iter().all(|&v| self.colours[v] == c)
    }

    /// Whether giving `v` colour `c` leaves every edge through `v` non-monochromatic.
    pub fn hypergraph_allows(&self, h: &Hypergraph, v: usize, c: u32) -> bool {
        h.incident(v).iter().all(|&e| h.edge(e).iter().any(|&w| w != v && self.colours[w] != c))
    }

    pub fn is_proper_graph(&self, g: &BipartiteGraph) -> bool {
        g.edges().iter().all(|&(u, v)| self.colours[u] != self.colours[g.part_sizes().0 + v])
    }

    /// Colours not used by any neighbour of `v`, ascending.
    pub fn available(&self, g: &BipartiteGraph, v: usize) -> Vec<u32> {
        let mut used = vec![false; self.palette as usize];
        for &w in g.neighbours(v) {
            used[self.colours[w] as usize] = true;
        }
        (0..self.palette).filter(|&c| !used[c as usize]).collect()
    }

    /// First-fit proper colouring of a hypergraph, vertices in id order.
    pub fn greedy_hypergraph(h: &Hypergraph, palette: u32) -> Option<Self> {
        let mut s = Self { colours: vec![0; h.vertex_count()], palette };
        for v in 0..h.vertex_count() {
            let mut placed = false;
            for c in 0..palette {
                // only edges whose other vertices are already coloured matter
                let ok =
                    h.incident(v).iter().all(|&e| h.edge(e).iter().any(|&w| w != v && (w > v || s.colours[w] != c)));
                if ok {
                    s.colours[v] = c;
                    placed = true;
                    break;
                }
            }
            if !placed {
                return None;
            }
        }
        Some(s)
    }

    /// First-fit proper colouring of a graph, vertices in id order.
    pub fn greedy_graph(g: &BipartiteGraph, palette: u32) -> Option<Self> {
        let n = g.vertex_count();
        let mut s = Self { colours: vec![0; n], palette };
        for v in 0..n {
            let c = (0..palette).find(|&c| g.neighbours(v).iter().all(|&w| w > v || s.colours[w] != c))?;
            s.colours[v] = c;
        }
        Some(s)
    }
}
