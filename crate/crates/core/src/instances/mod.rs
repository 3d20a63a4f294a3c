//! Problem instances and chain states.
//!
//! Vertex and variable ids are 0-based in memory and 1-based in every text
//! format.

mod cnf;
mod generate;
mod parse;
mod state;

pub use cnf::{from_monotone_cnf, to_monotone_cnf, MonotoneCnf};
pub use generate::{gen_bipartite, gen_hypergraph};
pub use parse::{parse_bipartite, parse_dimacs, parse_hypergraph};
pub use state::{ColouringState, OccupancyState};

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: cannot parse `{token}` as an id")]
    BadToken { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { line: usize, vertex: i64, max: usize },
    #[error("line {line}: left id {id} out of range 1..={max}")]
    LeftOutOfRange { line: usize, id: i64, max: usize },
    #[error("line {line}: right id {id} out of range 1..={max}")]
    RightOutOfRange { line: usize, id: i64, max: usize },
    #[error("line {line}: duplicate vertex {vertex} within edge")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: edge has {size} vertices, need at least 2")]
    EdgeTooSmall { line: usize, size: usize },
    #[error("header declares {expected} edges/clauses but {found} were given")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: negative literal {literal}; only monotone clauses are accepted")]
    NonMonotone { line: usize, literal: i64 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("clause {index} has {size} literals, need at least 2 to form an edge")]
    ClauseTooSmall { index: usize, size: usize },
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
}

/// A hypergraph with cached degree and edge-size statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    max_degree: usize,
    min_degree: usize,
    min_edge_size: Option<usize>,
    uniform_edge_size: Option<usize>,
}

impl Hypergraph {
    /// Builds and validates a hypergraph from 0-based edges. Each edge is
    /// sorted; repeated vertices, edges of size < 2 and duplicate edges are
    /// rejected. Errors report the 1-based edge index as the line.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        Self::with_lines(vertex_count, edges.into_iter().enumerate().map(|(i, e)| (i + 1, e)))
    }

    pub(crate) fn with_lines(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, Vec<usize>)>,
    ) -> Result<Self, InstanceError> {
        if vertex_count == 0 {
            return Err(InstanceError::NoVertices);
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (line, mut edge) in edges {
            edge.sort_unstable();
            for w in edge.windows(2) {
                if w[0] == w[1] {
                    return Err(InstanceError::DuplicateVertex { line, vertex: w[0] + 1 });
                }
            }
            if let Some(&v) = edge.iter().find(|&&v| v >= vertex_count) {
                return Err(InstanceError::VertexOutOfRange { line, vertex: v as i64 + 1, max: vertex_count });
            }
            if edge.len() < 2 {
                return Err(InstanceError::EdgeTooSmall { line, size: edge.len() });
            }
            if !seen.insert(edge.clone()) {
                return Err(InstanceError::DuplicateEdge { line });
            }
            out.push(edge);
        }
        Ok(Self::from_validated(vertex_count, out))
    }

    fn from_validated(vertex_count: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        let max_degree = incidence.iter().map(Vec::len).max().unwrap_or(0);
        let min_degree = incidence.iter().map(Vec::len).min().unwrap_or(0);
        let min_edge_size = edges.iter().map(Vec::len).min();
        let uniform_edge_size = match min_edge_size {
            Some(m) if edges.iter().all(|e| e.len() == m) => Some(m),
            _ => None,
        };
        Self { vertex_count, edges, incidence, max_degree, min_degree, min_edge_size, uniform_edge_size }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    /// `None` for an edgeless hypergraph.
    pub fn min_edge_size(&self) -> Option<usize> {
        self.min_edge_size
    }

    pub fn uniform_edge_size(&self) -> Option<usize> {
        self.uniform_edge_size
    }

    /// The sub-hypergraph keeping only the first `count` edges.
    pub fn prefix(&self, count: usize) -> Hypergraph {
        Self::from_validated(self.vertex_count, self.edges[..count].to_vec())
    }

    /// Serialises in the `n k` / one-edge-per-line format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// One side of a bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// Bipartite graph on `V_1 = 0..n1` and `V_2 = n1..n1+n2` (global ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    part_sizes: (usize, usize),
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    max_degree: usize,
    min_degree: usize,
}

impl BipartiteGraph {
    /// `edges` are `(left, right)` pairs with part-local 0-based ids.
    pub fn new(n1: usize, n2: usize, edges: Vec<(usize, usize)>) -> Result<Self, InstanceError> {
        Self::with_lines(n1, n2, edges.into_iter().enumerate().map(|(i, e)| (i + 1, e)))
    }

    pub(crate) fn with_lines(
        n1: usize,
        n2: usize,
        edges: impl IntoIterator<Item = (usize, (usize, usize))>,
    ) -> Result<Self, InstanceError> {
        if n1 == 0 || n2 == 0 {
            return Err(InstanceError::NoVertices);
        }
        let mut seen = std::collections::HashSet::new();
        let mut adjacency = vec![Vec::new(); n1 + n2];
        let mut out = Vec::new();
        for (line, (u, v)) in edges {
            if u >= n1 {
                return Err(InstanceError::LeftOutOfRange { line, id: u as i64 + 1, max: n1 });
            }
            if v >= n2 {
                return Err(InstanceError::RightOutOfRange { line, id: v as i64 + 1, max: n2 });
            }
            if !seen.insert((u, v)) {
                return Err(InstanceError::DuplicateEdge { line });
            }
            adjacency[u].push(n1 + v);
            adjacency[n1 + v].push(u);
            out.push((u, v));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let min_degree = adjacency.iter().map(Vec::len).min().unwrap_or(0);
        Ok(Self { part_sizes: (n1, n2), edges: out, adjacency, max_degree, min_degree })
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        self.part_sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.part_sizes.0 + self.part_sizes.1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of global vertex `v`, ascending.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn side(&self, v: usize) -> Side {
        if v < self.part_sizes.0 {
            Side::First
        } else {
            Side::Second
        }
    }

    /// Global ids of one side, ascending.
    pub fn vertices(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::First => 0..self.part_sizes.0,
            Side::Second => self.part_sizes.0..self.vertex_count(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.part_sizes.0, self.part_sizes.1, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
        s
    }
}
