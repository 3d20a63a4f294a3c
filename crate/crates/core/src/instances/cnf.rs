use std::collections::HashSet;
use std::fmt::Write as _;

use super::{Hypergraph, InstanceError};

/// A CNF formula in which every literal is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCnf {
    variable_count: usize,
    clauses: Vec<Vec<usize>>,
}

impl MonotoneCnf {
    /// Clauses hold 0-based variable ids; each is sorted and deduplicated.
    pub fn new(variable_count: usize, clauses: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(clauses.len());
        for (i, mut c) in clauses.into_iter().enumerate() {
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err(InstanceError::EmptyClause { line: i + 1 });
            }
            if let Some(&v) = c.iter().find(|&&v| v >= variable_count) {
                return Err(InstanceError::VertexOutOfRange { line: i + 1, vertex: v as i64 + 1, max: variable_count });
            }
            if !seen.insert(c.clone()) {
                return Err(InstanceError::DuplicateEdge { line: i + 1 });
            }
            out.push(c);
        }
        Ok(Self { variable_count, clauses: out })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    /// Whether the assignment (true = bit set) satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&x| assignment[x]))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for x in c {
                let _ = write!(s, "{} ", x + 1);
            }
            s.push_str("0\n");
        }
        s
    }
}

/// One clause per edge with the edge's vertices as positive literals. An
/// assignment satisfies the formula exactly when its false variables form an
/// independent set.
pub fn to_monotone_cnf(h: &Hypergraph) -> MonotoneCnf {
    MonotoneCnf { variable_count: h.vertex_count(), clauses: h.edges().to_vec() }
}

pub fn from_monotone_cnf(f: &MonotoneCnf) -> Result<Hypergraph, InstanceError> {
    if let Some((index, c)) = f.clauses.iter().enumerate().find(|(_, c)| c.len() < 2) {
        return Err(InstanceError::ClauseTooSmall { index: index + 1, size: c.len() });
    }
    Hypergraph::new(f.variable_count, f.clauses.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_becomes_clause() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let f = to_monotone_cnf(&h);
        assert_eq!(f.clauses(), &[vec![0, 1, 2]]);
        assert_eq!(f.to_dimacs(), "p cnf 3 1\n1 2 3 0\n");

        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let f = to_monotone_cnf(&h);
        assert_eq!((f.variable_count(), f.clauses().len()), (4, 2));
        assert_eq!(from_monotone_cnf(&f).unwrap(), h);
    }

    #[test]
    fn unit_clauses_have_no_edge() {
        let f = MonotoneCnf::new(2, vec![vec![0]]).unwrap();
        assert_eq!(from_monotone_cnf(&f), Err(InstanceError::ClauseTooSmall { index: 1, size: 1 }));
    }
}
