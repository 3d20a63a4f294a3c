use super::CountingError;
use crate::instances::{Hypergraph, MonotoneCnf};

/// Largest vertex or variable count accepted by the set and SAT enumerators.
pub const MAX_BRUTE_VERTICES: usize = 25;
/// Largest `q^n` accepted by the colouring enumerator.
pub const MAX_BRUTE_COLOURINGS: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CountResult {
    pub count: u64,
    /// Search-tree nodes visited.
    pub visited: u64,
}

fn check_size(n: usize) -> Result<(), CountingError> {
    if n > MAX_BRUTE_VERTICES {
        return Err(CountingError::TooLarge(format!("{n} vertices (at most {MAX_BRUTE_VERTICES})")));
    }
    Ok(())
}

/// Incidence lists and sizes, shared by the depth-first enumerators.
struct Incidence {
    sizes: Vec<usize>,
    by_vertex: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(n: usize, sets: &[Vec<usize>]) -> Self {
        let mut by_vertex = vec![Vec::new(); n];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                by_vertex[v].push(i);
            }
        }
        Self { sizes: sets.iter().map(Vec::len).collect(), by_vertex }
    }
}

/// Counts subsets in which no set of `inc` is fully marked, marking vertices
/// in ascending order and pruning as soon as a set fills.
fn count_avoiding(inc: &Incidence, n: usize) -> CountResult {
    fn go(v: usize, n: usize, inc: &Incidence, marked: &mut [usize], visited: &mut u64) -> u64 {
        *visited += 1;
        if v == n {
            return 1;
        }
        let mut total = go(v + 1, n, inc, marked, visited);
        if inc.by_vertex[v].iter().all(|&e| marked[e] + 1 < inc.sizes[e]) {
            inc.by_vertex[v].iter().for_each(|&e| marked[e] += 1);
            total += go(v + 1, n, inc, marked, visited);
            inc.by_vertex[v].iter().for_each(|&e| marked[e] -= 1);
        }
        total
    }
    let mut marked = vec![0; inc.sizes.len()];
    let mut visited = 0;
    let count = go(0, n, inc, &mut marked, &mut visited);
    CountResult { count, visited }
}

/// Number of independent sets (including the empty set).
pub fn brute_count_indsets(h: &Hypergraph) -> Result<CountResult, CountingError> {
    check_size(h.vertex_count())?;
    Ok(count_avoiding(&Incidence::new(h.vertex_count(), h.edges()), h.vertex_count()))
}

/// Number of satisfying assignments: variables are fixed in order, false
/// first, and a branch dies once some clause has all its variables false.
pub fn brute_count_sat(f: &MonotoneCnf) -> Result<CountResult, CountingError> {
    let n = f.variable_count();
    check_size(n)?;
    let inc = Incidence::new(n, f.clauses());
    fn go(v: usize, n: usize, inc: &Incidence, falsified: &mut [usize], visited: &mut u64) -> u64 {
        *visited += 1;
        if v == n {
            return 1;
        }
        let mut total = 0;
        if inc.by_vertex[v].iter().all(|&c| falsified[c] + 1 < inc.sizes[c]) {
            inc.by_vertex[v].iter().for_each(|&c| falsified[c] += 1);
            total += go(v + 1, n, inc, falsified, visited);
            inc.by_vertex[v].iter().for_each(|&c| falsified[c] -= 1);
        }
        total + go(v + 1, n, inc, falsified, visited)
    }
    let mut falsified = vec![0; f.clauses().len()];
    let mut visited = 0;
    let count = go(0, n, &inc, &mut falsified, &mut visited);
    Ok(CountResult { count, visited })
}

/// Number of colourings with no monochromatic edge. Each edge is checked
/// when its largest vertex is coloured.
pub fn brute_count_colourings(h: &Hypergraph, q: u32) -> Result<CountResult, CountingError> {
    let n = h.vertex_count();
    let space = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > MAX_BRUTE_COLOURINGS {
        return Err(CountingError::TooLarge(format!("{q}^{n} colourings (at most {MAX_BRUTE_COLOURINGS})")));
    }
    let mut closing = vec![Vec::new(); n];
    for e in h.edges() {
        closing[*e.last().expect("nonempty edge")].push(e.as_slice());
    }
    fn go(v: usize, q: u32, closing: &[Vec<&[usize]>], col: &mut [u32], visited: &mut u64) -> u64 {
        *visited += 1;
        if v == col.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..q {
            col[v] = c;
            let mono = closing[v].iter().any(|e| e[..e.len() - 1].iter().all(|&u| col[u] == c));
            if !mono {
                total += go(v + 1, q, closing, col, visited);
            }
        }
        total
    }
    let mut col = vec![0; n];
    let mut visited = 0;
    let count = go(0, q, &closing, &mut col, &mut visited);
    Ok(CountResult { count, visited })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::to_monotone_cnf;

    #[test]
    fn small_counts() {
        let one = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(brute_count_indsets(&one).unwrap().count, 7);
        let two = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(brute_count_indsets(&two).unwrap().count, 49);
        assert_eq!(brute_count_colourings(&one, 3).unwrap().count, 24);
        assert_eq!(brute_count_sat(&to_monotone_cnf(&two)).unwrap().count, 49);
    }

    #[test]
    fn edgeless_is_power_of_two() {
        let h = Hypergraph::new(10, vec![]).unwrap();
        assert_eq!(brute_count_indsets(&h).unwrap().count, 1024);
        assert_eq!(brute_count_colourings(&h, 2).unwrap().count, 1024);
    }

    #[test]
    fn rejects_large() {
        let h = Hypergraph::new(26, vec![]).unwrap();
        assert!(brute_count_indsets(&h).is_err());
        let h = Hypergraph::new(12, vec![]).unwrap();
        assert!(brute_count_colourings(&h, 10).is_err());
    }
}
