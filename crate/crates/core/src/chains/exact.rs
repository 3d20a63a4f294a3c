use std::collections::HashMap;

use thiserror::Error;

use super::glauber::{apply_indset, apply_tricol};
use super::ChainKind;
use crate::instances::{ColouringState, Hypergraph, OccupancyState};

/// Largest state space the builder accepts.
pub const MAX_STATES: usize = 4096;
/// Largest raw configuration space scanned while enumerating states.
const MAX_RAW: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("state space has more than {MAX_STATES} states")]
    TooManyStates,
    #[error("configuration space of {0} points is too large to enumerate")]
    TooManyConfigurations(u128),
    #[error("{0} has no tractable exact kernel")]
    Unsupported(&'static str),
    #[error("colouring chain needs a palette larger than Δ + 1")]
    BadPalette,
}

/// Enumerated states in canonical order (ascending bitmask or base-q index).
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpace {
    Occupancy(Vec<OccupancyState>),
    Colouring(Vec<ColouringState>),
}

impl StateSpace {
    pub fn len(&self) -> usize {
        match self {
            StateSpace::Occupancy(v) => v.len(),
            StateSpace::Colouring(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Row-stochastic kernel stored as integer counts over a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    pub chain: ChainKind,
    pub states: StateSpace,
    /// Number of equally likely proposals per step (`2n` or `nq`).
    pub denominator: u64,
    /// Sparse rows: `(column, count)` sorted by column.
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i].binary_search_by_key(&j, |&(c, _)| c).map_or(0, |k| self.rows[i][k].1)
    }

    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.entry(i, j) as f64 / self.denominator as f64
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.rows.iter().all(|r| r.iter().map(|&(_, c)| c).sum::<u64>() == self.denominator)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| self.rows[i].iter().all(|&(j, c)| self.entry(j, i) == c))
    }

    /// Total variation distance between the uniform distribution and its
    /// image after one step.
    pub fn uniform_drift(&self) -> f64 {
        let n = self.size();
        let mut col = vec![0u64; n];
        for r in &self.rows {
            for &(j, c) in r {
                col[j] += c;
            }
        }
        let total = (self.denominator * n as u64) as f64;
        0.5 * col.iter().map(|&c| (c as f64 / total - 1.0 / n as f64).abs()).sum::<f64>()
    }

    pub fn dense(&self) -> Vec<Vec<f64>> {
        let n = self.size();
        let mut m = vec![vec![0.0; n]; n];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, c) in r {
                m[i][j] = c as f64 / self.denominator as f64;
            }
        }
        m
    }
}

fn compress(targets: impl Iterator<Item = usize>) -> Vec<(usize, u64)> {
    let mut counts: Vec<(usize, u64)> = Vec::new();
    let mut all: Vec<usize> = targets.collect();
    all.sort_unstable();
    for j in all {
        match counts.last_mut() {
            Some((k, c)) if *k == j => *c += 1,
            _ => counts.push((j, 1)),
        }
    }
    counts
}

/// Exact kernel of a Glauber chain on `h`. `palette` is required for the
/// colouring chain and ignored otherwise.
pub fn exact_transition_matrix(kind: ChainKind, h: &Hypergraph, palette: u32) -> Result<TransitionMatrix, ExactError> {
    let n = h.vertex_count();
    match kind {
        ChainKind::Indset => {
            if n >= 64 || 1u64 << n > MAX_RAW {
                return Err(ExactError::TooManyConfigurations(1u128 << n.min(127)));
            }
            let mut states = Vec::new();
            for mask in 0..1u64 << n {
                let s = OccupancyState::from_mask(n, mask);
                if s.is_independent(h) {
                    states.push(s);
                    if states.len() > MAX_STATES {
                        return Err(ExactError::TooManyStates);
                    }
                }
            }
            let index: HashMap<&OccupancyState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let rows = states
                .iter()
                .map(|s| {
                    compress((0..n).flat_map(|v| [false, true].map(|ins| (v, ins))).map(|(v, ins)| {
                        let mut t = s.clone();
                        apply_indset(h, &mut t, v, ins);
                        index[&t]
                    }))
                })
                .collect();
            Ok(TransitionMatrix { chain: kind, states: StateSpace::Occupancy(states), denominator: 2 * n as u64, rows })
        }
        ChainKind::Tricol => {
            if (palette as usize) <= h.max_degree() + 1 {
                return Err(ExactError::BadPalette);
            }
            let raw = u128::from(palette).checked_pow(n as u32).unwrap_or(u128::MAX);
            if raw > u128::from(MAX_RAW) {
                return Err(ExactError::TooManyConfigurations(raw));
            }
            let mut states = Vec::new();
            for idx in 0..raw as u64 {
                let s = ColouringState::from_index(n, palette, idx);
                if s.is_proper_hypergraph(h) {
                    states.push(s);
                    if states.len() > MAX_STATES {
                        return Err(ExactError::TooManyStates);
                    }
                }
            }
            let index: HashMap<&ColouringState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let rows = states
                .iter()
                .map(|s| {
                    compress((0..n).flat_map(|v| (0..palette).map(move |c| (v, c))).map(|(v, c)| {
                        let mut t = s.clone();
                        apply_tricol(h, &mut t, v, c);
                        index[&t]
                    }))
                })
                .collect();
            Ok(TransitionMatrix {
                chain: kind,
                states: StateSpace::Colouring(states),
                denominator: n as u64 * u64::from(palette),
                rows,
            })
        }
        ChainKind::Multicolour => Err(ExactError::Unsupported("multicolour")),
        ChainKind::Scan => Err(ExactError::Unsupported("scan")),
    }
}
